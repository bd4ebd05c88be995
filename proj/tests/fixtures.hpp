#pragma once

// Instance generators shared by tests. Windows are cut the way the encoder cuts them.

#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pmwe/matcher.hpp"
#include "pmwe/sketch.hpp"

namespace fixture {

using namespace pmwe;

struct Window {
  Str p;
  Str tw;
  Pos k = 0;
  std::vector<Occurrence> occ;  // window coordinates
};

inline std::string random_text(std::mt19937_64& rng, Pos len, int sigma) {
  std::string s;
  for (Pos i = 0; i < len; ++i) s.push_back(static_cast<char>('a' + rng() % static_cast<unsigned>(sigma)));
  return s;
}

// T built from noisy copies of P so that most blocks carry occurrences.
inline std::pair<std::string, std::string> planted(std::mt19937_64& rng, Pos m, Pos n, Pos k, int sigma,
                                                  bool periodic) {
  std::string p = random_text(rng, m, sigma);
  if (periodic) {
    const Pos q = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(std::max<Pos>(1, m / 6)));
    for (Pos i = q; i < m; ++i) p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i % q)];
  }
  std::string t;
  while (static_cast<Pos>(t.size()) < n) {
    if (rng() % 3 == 0) {
      t += random_text(rng, 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(m)), sigma);
      continue;
    }
    std::string c = p;
    const Pos edits = static_cast<Pos>(rng() % static_cast<std::uint64_t>(k + 1));
    for (Pos e = 0; e < edits && !c.empty(); ++e) {
      const std::size_t at = rng() % c.size();
      switch (rng() % 3) {
        case 0: c[at] = static_cast<char>('a' + rng() % static_cast<unsigned>(sigma)); break;
        case 1: c.erase(at, 1); break;
        default: c.insert(c.begin() + static_cast<std::ptrdiff_t>(at), static_cast<char>('a' + rng() % static_cast<unsigned>(sigma)));
      }
    }
    t += c;
  }
  t.resize(static_cast<std::size_t>(n));
  return {p, t};
}

// Trimmed windows with at least one occurrence, in the encoder's block layout.
inline std::vector<Window> windows_of(const std::string& ps, const std::string& ts, Pos k) {
  const Instance inst = normalize_instance(ps, ts, k);
  std::vector<Window> out;
  if (sends_raw(inst.geo.m, k, RawPolicy::kStructural)) return out;
  const auto occ = find_occurrences(inst.p, inst.t_norm, inst.geo.k, 1, false).occurrences;
  const BlockGeometry& g = inst.geo;
  for (Pos i = 0; i < g.count; ++i) {
    const Pos b0 = g.begin(i), wend = std::min(b0 + g.window, g.n);
    Window w;
    w.p = inst.p;
    w.k = g.k;
    for (const auto& o : occ)
      if (o.t >= b0 && o.t <= wend && o.t_end <= wend) w.occ.push_back(o);
    if (w.occ.empty()) continue;
    Pos ell = w.occ.front().t, r = 0;
    for (const auto& o : w.occ) r = std::max(r, o.t_end);
    for (auto& o : w.occ) {
      o.t -= ell;
      o.t_end -= ell;
    }
    w.tw.assign(inst.t_norm.begin() + ell, inst.t_norm.begin() + r);
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace fixture
