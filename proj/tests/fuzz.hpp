#pragma once

// Random sketches that satisfy the wire format's structural rules. Their
// contents need not describe any real instance.

#include <algorithm>
#include <random>

#include "pmwe/bitcodec.hpp"

namespace fuzz {

using namespace pmwe;

inline Pos pick(std::mt19937_64& rng, Pos lo, Pos hi) {
  return lo + static_cast<Pos>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Edits starting at `start` that consume exactly `x_len` source characters.
inline EditInfo random_info(std::mt19937_64& rng, Point start, Pos x_len, Symbol sigma, Pos max_edits) {
  EditInfo info;
  Point cur = start;
  const Pos x_end = start.x + x_len;
  const Pos edits = pick(rng, 0, max_edits);
  for (Pos e = 0; e < edits; ++e) {
    const Pos room = x_end - cur.x;
    const Pos gap = room > 0 ? pick(rng, 0, std::min<Pos>(room, 6)) : 0;
    cur = {cur.x + gap, cur.y + gap};
    int op = static_cast<int>(rng() % 3);
    if (cur.x >= x_end) op = 1;
    if (op == 2 && sigma < 2) op = 1;
    EditTuple t{cur.x, kEps, cur.y, kEps};
    if (op != 1) t.cx = static_cast<Symbol>(rng() % sigma);
    if (op != 0) t.cy = static_cast<Symbol>(rng() % sigma);
    if (op == 2)
      while (t.cy == t.cx) t.cy = static_cast<Symbol>(rng() % sigma);
    info.push_back(t);
    cur = {cur.x + (op != 1), cur.y + (op != 0)};
  }
  return info;
}

inline Pos net_growth(const EditInfo& info) {
  return edit_count(info, Op::kInsert) - edit_count(info, Op::kDelete);
}

inline Str random_chars(std::mt19937_64& rng, Pos len, Symbol sigma, bool repetitive) {
  Str s(static_cast<std::size_t>(len));
  const Pos period = 1 + static_cast<Pos>(rng() % 4);
  for (Pos i = 0; i < len; ++i)
    s[static_cast<std::size_t>(i)] = repetitive && i >= period && rng() % 8 != 0 ? s[static_cast<std::size_t>(i - period)]
                                                                                : static_cast<Symbol>(rng() % sigma);
  return s;
}

inline Sketch random_sketch(std::mt19937_64& rng) {
  Sketch s;
  const Symbol sigma = static_cast<Symbol>(pick(rng, 1, 6));
  std::vector<std::uint8_t> bytes(256);
  for (int i = 0; i < 256; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
  std::shuffle(bytes.begin(), bytes.end(), rng);
  bytes.resize(sigma);
  std::sort(bytes.begin(), bytes.end());
  s.header.alphabet.table = bytes;
  const Pos m = pick(rng, 6, 60);
  const Pos n = pick(rng, 0, 4 * m);
  const Pos k = pick(rng, 0, m / 4);
  s.header.n = n;
  s.header.m = m;
  s.header.k = k;
  const BlockGeometry g = block_geometry(n, m, k);

  if (g.step < 1 || rng() % 8 == 0) {
    BlockSketch b;
    b.mode = BlockMode::kRaw;
    b.raw_p = random_chars(rng, m, sigma, false);
    b.raw_t = random_chars(rng, n, sigma, false);
    s.blocks.push_back(b);
    return s;
  }
  for (Pos i = 0; i < g.count; ++i) {
    BlockSketch b;
    const int mode = static_cast<int>(rng() % 4);
    if (mode == 0) {
      s.blocks.push_back(b);
      continue;
    }
    b.mode = mode == 1 ? BlockMode::kBcZero : mode == 2 ? BlockMode::kGeneral : BlockMode::kPeriodic;
    const Pos b0 = g.begin(i);
    b.ell = std::min(g.n, b0 + pick(rng, 0, g.step));
    const Pos nw = std::min(g.n - b.ell, pick(rng, 0, g.window));
    b.r = b.ell + nw;
    b.x_pref = {0, 0, 0, random_info(rng, {0, 0}, m, sigma, 4)};
    EditInfo suf = random_info(rng, {0, 0}, m, sigma, 4);
    Pos y_suf = nw - (m + net_growth(suf));
    if (y_suf < 0) {
      suf.clear();
      for (Pos x = 0; x < m - nw; ++x) suf.push_back({x, static_cast<Symbol>(rng() % sigma), 0, kEps});
      y_suf = nw - (m + net_growth(suf));
    }
    for (auto& e : suf) e.y += y_suf;
    b.x_suf = {0, 0, y_suf, suf};
    const Pos na = pick(rng, 0, 2), nb = pick(rng, 0, 2);
    for (Pos j = 0; j < na; ++j) {
      const Pos y = pick(rng, 0, nw);
      b.a_list.push_back({0, 0, y, random_info(rng, {0, y}, m, sigma, 3)});
    }
    for (Pos j = 0; j < nb; ++j) {
      const Pos x = pick(rng, 0, m - 1);
      const Pos len = pick(rng, 0, m - x);
      const Pos y = pick(rng, 0, nw);
      b.b_list.push_back({x, len, y, random_info(rng, {x, y}, len, sigma, 3)});
    }
    if (b.mode != BlockMode::kBcZero) {
      Pos prev = -1;
      const Pos runs = pick(rng, 0, 3);
      for (Pos j = 0; j < runs && prev + 1 < m; ++j) {
        CoverRun run;
        run.a = pick(rng, prev + 1, std::min(m - 1, prev + 1 + m / 4));
        run.b = pick(rng, run.a, std::min(m - 1, run.a + m / 4));
        run.chars = random_chars(rng, std::min(nw, pick(rng, 1, 20)), sigma, rng() % 2);
        prev = run.b;
        b.runs.push_back(run);
      }
    }
    s.blocks.push_back(b);
  }
  return s;
}

}  // namespace fuzz
