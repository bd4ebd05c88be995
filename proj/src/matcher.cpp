#include "pmwe/matcher.hpp"

#include <algorithm>
#include <climits>
#include <stdexcept>

namespace pmwe {

std::vector<Pos> OccurrenceReport::starts() const {
  std::vector<Pos> out;
  for (const auto& o : occurrences)
    if (out.empty() || out.back() != o.t) out.push_back(o.t);
  return out;
}

Occurrence describe_fragment(const Str& p, const Str& t, Pos begin, Pos end, std::size_t cap) {
  Enumeration e = enumerate_optimal_alignments(p, {0, static_cast<Pos>(p.size())}, t, {begin, end}, cap);
  Occurrence o;
  o.t = begin;
  o.t_end = end;
  o.dist = e.cost;
  o.truncated = e.truncated;
  for (const auto& path : e.paths) o.edit_infos.push_back(edit_info(path, p, t));
  return o;
}

OccurrenceReport find_occurrences(const Str& p, const Str& t, Pos k, std::size_t cap,
                                  bool with_edit_info) {
  if (k < 0) throw std::invalid_argument("negative threshold");
  const Pos m = static_cast<Pos>(p.size());
  const Pos n = static_cast<Pos>(t.size());
  OccurrenceReport report;
  // Column-wise banded DP per start: D[i] = ed(P[0..i), T[s..s+j)), |i - j| <= k.
  const Pos band = std::min(k, std::max(m, n));
  std::vector<Pos> prev(static_cast<std::size_t>(m + 1)), cur(static_cast<std::size_t>(m + 1));
  const Pos inf = LLONG_MAX / 4;
  for (Pos s = 0; s <= n; ++s) {
    const Pos jmax = std::min(n - s, m + k);
    for (Pos i = 0; i <= m; ++i) prev[static_cast<std::size_t>(i)] = i <= band ? i : inf;
    if (m <= k) report.occurrences.push_back({s, s, m, {}, false});
    for (Pos j = 1; j <= jmax; ++j) {
      const Pos lo = std::max<Pos>(0, j - band);
      const Pos hi = std::min(m, j + band);
      if (lo > hi) break;
      const Symbol c = t[static_cast<std::size_t>(s + j - 1)];
      for (Pos i = lo; i <= hi; ++i) {
        const std::size_t ui = static_cast<std::size_t>(i);
        Pos best = prev[ui] + 1;
        if (i == 0) {
          best = j;
        } else {
          best = std::min(best, prev[ui - 1] + (p[ui - 1] != c ? 1 : 0));
          if (i - 1 >= lo) best = std::min(best, cur[ui - 1] + 1);
        }
        cur[ui] = best;
      }
      if (lo > 0) cur[static_cast<std::size_t>(lo - 1)] = inf;
      if (hi < m) cur[static_cast<std::size_t>(hi + 1)] = inf;
      std::swap(prev, cur);
      if (hi == m && prev[static_cast<std::size_t>(m)] <= k)
        report.occurrences.push_back({s, s + j, prev[static_cast<std::size_t>(m)], {}, false});
    }
  }
  if (with_edit_info) {
    for (auto& o : report.occurrences) o = describe_fragment(p, t, o.t, o.t_end, cap);
  }
  return report;
}

std::vector<Pos> free_start_distances(const Str& p, const Str& t) {
  const std::size_t m = p.size(), n = t.size();
  std::vector<Pos> prev(m + 1), cur(m + 1), out(n + 1);
  for (std::size_t i = 0; i <= m; ++i) prev[i] = static_cast<Pos>(i);
  out[0] = static_cast<Pos>(m);
  for (std::size_t j = 1; j <= n; ++j) {
    cur[0] = 0;
    for (std::size_t i = 1; i <= m; ++i) {
      Pos best = prev[i - 1] + (p[i - 1] != t[j - 1] ? 1 : 0);
      best = std::min(best, prev[i] + 1);
      best = std::min(best, cur[i - 1] + 1);
      cur[i] = best;
    }
    out[j] = cur[m];
    std::swap(prev, cur);
  }
  return out;
}

std::set<Pos> occurrence_buckets(const OccurrenceReport& report, Pos k) {
  if (k < 1) throw std::invalid_argument("bucket width must be positive");
  std::set<Pos> out;
  for (const auto& o : report.occurrences) out.insert(o.t / k);
  return out;
}

}  // namespace pmwe
