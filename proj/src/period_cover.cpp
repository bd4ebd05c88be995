#include "pmwe/period_cover.hpp"

#include <algorithm>

namespace pmwe {

namespace {

View fragment_from(const Str& t, const BlackIndexing& ix, Pos a) {
  const Pos begin = ix.tau[static_cast<std::size_t>(a)];
  const Pos end = ix.tau[static_cast<std::size_t>(ix.bc - 1)] + 1;
  return View(t).subspan(static_cast<std::size_t>(begin), static_cast<std::size_t>(end - begin));
}

// Largest b >= a with selfed(T[tau(a)..tau(b)]) <= limit, or a-1.
Pos max_b(const Str& t, const BlackIndexing& ix, Pos a, Pos limit) {
  const auto vals = selfed_prefixes(fragment_from(t, ix, a), limit);
  const Pos base = ix.tau[static_cast<std::size_t>(a)];
  Pos best = a - 1;
  for (Pos b = a; b < ix.bc; ++b) {
    const Pos len = ix.tau[static_cast<std::size_t>(b)] - base + 1;
    if (len > static_cast<Pos>(vals.size()) || vals[static_cast<std::size_t>(len - 1)] > limit) break;
    best = b;
  }
  return best;
}

// Smallest a <= b with selfed(T[tau(a)..tau(b)]) <= limit, or b+1.
Pos min_a(const Str& t, const BlackIndexing& ix, Pos b, Pos limit) {
  Pos lo = 0, hi = b + 1;  // selfed shrinks as a grows
  while (lo < hi) {
    const Pos mid = (lo + hi) / 2;
    if (interval_selfed(t, ix, mid, b) <= limit) hi = mid;
    else lo = mid + 1;
  }
  return lo;
}

}  // namespace

Pos interval_selfed(const Str& t, const BlackIndexing& ix, Pos a, Pos b) {
  const Pos begin = ix.tau[static_cast<std::size_t>(a)];
  const Pos end = ix.tau[static_cast<std::size_t>(b)] + 1;
  return self_edit_distance_value(View(t).subspan(static_cast<std::size_t>(begin),
                                                  static_cast<std::size_t>(end - begin)));
}

std::vector<Interval> member_runs(const std::vector<std::uint8_t>& member) {
  std::vector<Interval> runs;
  const Pos n = static_cast<Pos>(member.size());
  for (Pos c = 0; c < n;) {
    if (!member[static_cast<std::size_t>(c)]) {
      ++c;
      continue;
    }
    Pos e = c;
    while (e + 1 < n && member[static_cast<std::size_t>(e + 1)]) ++e;
    runs.push_back({c, e, 0});
    c = e + 1;
  }
  return runs;
}

std::vector<Interval> select_encoding_intervals(const std::vector<Interval>& candidates) {
  std::vector<Interval> out;
  for (int cond = 1; cond <= 4; ++cond) {
    const Interval* best = nullptr;
    for (const auto& iv : candidates) {
      if (iv.condition != cond) continue;
      if (!best || iv.b - iv.a > best->b - best->a) best = &iv;
    }
    if (best) out.push_back(*best);
  }
  std::vector<Interval> five;
  for (const auto& iv : candidates)
    if (iv.condition == 5) five.push_back(iv);
  if (five.empty()) return out;
  std::sort(five.begin(), five.end(), [](const Interval& x, const Interval& y) {
    return x.a != y.a ? x.a < y.a : x.b > y.b;
  });
  Pos max_end = 0;
  for (const auto& iv : five) max_end = std::max(max_end, iv.b);
  Interval cur = five.front();
  out.push_back(cur);
  while (cur.b < max_end) {
    const Interval* ext = nullptr;
    for (const auto& iv : five)
      if (iv.a > cur.a && iv.a <= cur.b && iv.b > cur.b && (!ext || iv.b > ext->b)) ext = &iv;
    if (!ext) {
      for (const auto& iv : five)
        if (iv.a > cur.b) {
          ext = &iv;  // sorted: first is the smallest start, widest among ties
          break;
        }
    }
    if (!ext) break;
    cur = *ext;
    out.push_back(cur);
  }
  return out;
}

PeriodCover build_period_cover(const Str& t, const BlackIndexing& ix, const WeightCover& w, Pos K) {
  if (ix.bc <= 0) throw ProtocolMisuse("period cover needs bc > 0");
  PeriodCover pc;
  const Pos bc = ix.bc;
  pc.bc = bc;
  pc.member.assign(static_cast<std::size_t>(bc), 0);
  const Pos bound = 6 * w.total + 11 * K;
  const Pos cl = ix.c_last();

  auto add = [&](Pos a, Pos b, int cond) {
    if (a > b) return;
    pc.candidates.push_back({a, b, cond});
    for (Pos c = a; c <= b; ++c) pc.member[static_cast<std::size_t>(c)] = 1;
  };
  add(0, max_b(t, ix, 0, bound), 1);
  add(min_a(t, ix, bc - 1, bound), bc - 1, 2);
  add(min_a(t, ix, cl, bound), cl, 3);
  if (cl + 1 < bc) add(cl + 1, max_b(t, ix, cl + 1, bound), 4);

  // suffix[a] = sum_{c=a}^{bc-1} w(c)
  std::vector<Pos> suffix(static_cast<std::size_t>(bc + 1), 0);
  for (Pos c = bc - 1; c >= 0; --c)
    suffix[static_cast<std::size_t>(c)] = suffix[static_cast<std::size_t>(c + 1)] + w.at(c);
  for (Pos a = 0; a < bc; ++a) {
    const Pos left = w.at(a - 1);
    const Pos total = left + suffix[static_cast<std::size_t>(a)];
    if (total == 0) continue;
    const auto vals = selfed_prefixes(fragment_from(t, ix, a), 6 * total);
    const Pos base = ix.tau[static_cast<std::size_t>(a)];
    Pos running = left;
    Pos best = -1;
    for (Pos b = a; b < bc; ++b) {
      running += w.at(b);
      const Pos len = ix.tau[static_cast<std::size_t>(b)] - base + 1;
      if (len > static_cast<Pos>(vals.size())) break;
      if (vals[static_cast<std::size_t>(len - 1)] <= 6 * running) best = b;
    }
    if (best >= a) add(a, best, 5);
  }

  pc.encoding_intervals = select_encoding_intervals(pc.candidates);
  pc.runs = member_runs(pc.member);
  pc.full = std::all_of(pc.member.begin(), pc.member.end(), [](std::uint8_t v) { return v != 0; });
  return pc;
}

}  // namespace pmwe
