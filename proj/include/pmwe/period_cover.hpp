#pragma once

#include <vector>

#include "pmwe/inference_graph.hpp"
#include "pmwe/weight_cover.hpp"

namespace pmwe {

struct Interval {
  Pos a = 0;
  Pos b = 0;
  int condition = 0;  // 1..5, which rule admitted it
  bool operator==(const Interval&) const = default;
};

struct PeriodCover {
  Pos bc = 0;
  std::vector<std::uint8_t> member;       // indexed by black component
  std::vector<Interval> candidates;       // maximal qualifying interval per rule / start
  std::vector<Interval> encoding_intervals;  // greedy selection
  std::vector<Interval> runs;             // maximal runs of members, ascending
  bool full = false;

  bool contains(Pos c) const { return member[static_cast<std::size_t>(c)] != 0; }
};

// selfed of the closed fragment T[tau(a)..tau(b)].
Pos interval_selfed(const Str& t, const BlackIndexing& ix, Pos a, Pos b);

PeriodCover build_period_cover(const Str& t, const BlackIndexing& ix, const WeightCover& w, Pos K);

// Boundary intervals (rules 1-4) keep the widest one per rule; rule-5
// intervals go through the overlap-extend / jump chain.
std::vector<Interval> select_encoding_intervals(const std::vector<Interval>& candidates);

// Maximal runs of a membership vector.
std::vector<Interval> member_runs(const std::vector<std::uint8_t>& member);

}  // namespace pmwe
