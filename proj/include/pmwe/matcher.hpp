#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "pmwe/strings.hpp"

namespace pmwe {

inline constexpr std::size_t kDefaultCap = 64;

struct Occurrence {
  Pos t = 0;
  Pos t_end = 0;
  Pos dist = 0;
  std::vector<EditInfo> edit_infos;
  bool truncated = false;
  bool operator==(const Occurrence&) const = default;
};

struct OccurrenceReport {
  std::vector<Occurrence> occurrences;  // sorted by (t, t_end)

  std::vector<Pos> starts() const;
  bool operator==(const OccurrenceReport&) const = default;
};

// Every (t, t') with ed(P, T[t..t')) <= k. With `with_edit_info` each entry
// carries the optimal edit informations (up to cap) in enumeration order.
OccurrenceReport find_occurrences(const Str& p, const Str& t, Pos k, std::size_t cap = kDefaultCap,
                                  bool with_edit_info = true);

// Edit informations of all optimal alignments of P onto T[t..t').
Occurrence describe_fragment(const Str& p, const Str& t, Pos begin, Pos end, std::size_t cap);

// For every end position e: min over t of ed(P, T[t..e)).
std::vector<Pos> free_start_distances(const Str& p, const Str& t);

std::set<Pos> occurrence_buckets(const OccurrenceReport& report, Pos k);

}  // namespace pmwe
