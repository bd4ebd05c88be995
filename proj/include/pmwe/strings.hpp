#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pmwe/errors.hpp"

namespace pmwe {

using Symbol = std::uint32_t;
using Pos = std::int64_t;
using Str = std::vector<Symbol>;
using View = std::span<const Symbol>;

// Marks the non-advancing side of an insertion or deletion.
inline constexpr Symbol kEps = 0xFFFFFFFFu;

struct Alphabet {
  std::vector<std::uint8_t> table;  // strictly increasing raw bytes

  std::size_t size() const { return table.size(); }
  static Alphabet from_bytes(std::string_view a, std::string_view b);
  Symbol code(std::uint8_t byte) const;
  Str encode(std::string_view bytes) const;
  std::string decode(const Str& s) const;
  bool operator==(const Alphabet&) const = default;
};

// Bits needed for one symbol code: ceil(log2 sigma), 0 when sigma <= 1.
unsigned symbol_width(std::size_t sigma);

struct Span {
  Pos begin = 0;
  Pos end = 0;
  Pos size() const { return end - begin; }
  bool operator==(const Span&) const = default;
};

struct Point {
  Pos x = 0;
  Pos y = 0;
  auto operator<=>(const Point&) const = default;
};

// Monotone lattice path; steps (+1,+1), (+1,0) delete, (0,+1) insert.
struct Alignment {
  std::vector<Point> pts;

  Pos x() const { return pts.front().x; }
  Pos y() const { return pts.front().y; }
  Pos x_end() const { return pts.back().x; }
  Pos y_end() const { return pts.back().y; }
  Span source() const { return {x(), x_end()}; }
  Span target() const { return {y(), y_end()}; }
  bool operator==(const Alignment&) const = default;
};

enum class Op : std::uint8_t { kDelete = 0, kInsert = 1, kSubstitute = 2 };

struct EditTuple {
  Pos x = 0;
  Symbol cx = kEps;
  Pos y = 0;
  Symbol cy = kEps;

  Op op() const {
    if (cx == kEps) return Op::kInsert;
    if (cy == kEps) return Op::kDelete;
    return Op::kSubstitute;
  }
  auto operator<=>(const EditTuple&) const = default;
};

using EditInfo = std::vector<EditTuple>;

Alignment identity_alignment(Span s);
Alignment shift_alignment(const Alignment& a, Pos dx, Pos dy);
void validate_alignment(const Alignment& a);

Pos alignment_cost(const Alignment& a, const Str& x, const Str& y);
EditInfo edit_info(const Alignment& a, const Str& x, const Str& y);
Pos edit_count(const EditInfo& info, Op op);

// Rebuilds the path from its start, the source end and the edits.
Alignment alignment_from_edit_info(Point start, Pos x_end, const EditInfo& info);
// Target end implied by a start, a source end and the edits.
Pos implied_target_end(Point start, Pos x_end, const EditInfo& info);

// Returns Y[y..y') given X[x..x') (as `source`) and the edit information.
Str reconstruct_target(View source, Point start, const EditInfo& info);

Pos edit_distance(View a, View b);

struct Aligned {
  Pos cost = 0;
  Alignment path;
};

// Optimal alignment of X[xs) onto Y[ys); ties prefer substitution/match,
// then deletion, then insertion, walking forward from the start.
Aligned align(const Str& x, Span xs, const Str& y, Span ys);

struct Enumeration {
  Pos cost = 0;
  std::vector<Alignment> paths;
  bool truncated = false;
};

// All optimal alignments in lexicographic order of their point sequences.
Enumeration enumerate_optimal_alignments(const Str& x, Span xs, const Str& y, Span ys,
                                         std::size_t cap);

Alignment restrict_alignment(const Alignment& a, Span sub);
Alignment invert_alignment(const Alignment& a);

// Strict product through the shared middle fragment.
Alignment compose_alignments(const Alignment& a, const Alignment& b);
// Product in which a double substitution is split into delete+insert so the
// result never matches a pair that is not matched by both factors.
Alignment compose_alignments_split(const Alignment& a, const Alignment& b, const Str& x,
                                   const Str& y, const Str& z);

struct SelfAligned {
  Pos cost = 0;
  Alignment path;  // every point satisfies x >= y
};

SelfAligned self_edit_distance(View x);
Pos self_edit_distance_value(View x);
// selfed of every prefix X[0..e) in order, stopping after the first value
// above `limit`; entry e-1 holds selfed(X[0..e)).
std::vector<Pos> selfed_prefixes(View x, Pos limit);

Str periodic_extension(View q, Pos length);
Pos edp(View s, View q);
Pos edl(View s, View q);
Pos eds(View s, View q);

Pos period(View x);
bool is_primitive(View x);
bool has_period(View x, Pos p);

}  // namespace pmwe
