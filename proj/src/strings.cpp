#include "pmwe/strings.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <stdexcept>

namespace pmwe {

namespace {

constexpr std::int32_t kInf = INT32_MAX / 4;

// R[i][j] = edit distance of a[i..) and b[j..), kept on the diagonals
// j - i in [lo, hi]. Cells outside read as kInf.
struct SuffixTable {
  Pos la = 0;
  Pos lb = 0;
  Pos lo = 0;
  Pos hi = 0;
  std::vector<std::int32_t> v;

  std::int32_t at(Pos i, Pos j) const {
    const Pos d = j - i;
    if (d < lo || d > hi) return kInf;
    return v[static_cast<std::size_t>(i * (hi - lo + 1) + d - lo)];
  }
  void set(Pos i, Pos j, std::int32_t x) { v[static_cast<std::size_t>(i * (hi - lo + 1) + j - i - lo)] = x; }
};

SuffixTable banded_table(const Symbol* a, Pos la, const Symbol* b, Pos lb, Pos band) {
  SuffixTable t;
  t.la = la;
  t.lb = lb;
  t.lo = std::max(-la, std::min<Pos>(0, lb - la) - band);
  t.hi = std::min(lb, std::max<Pos>(0, lb - la) + band);
  t.v.assign(static_cast<std::size_t>((la + 1) * (t.hi - t.lo + 1)), kInf);
  for (Pos i = la; i >= 0; --i) {
    const Pos jlo = std::max<Pos>(0, i + t.lo), jhi = std::min(lb, i + t.hi);
    for (Pos j = jhi; j >= jlo; --j) {
      std::int32_t best;
      if (i == la) {
        best = static_cast<std::int32_t>(lb - j);
      } else if (j == lb) {
        best = static_cast<std::int32_t>(la - i);
      } else {
        best = t.at(i + 1, j + 1) + (a[i] != b[j] ? 1 : 0);
        best = std::min(best, t.at(i + 1, j) + 1);
        best = std::min(best, t.at(i, j + 1) + 1);
      }
      t.set(i, j, std::min(best, kInf));
    }
  }
  return t;
}

// Every path of cost c stays within c diagonals of both corners, so the
// banded table is exact on all optimal paths once R[0][0] <= band.
SuffixTable suffix_table(const Symbol* a, Pos la, const Symbol* b, Pos lb) {
  const Pos widest = std::max(la, lb);
  for (Pos band = 8;; band *= 2) {
    band = std::min(band, widest);
    SuffixTable t = banded_table(a, la, b, lb, band);
    if (t.at(0, 0) <= band || band == widest) return t;
  }
}

void check_span(const Str& s, Span sp) {
  if (sp.begin < 0 || sp.begin > sp.end || sp.end > static_cast<Pos>(s.size()))
    throw std::invalid_argument("fragment out of range");
}

}  // namespace

Alphabet Alphabet::from_bytes(std::string_view a, std::string_view b) {
  bool seen[256] = {};
  for (unsigned char c : a) seen[c] = true;
  for (unsigned char c : b) seen[c] = true;
  Alphabet out;
  for (int c = 0; c < 256; ++c)
    if (seen[c]) out.table.push_back(static_cast<std::uint8_t>(c));
  if (out.table.empty()) out.table.push_back(0);
  return out;
}

Symbol Alphabet::code(std::uint8_t byte) const {
  auto it = std::lower_bound(table.begin(), table.end(), byte);
  if (it == table.end() || *it != byte) throw std::invalid_argument("byte not in alphabet");
  return static_cast<Symbol>(it - table.begin());
}

Str Alphabet::encode(std::string_view bytes) const {
  Str out;
  out.reserve(bytes.size());
  for (unsigned char c : bytes) out.push_back(code(c));
  return out;
}

std::string Alphabet::decode(const Str& s) const {
  std::string out;
  out.reserve(s.size());
  for (Symbol c : s) {
    if (c >= table.size()) throw std::invalid_argument("symbol outside alphabet");
    out.push_back(static_cast<char>(table[c]));
  }
  return out;
}

unsigned symbol_width(std::size_t sigma) {
  unsigned w = 0;
  while ((std::size_t{1} << w) < sigma) ++w;
  return w;
}

Alignment identity_alignment(Span s) {
  Alignment a;
  for (Pos i = s.begin; i <= s.end; ++i) a.pts.push_back({i, i});
  return a;
}

Alignment shift_alignment(const Alignment& a, Pos dx, Pos dy) {
  Alignment out = a;
  for (auto& p : out.pts) {
    p.x += dx;
    p.y += dy;
  }
  return out;
}

void validate_alignment(const Alignment& a) {
  if (a.pts.empty()) throw InvariantViolation("empty alignment");
  for (std::size_t i = 1; i < a.pts.size(); ++i) {
    Pos dx = a.pts[i].x - a.pts[i - 1].x;
    Pos dy = a.pts[i].y - a.pts[i - 1].y;
    bool ok = (dx == 1 && dy == 1) || (dx == 1 && dy == 0) || (dx == 0 && dy == 1);
    if (!ok) throw InvariantViolation("invalid alignment step");
  }
}

Pos alignment_cost(const Alignment& a, const Str& x, const Str& y) {
  Pos cost = 0;
  for (std::size_t i = 1; i < a.pts.size(); ++i) {
    const Point& p = a.pts[i - 1];
    const Point& q = a.pts[i];
    if (q.x != p.x && q.y != p.y) {
      if (x[static_cast<std::size_t>(p.x)] != y[static_cast<std::size_t>(p.y)]) ++cost;
    } else {
      ++cost;
    }
  }
  return cost;
}

EditInfo edit_info(const Alignment& a, const Str& x, const Str& y) {
  EditInfo out;
  for (std::size_t i = 1; i < a.pts.size(); ++i) {
    const Point& p = a.pts[i - 1];
    const Point& q = a.pts[i];
    if (q.x != p.x && q.y != p.y) {
      Symbol cx = x[static_cast<std::size_t>(p.x)];
      Symbol cy = y[static_cast<std::size_t>(p.y)];
      if (cx != cy) out.push_back({p.x, cx, p.y, cy});
    } else if (q.x != p.x) {
      out.push_back({p.x, x[static_cast<std::size_t>(p.x)], p.y, kEps});
    } else {
      out.push_back({p.x, kEps, p.y, y[static_cast<std::size_t>(p.y)]});
    }
  }
  return out;
}

Pos edit_count(const EditInfo& info, Op op) {
  return std::count_if(info.begin(), info.end(), [op](const EditTuple& t) { return t.op() == op; });
}

Alignment alignment_from_edit_info(Point start, Pos x_end, const EditInfo& info) {
  Alignment a;
  Point cur = start;
  a.pts.push_back(cur);
  for (const EditTuple& t : info) {
    if (t.cx == kEps && t.cy == kEps) throw MalformedEditInfo("empty edit tuple");
    if (t.cx != kEps && t.cx == t.cy) throw MalformedEditInfo("substitution of equal symbols");
    Pos gap = t.x - cur.x;
    if (gap < 0 || t.y - cur.y != gap) throw MalformedEditInfo("edit tuples out of order");
    for (Pos i = 0; i < gap; ++i) {
      ++cur.x;
      ++cur.y;
      a.pts.push_back(cur);
    }
    if (t.op() != Op::kInsert) ++cur.x;
    if (t.op() != Op::kDelete) ++cur.y;
    if (cur.x > x_end) throw MalformedEditInfo("edit beyond source end");
    a.pts.push_back(cur);
  }
  if (cur.x > x_end) throw MalformedEditInfo("edit beyond source end");
  while (cur.x < x_end) {
    ++cur.x;
    ++cur.y;
    a.pts.push_back(cur);
  }
  return a;
}

Pos implied_target_end(Point start, Pos x_end, const EditInfo& info) {
  return start.y + (x_end - start.x) + edit_count(info, Op::kInsert) - edit_count(info, Op::kDelete);
}

Str reconstruct_target(View source, Point start, const EditInfo& info) {
  Str out;
  Pos px = start.x;
  Pos py = start.y;
  const Pos x_end = start.x + static_cast<Pos>(source.size());
  auto src = [&](Pos x) { return source[static_cast<std::size_t>(x - start.x)]; };
  for (const EditTuple& t : info) {
    if (t.cx == kEps && t.cy == kEps) throw MalformedEditInfo("empty edit tuple");
    if (t.cx != kEps && t.cx == t.cy) throw MalformedEditInfo("substitution of equal symbols");
    Pos gap = t.x - px;
    if (gap < 0 || t.y - py != gap) throw MalformedEditInfo("edit tuples out of order");
    if (t.x > x_end || (t.op() != Op::kInsert && t.x >= x_end))
      throw MalformedEditInfo("edit beyond source end");
    for (Pos x = px; x < t.x; ++x) out.push_back(src(x));
    px = t.x;
    py = t.y;
    if (t.op() != Op::kInsert) {
      if (src(px) != t.cx) throw MalformedEditInfo("edit symbol disagrees with source");
      ++px;
    }
    if (t.op() != Op::kDelete) {
      out.push_back(t.cy);
      ++py;
    }
  }
  for (Pos x = px; x < x_end; ++x) out.push_back(src(x));
  return out;
}

Pos edit_distance(View a, View b) {
  std::vector<Pos> prev(b.size() + 1), cur(b.size() + 1);
  std::iota(prev.begin(), prev.end(), Pos{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<Pos>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      Pos best = prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0);
      best = std::min(best, prev[j] + 1);
      best = std::min(best, cur[j - 1] + 1);
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

Aligned align(const Str& x, Span xs, const Str& y, Span ys) {
  check_span(x, xs);
  check_span(y, ys);
  const Symbol* a = x.data() + xs.begin;
  const Symbol* b = y.data() + ys.begin;
  const Pos la = xs.size();
  const Pos lb = ys.size();
  SuffixTable r = suffix_table(a, la, b, lb);
  Aligned out;
  out.cost = r.at(0, 0);
  Pos i = 0, j = 0;
  out.path.pts.push_back({xs.begin, ys.begin});
  while (i < la || j < lb) {
    const std::int32_t here = r.at(i, j);
    if (i < la && j < lb && here == r.at(i + 1, j + 1) + (a[i] != b[j] ? 1 : 0)) {
      ++i;
      ++j;
    } else if (i < la && here == r.at(i + 1, j) + 1) {
      ++i;
    } else {
      ++j;
    }
    out.path.pts.push_back({xs.begin + i, ys.begin + j});
  }
  return out;
}

Enumeration enumerate_optimal_alignments(const Str& x, Span xs, const Str& y, Span ys,
                                         std::size_t cap) {
  if (cap == 0) throw std::invalid_argument("cap must be positive");
  check_span(x, xs);
  check_span(y, ys);
  const Symbol* a = x.data() + xs.begin;
  const Symbol* b = y.data() + ys.begin;
  const Pos la = xs.size();
  const Pos lb = ys.size();
  SuffixTable r = suffix_table(a, la, b, lb);
  Enumeration out;
  out.cost = r.at(0, 0);

  // Each frame remembers which successor (0 insert, 1 delete, 2 diagonal) to try next.
  struct Frame {
    Pos i, j;
    int next;
  };
  std::vector<Frame> stack{{0, 0, 0}};
  std::vector<Point> cur{{xs.begin, ys.begin}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.i == la && f.j == lb) {
      if (out.paths.size() == cap) {
        out.truncated = true;
        break;
      }
      out.paths.push_back(Alignment{cur});
      stack.pop_back();
      cur.pop_back();
      continue;
    }
    bool advanced = false;
    while (!advanced && f.next < 3) {
      const int opt = f.next++;
      const std::int32_t here = r.at(f.i, f.j);
      Pos ni = f.i, nj = f.j;
      std::int32_t step = 1;
      if (opt == 0) {
        if (f.j >= lb) continue;
        nj = f.j + 1;
      } else if (opt == 1) {
        if (f.i >= la) continue;
        ni = f.i + 1;
      } else {
        if (f.i >= la || f.j >= lb) continue;
        ni = f.i + 1;
        nj = f.j + 1;
        step = a[f.i] != b[f.j] ? 1 : 0;
      }
      if (here != step + r.at(ni, nj)) continue;
      stack.push_back({ni, nj, 0});
      cur.push_back({xs.begin + ni, ys.begin + nj});
      advanced = true;
    }
    if (!advanced) {
      stack.pop_back();
      cur.pop_back();
    }
  }
  return out;
}

Alignment restrict_alignment(const Alignment& a, Span sub) {
  if (sub.begin < a.x() || sub.end > a.x_end() || sub.begin > sub.end)
    throw std::invalid_argument("restriction outside the source fragment");
  auto first_at = [&](Pos x) {
    return static_cast<std::size_t>(
        std::lower_bound(a.pts.begin(), a.pts.end(), Point{x, LLONG_MIN}) - a.pts.begin());
  };
  std::size_t lo = first_at(sub.begin);
  std::size_t hi = sub.end == a.x_end() ? a.pts.size() - 1 : first_at(sub.end);
  Alignment out;
  out.pts.assign(a.pts.begin() + static_cast<std::ptrdiff_t>(lo),
                 a.pts.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
  return out;
}

Alignment invert_alignment(const Alignment& a) {
  Alignment out = a;
  for (auto& p : out.pts) std::swap(p.x, p.y);
  return out;
}

namespace {

Alignment compose_impl(const Alignment& a, const Alignment& b, const Str* x, const Str* y,
                       const Str* z) {
  if (a.target() != b.source()) throw CompositionMismatch("middle fragments differ");
  Alignment out;
  std::size_t i = 0, j = 0;
  const std::size_t na = a.pts.size(), nb = b.pts.size();
  out.pts.push_back({a.pts[0].x, b.pts[0].y});
  while (i + 1 < na || j + 1 < nb) {
    const bool a_del = i + 1 < na && a.pts[i + 1].y == a.pts[i].y;
    const bool b_ins = j + 1 < nb && b.pts[j + 1].x == b.pts[j].x;
    if (a_del) {
      ++i;
    } else if (b_ins) {
      ++j;
    } else {
      if (i + 1 >= na || j + 1 >= nb) throw CompositionMismatch("factors end at different points");
      const Point pa = a.pts[i], pb = b.pts[j];
      ++i;
      ++j;
      const bool a_diag = a.pts[i].x != pa.x;
      const bool b_diag = b.pts[j].y != pb.y;
      if (x && a_diag && b_diag) {
        const Symbol cx = (*x)[static_cast<std::size_t>(pa.x)];
        const Symbol cy = (*y)[static_cast<std::size_t>(pa.y)];
        const Symbol cz = (*z)[static_cast<std::size_t>(pb.y)];
        if (cx != cy && cy != cz && cx == cz) {
          out.pts.push_back({a.pts[i].x, pb.y});
        }
      }
    }
    Point p{a.pts[i].x, b.pts[j].y};
    if (p != out.pts.back()) out.pts.push_back(p);
  }
  return out;
}

}  // namespace

Alignment compose_alignments(const Alignment& a, const Alignment& b) {
  return compose_impl(a, b, nullptr, nullptr, nullptr);
}

Alignment compose_alignments_split(const Alignment& a, const Alignment& b, const Str& x,
                                   const Str& y, const Str& z) {
  return compose_impl(a, b, &x, &y, &z);
}

SelfAligned self_edit_distance(View x) {
  const Pos n = static_cast<Pos>(x.size());
  const std::size_t w = static_cast<std::size_t>(n + 1);
  std::vector<std::int32_t> d(w * w, kInf);
  auto at = [&](Pos i, Pos j) -> std::int32_t& {
    return d[static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)];
  };
  at(0, 0) = 0;
  for (Pos i = 0; i <= n; ++i) {
    for (Pos j = 0; j <= i; ++j) {
      if (i == 0 && j == 0) continue;
      std::int32_t best = kInf;
      if (i >= 1 && i - 1 >= j) best = std::min(best, at(i - 1, j) + 1);
      if (j >= 1) best = std::min(best, at(i, j - 1) + 1);
      if (i >= 1 && j >= 1 && i != j)
        best = std::min(best, at(i - 1, j - 1) + (x[i - 1] != x[j - 1] ? 1 : 0));
      at(i, j) = best;
    }
  }
  SelfAligned out;
  out.cost = at(n, n);
  std::vector<Point> rev{{n, n}};
  Pos i = n, j = n;
  while (i > 0 || j > 0) {
    const std::int32_t here = at(i, j);
    if (i >= 1 && j >= 1 && i != j &&
        here == at(i - 1, j - 1) + (x[i - 1] != x[j - 1] ? 1 : 0)) {
      --i;
      --j;
    } else if (i >= 1 && i - 1 >= j && here == at(i - 1, j) + 1) {
      --i;
    } else {
      --j;
    }
    rev.push_back({i, j});
  }
  out.path.pts.assign(rev.rbegin(), rev.rend());
  return out;
}

Pos self_edit_distance_value(View x) {
  const Pos n = static_cast<Pos>(x.size());
  std::vector<Pos> v = selfed_prefixes(x, 2 * n + 2);
  return n == 0 ? 0 : v.back();
}

std::vector<Pos> selfed_prefixes(View x, Pos limit) {
  const Pos n = static_cast<Pos>(x.size());
  const Pos h = limit / 2 + 1;
  // Row i holds D[i][i-d] at index d for d in [0, h].
  std::vector<std::int32_t> prev(static_cast<std::size_t>(h + 2), kInf);
  std::vector<std::int32_t> cur(static_cast<std::size_t>(h + 2), kInf);
  prev[0] = 0;
  std::vector<Pos> out;
  for (Pos i = 1; i <= n; ++i) {
    std::fill(cur.begin(), cur.end(), kInf);
    const Pos dmax = std::min(h, i);
    for (Pos dd = dmax; dd >= 0; --dd) {
      const std::size_t d = static_cast<std::size_t>(dd);
      const Pos j = i - dd;
      std::int32_t best = kInf;
      if (dd >= 1) best = std::min(best, prev[d - 1] + 1);
      if (j >= 1 && dd + 1 <= h) best = std::min(best, cur[d + 1] + 1);
      if (j >= 1 && dd != 0) best = std::min(best, prev[d] + (x[i - 1] != x[j - 1] ? 1 : 0));
      cur[d] = std::min(best, kInf);
    }
    std::swap(prev, cur);
    out.push_back(prev[0]);
    if (prev[0] > limit) break;
  }
  return out;
}

Str periodic_extension(View q, Pos length) {
  if (q.empty()) throw std::invalid_argument("empty period");
  Str out(static_cast<std::size_t>(length));
  for (Pos i = 0; i < length; ++i) out[static_cast<std::size_t>(i)] = q[static_cast<std::size_t>(i) % q.size()];
  return out;
}

namespace {

// row[j] = min distance of s to text[i..j) over allowed starts i.
std::vector<Pos> end_row(View s, View text, bool free_start) {
  std::vector<Pos> prev(text.size() + 1), cur(text.size() + 1);
  for (std::size_t j = 0; j <= text.size(); ++j) prev[j] = free_start ? 0 : static_cast<Pos>(j);
  for (std::size_t i = 1; i <= s.size(); ++i) {
    cur[0] = static_cast<Pos>(i);
    for (std::size_t j = 1; j <= text.size(); ++j) {
      Pos best = prev[j - 1] + (s[i - 1] != text[j - 1] ? 1 : 0);
      best = std::min(best, prev[j] + 1);
      best = std::min(best, cur[j - 1] + 1);
      cur[j] = best;
    }
    std::swap(prev, cur);
  }
  return prev;
}

}  // namespace

Pos edp(View s, View q) {
  if (q.empty()) throw std::invalid_argument("empty period");
  Str text = periodic_extension(q, 2 * static_cast<Pos>(s.size()) + static_cast<Pos>(q.size()));
  auto row = end_row(s, text, false);
  return *std::min_element(row.begin(), row.end());
}

Pos edl(View s, View q) {
  if (q.empty()) throw std::invalid_argument("empty period");
  Str text = periodic_extension(q, 2 * static_cast<Pos>(s.size()) + static_cast<Pos>(q.size()));
  auto row = end_row(s, text, true);
  return *std::min_element(row.begin(), row.end());
}

Pos eds(View s, View q) {
  if (q.empty()) throw std::invalid_argument("empty period");
  const Pos ql = static_cast<Pos>(q.size());
  const Pos reps = (2 * static_cast<Pos>(s.size()) + ql + ql - 1) / ql + 1;
  Str text = periodic_extension(q, reps * ql);
  auto row = end_row(s, text, true);
  Pos best = static_cast<Pos>(s.size());
  for (Pos j = 0; j <= reps; ++j) best = std::min(best, row[static_cast<std::size_t>(j * ql)]);
  return best;
}

Pos period(View x) {
  if (x.empty()) throw std::invalid_argument("period of empty string");
  const std::size_t n = x.size();
  std::vector<std::size_t> fail(n + 1, 0);
  for (std::size_t i = 1, k = 0; i < n; ++i) {
    while (k > 0 && x[i] != x[k]) k = fail[k];
    if (x[i] == x[k]) ++k;
    fail[i + 1] = k;
  }
  return static_cast<Pos>(n - fail[n]);
}

bool is_primitive(View x) {
  const Pos p = period(x);
  const Pos n = static_cast<Pos>(x.size());
  return p == n || n % p != 0;
}

bool has_period(View x, Pos p) {
  if (p <= 0) return false;
  for (std::size_t i = static_cast<std::size_t>(p); i < x.size(); ++i)
    if (x[i] != x[i - static_cast<std::size_t>(p)]) return false;
  return true;
}

}  // namespace pmwe
