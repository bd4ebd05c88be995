#include "pmwe/inference_graph.hpp"

#include <algorithm>
#include <numeric>

namespace pmwe {

std::vector<const Alignment*> AlignmentSet::ordered() const {
  std::vector<const Alignment*> out{&x_pref, &x_suf};
  for (const auto& a : a_list) out.push_back(&a);
  for (const auto& b : b_list) out.push_back(&b);
  return out;
}

Pos set_cost(const AlignmentSet& s, const Str& p, const Str& t) {
  Pos total = 0;
  for (const Alignment* a : s.ordered()) total += alignment_cost(*a, p, t);
  return total;
}

std::vector<EditInfo> set_edit_infos(const AlignmentSet& s, const Str& p, const Str& t) {
  std::vector<EditInfo> out;
  for (const Alignment* a : s.ordered()) out.push_back(edit_info(*a, p, t));
  return out;
}

UnionFind::UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }

std::size_t UnionFind::find(std::size_t v) {
  std::size_t root = v;
  while (parent_[root] != root) root = parent_[root];
  while (parent_[v] != root) {
    std::size_t next = parent_[v];
    parent_[v] = root;
    v = next;
  }
  return root;
}

void UnionFind::unite(std::size_t a, std::size_t b) {
  a = find(a);
  b = find(b);
  if (a == b) return;
  if (a < b) std::swap(a, b);
  parent_[a] = b;  // smaller vertex stays root
}

InferenceGraph build_graph(Pos m, Pos n, const std::vector<const Alignment*>& alignments,
                           const std::vector<EditInfo>& infos) {
  InferenceGraph g;
  g.m = m;
  g.n = n;
  const std::size_t nv = static_cast<std::size_t>(m + n + 1);
  const std::size_t bottom = nv - 1;
  UnionFind uf(nv);
  std::vector<std::vector<std::size_t>> black_adj(nv);
  std::vector<std::size_t> red_ends;
  g.symbol.assign(nv, kEps);

  auto set_symbol = [&](std::size_t v, Symbol c) {
    if (g.symbol[v] != kEps && g.symbol[v] != c) throw MalformedEditInfo("conflicting symbols");
    g.symbol[v] = c;
  };
  auto pv = [&](Pos x) {
    if (x < 0 || x >= m) throw MalformedEditInfo("pattern position out of range");
    return static_cast<std::size_t>(x);
  };
  auto tv = [&](Pos y) {
    if (y < 0 || y >= n) throw MalformedEditInfo("text position out of range");
    return static_cast<std::size_t>(m + y);
  };

  for (std::size_t k = 0; k < alignments.size(); ++k) {
    const Alignment& a = *alignments[k];
    const EditInfo& info = infos[k];
    std::size_t ti = 0;
    for (std::size_t s = 1; s < a.pts.size(); ++s) {
      const Point p = a.pts[s - 1];
      const Point q = a.pts[s];
      const bool at_tuple = ti < info.size() && info[ti].x == p.x && info[ti].y == p.y;
      if (q.x != p.x && q.y != p.y) {
        const std::size_t u = pv(p.x), v = tv(p.y);
        uf.unite(u, v);
        if (at_tuple && info[ti].op() == Op::kSubstitute) {
          set_symbol(u, info[ti].cx);
          set_symbol(v, info[ti].cy);
          red_ends.push_back(u);
          ++ti;
        } else {
          black_adj[u].push_back(v);
          black_adj[v].push_back(u);
        }
      } else if (q.x != p.x) {
        if (!at_tuple || info[ti].op() != Op::kDelete) throw MalformedEditInfo("missing deletion");
        const std::size_t u = pv(p.x);
        uf.unite(u, bottom);
        set_symbol(u, info[ti].cx);
        red_ends.push_back(u);
        ++ti;
      } else {
        if (!at_tuple || info[ti].op() != Op::kInsert) throw MalformedEditInfo("missing insertion");
        const std::size_t v = tv(p.y);
        uf.unite(v, bottom);
        set_symbol(v, info[ti].cy);
        red_ends.push_back(v);
        ++ti;
      }
    }
    if (ti != info.size()) throw MalformedEditInfo("edit information does not fit the path");
  }

  std::vector<std::uint8_t> root_red(nv, 0);
  for (std::size_t v : red_ends) root_red[uf.find(v)] = 1;
  g.comp.resize(nv);
  g.red.resize(nv);
  const std::size_t bottom_root = uf.find(bottom);
  for (std::size_t v = 0; v < nv; ++v) {
    const std::size_t r = uf.find(v);
    g.comp[v] = static_cast<Pos>(r);
    g.red[v] = root_red[r] || r == bottom_root ? 1 : 0;
    if (r == v) {
      if (root_red[r]) ++g.red_components;
      else if (r != bottom_root) ++g.bc;
    }
  }

  // Spread known symbols along black edges inside red components.
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < nv; ++v)
    if (g.symbol[v] != kEps) queue.push_back(v);
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const std::size_t v = queue[h];
    for (std::size_t u : black_adj[v]) {
      if (g.symbol[u] == kEps) {
        g.symbol[u] = g.symbol[v];
        queue.push_back(u);
      } else if (g.symbol[u] != g.symbol[v]) {
        throw MalformedEditInfo("black edge joins different symbols");
      }
    }
  }
  for (std::size_t v = 0; v + 1 < nv; ++v)
    if (g.red[v] && g.symbol[v] == kEps) throw MalformedEditInfo("red character without symbol");
  return g;
}

InferenceGraph build_graph(const Str& p, const Str& t, const AlignmentSet& s) {
  auto infos = set_edit_infos(s, p, t);
  InferenceGraph g = build_graph(static_cast<Pos>(p.size()), static_cast<Pos>(t.size()), s.ordered(), infos);
  const Pos m = g.m;
  for (Pos v = 0; v < g.m + g.n; ++v) {
    const Symbol actual = v < m ? p[static_cast<std::size_t>(v)] : t[static_cast<std::size_t>(v - m)];
    if (g.red[static_cast<std::size_t>(v)] && g.symbol[static_cast<std::size_t>(v)] != actual)
      throw InvariantViolation("derived symbol differs from the input");
  }
  // Black components are uniform: every black edge is a match.
  std::vector<Symbol> root_symbol(static_cast<std::size_t>(m + g.n + 1), kEps);
  for (Pos v = 0; v < g.m + g.n; ++v) {
    if (g.red[static_cast<std::size_t>(v)]) continue;
    const Symbol actual = v < m ? p[static_cast<std::size_t>(v)] : t[static_cast<std::size_t>(v - m)];
    Symbol& rs = root_symbol[static_cast<std::size_t>(g.comp[static_cast<std::size_t>(v)])];
    if (rs == kEps) rs = actual;
    else if (rs != actual) throw InvariantViolation("black component with two symbols");
  }
  return g;
}

Pos BlackIndexing::p_rank(Pos x) const {
  return std::lower_bound(pi.begin(), pi.end(), x) - pi.begin();
}

Pos BlackIndexing::t_rank(Pos y) const {
  return std::lower_bound(tau.begin(), tau.end(), y) - tau.begin();
}

BlackIndexing black_indexing(const InferenceGraph& g, const std::vector<const Alignment*>& alignments,
                             const std::vector<EditInfo>& infos) {
  if (g.bc <= 0) throw ProtocolMisuse("black indexing needs a black component");
  BlackIndexing ix;
  ix.bc = g.bc;
  for (Pos x = 0; x < g.m; ++x)
    if (g.black_p(x)) ix.pi.push_back(x);
  for (Pos y = 0; y < g.n; ++y)
    if (g.black_t(y)) ix.tau.push_back(y);
  const Pos bc = g.bc;
  if (ix.m_s() < bc) throw InvariantViolation("black component without pattern character");
  if ((ix.n_s() - ix.m_s()) % bc != 0) throw InvariantViolation("n_S and m_S differ modulo bc");
  auto comp_of_p = [&](Pos j) { return g.comp[static_cast<std::size_t>(ix.pi[static_cast<std::size_t>(j)])]; };
  std::vector<Pos> first(static_cast<std::size_t>(bc));
  for (Pos c = 0; c < bc; ++c) {
    first[static_cast<std::size_t>(c)] = comp_of_p(c);
    for (Pos d = 0; d < c; ++d)
      if (first[static_cast<std::size_t>(d)] == first[static_cast<std::size_t>(c)])
        throw InvariantViolation("residues share a component");
  }
  ix.p_comp.assign(static_cast<std::size_t>(g.m), -1);
  ix.t_comp.assign(static_cast<std::size_t>(g.n), -1);
  for (Pos j = 0; j < ix.m_s(); ++j) {
    if (comp_of_p(j) != first[static_cast<std::size_t>(j % bc)]) throw InvariantViolation("pattern residue broken");
    ix.p_comp[static_cast<std::size_t>(ix.pi[static_cast<std::size_t>(j)])] = j % bc;
  }
  for (Pos i = 0; i < ix.n_s(); ++i) {
    const Pos y = ix.tau[static_cast<std::size_t>(i)];
    if (g.comp[static_cast<std::size_t>(g.m + y)] != first[static_cast<std::size_t>(i % bc)])
      throw InvariantViolation("text residue broken");
    ix.t_comp[static_cast<std::size_t>(y)] = i % bc;
  }

  // Each alignment matches P_|S[x_X + p] with T_|S[y_X + p] and nothing else black.
  for (std::size_t k = 0; k < alignments.size(); ++k) {
    const Alignment& a = *alignments[k];
    const Pos xr = ix.p_rank(a.x()), yr = ix.t_rank(a.y());
    const Pos xr_end = ix.p_rank(a.x_end()), yr_end = ix.t_rank(a.y_end());
    if (xr_end - xr != yr_end - yr) throw InvariantViolation("alignment covers unequal black runs");
    Pos p = 0;
    for (std::size_t s = 1; s < a.pts.size(); ++s) {
      const Point u = a.pts[s - 1], v = a.pts[s];
      if (v.x == u.x || v.y == u.y) continue;
      if (!g.black_p(u.x)) continue;
      if (u.x != ix.pi[static_cast<std::size_t>(xr + p)] || u.y != ix.tau[static_cast<std::size_t>(yr + p)])
        throw InvariantViolation("black edges are not the shifted matching");
      ++p;
    }
    if (p != xr_end - xr) throw InvariantViolation("black matching incomplete");
    (void)infos;
  }
  return ix;
}

bool encloses(const AlignmentSet& s, Pos m, Pos n, Pos k) {
  if (n > 2 * m - 2 * k) return false;
  auto full = [&](const Alignment& a) { return a.x() == 0 && a.x_end() == m; };
  if (!full(s.x_pref) || s.x_pref.y() != 0) return false;
  if (!full(s.x_suf) || s.x_suf.y_end() != n) return false;
  for (const auto& a : s.a_list)
    if (!full(a)) return false;
  return true;
}

EnclosureCheck check_succinct_enclosure(const AlignmentSet& s, const BlackIndexing& ix) {
  EnclosureCheck out;
  std::vector<Pos> shifts{ix.t_rank(s.x_pref.y()), ix.t_rank(s.x_suf.y())};
  for (const auto& a : s.a_list) shifts.push_back(ix.t_rank(a.y()));
  Pos g0 = 0;
  for (Pos v : shifts) g0 = std::gcd(g0, v);
  if (g0 == 0) g0 = ix.m_s();
  out.g.push_back(g0);
  out.ok = true;
  for (const auto& b : s.b_list) {
    const Pos xb = ix.p_rank(b.x()), xb_end = ix.p_rank(b.x_end());
    const Pos yb = ix.t_rank(b.y());
    if (xb_end - xb < out.g.back() + 1) out.ok = false;
    out.g.push_back(std::gcd(out.g.back(), yb - xb));
  }
  return out;
}

bool captures(const BlackIndexing& ix, Pos w, Pos t, Pos K) {
  if (ix.bc == 0) return true;
  const Pos target = t + ix.pi[0];
  const Pos n0 = ix.n_c(0);
  Pos lo = 0, hi = n0;  // first i with tau_i^0 >= target
  while (lo < hi) {
    const Pos mid = (lo + hi) / 2;
    if (ix.tau_c(0, mid) < target) lo = mid + 1;
    else hi = mid;
  }
  const Pos radius = w + 3 * K;
  if (lo < n0 && ix.tau_c(0, lo) - target <= radius) return true;
  if (lo > 0 && target - ix.tau_c(0, lo - 1) <= radius) return true;
  return false;
}

}  // namespace pmwe
