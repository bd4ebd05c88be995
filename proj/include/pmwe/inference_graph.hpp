#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pmwe/strings.hpp"

namespace pmwe {

// S: full alignments of P onto a prefix/suffix of T, further full alignments
// A_1..A_a and partial alignments B_1..B_b, all of cost at most K.
struct AlignmentSet {
  Alignment x_pref;
  Alignment x_suf;
  std::vector<Alignment> a_list;
  std::vector<Alignment> b_list;
  Pos K = 0;

  std::vector<const Alignment*> ordered() const;
  std::size_t size() const { return 2 + a_list.size() + b_list.size(); }
};

Pos set_cost(const AlignmentSet& s, const Str& p, const Str& t);
std::vector<EditInfo> set_edit_infos(const AlignmentSet& s, const Str& p, const Str& t);

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);
  std::size_t find(std::size_t v);
  void unite(std::size_t a, std::size_t b);

 private:
  std::vector<std::size_t> parent_;
};

struct InferenceGraph {
  Pos m = 0;
  Pos n = 0;
  std::vector<Pos> comp;          // canonical component id (smallest vertex)
  std::vector<std::uint8_t> red;  // per vertex: its component holds a red edge
  std::vector<Symbol> symbol;     // per vertex, kEps when not implied by the edits
  Pos bc = 0;
  Pos red_components = 0;

  Pos bottom() const { return m + n; }
  Pos p_vertex(Pos x) const { return x; }
  Pos t_vertex(Pos y) const { return m + y; }
  bool black_p(Pos x) const { return !red[static_cast<std::size_t>(x)]; }
  bool black_t(Pos y) const { return !red[static_cast<std::size_t>(m + y)]; }
};

// Graph over |P| + |T| + 1 vertices. Symbols of red vertices are derived from
// the edit informations only, so encoder and decoder obtain the same graph.
InferenceGraph build_graph(Pos m, Pos n, const std::vector<const Alignment*>& alignments,
                           const std::vector<EditInfo>& infos);
InferenceGraph build_graph(const Str& p, const Str& t, const AlignmentSet& s);

struct BlackIndexing {
  Pos bc = 0;
  std::vector<Pos> pi;   // positions of P_|S in P
  std::vector<Pos> tau;  // positions of T_|S in T
  std::vector<Pos> p_comp;  // per position of P: black component index or -1
  std::vector<Pos> t_comp;

  Pos m_s() const { return static_cast<Pos>(pi.size()); }
  Pos n_s() const { return static_cast<Pos>(tau.size()); }
  Pos m_c(Pos c) const { return (m_s() - c + bc - 1) / bc; }
  Pos n_c(Pos c) const { return (n_s() - c + bc - 1) / bc; }
  Pos pi_c(Pos c, Pos j) const { return pi[static_cast<std::size_t>(c + j * bc)]; }
  Pos tau_c(Pos c, Pos i) const { return tau[static_cast<std::size_t>(c + i * bc)]; }
  Pos c_last() const { return (m_s() - 1) % bc; }
  Pos s_p() const { return m_s() / bc; }
  // Number of P_|S (T_|S) characters in P[0..x) (T[0..y)).
  Pos p_rank(Pos x) const;
  Pos t_rank(Pos y) const;
};

// Requires bc > 0 and S enclosing T; checks the residue structure.
BlackIndexing black_indexing(const InferenceGraph& g, const std::vector<const Alignment*>& alignments,
                             const std::vector<EditInfo>& infos);

// k is the matching threshold, not the per-alignment bound K.
bool encloses(const AlignmentSet& s, Pos m, Pos n, Pos k);

struct EnclosureCheck {
  bool ok = false;
  std::vector<Pos> g;
};

EnclosureCheck check_succinct_enclosure(const AlignmentSet& s, const BlackIndexing& ix);

bool captures(const BlackIndexing& ix, Pos w, Pos t, Pos K);

}  // namespace pmwe
