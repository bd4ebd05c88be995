#include "pmwe/weight_cover.hpp"

#include <algorithm>

namespace pmwe {

namespace {

// Component of the largest black position <= v, or -1.
std::vector<Pos> predecessor_components(const std::vector<Pos>& comp) {
  std::vector<Pos> out(comp.size(), -1);
  Pos last = -1;
  for (std::size_t v = 0; v < comp.size(); ++v) {
    if (comp[v] >= 0) last = comp[v];
    out[v] = last;
  }
  return out;
}

View sub(const Str& s, Pos b, Pos e) {
  return View(s).subspan(static_cast<std::size_t>(b), static_cast<std::size_t>(e - b));
}

}  // namespace

WeightCover build_weight_cover(const std::vector<const Alignment*>& alignments,
                               const std::vector<EditInfo>& infos, const BlackIndexing& ix) {
  if (ix.bc <= 0) throw ProtocolMisuse("weight cover needs bc > 0");
  WeightCover w;
  w.weights.assign(static_cast<std::size_t>(ix.bc), 0);
  const auto pp = predecessor_components(ix.p_comp);
  const auto pt = predecessor_components(ix.t_comp);
  auto charge = [&](Pos c) {
    ++w.weights[static_cast<std::size_t>(c < 0 ? ix.bc - 1 : c)];
    ++w.total;
  };
  for (std::size_t k = 0; k < alignments.size(); ++k) {
    for (const EditTuple& e : infos[k]) {
      if (e.op() == Op::kInsert) charge(pt[static_cast<std::size_t>(e.y)]);
      else charge(pp[static_cast<std::size_t>(e.x)]);
    }
  }
  return w;
}

bool verify_cover(const WeightCover& w, const Str& p, const Str& t, const BlackIndexing& ix) {
  const Pos bc = ix.bc;
  if (bc <= 0 || w.bc() != bc) return false;
  const Pos ms = ix.m_s(), ns = ix.n_s();
  const Pos m = static_cast<Pos>(p.size()), n = static_cast<Pos>(t.size());
  const auto& pi = ix.pi;
  const auto& tau = ix.tau;
  auto at = [](const std::vector<Pos>& v, Pos i) { return v[static_cast<std::size_t>(i)]; };

  // (1)
  for (Pos j = 0; j + 1 < ms; ++j) {
    const Pos c = j % bc;
    for (Pos i = c; i + 1 < ns; i += bc) {
      if (edit_distance(sub(p, at(pi, j), at(pi, j + 1)), sub(t, at(tau, i), at(tau, i + 1))) > w.at(c))
        return false;
    }
  }
  const View head = sub(p, 0, at(pi, 0));
  // (2)
  if (edit_distance(head, sub(t, 0, at(tau, 0))) > w.at(bc - 1)) return false;
  // (3)
  for (Pos i = bc; i < ns; i += bc) {
    bool found = false;
    for (Pos s = at(tau, i - 1); s <= at(tau, i) && !found; ++s)
      found = edit_distance(head, sub(t, s, at(tau, i))) <= w.at(bc - 1);
    if (!found) return false;
  }
  const View tail = sub(p, at(pi, ms - 1), m);
  const Pos cl = ix.c_last();
  // (4)
  if (edit_distance(tail, sub(t, at(tau, ns - 1), n)) > w.at(cl)) return false;
  // (5)
  for (Pos i = cl; i + 1 < ns; i += bc) {
    bool found = false;
    for (Pos e = at(tau, i); e <= at(tau, i + 1) && !found; ++e)
      found = edit_distance(tail, sub(t, at(tau, i), e)) <= w.at(cl);
    if (!found) return false;
  }
  return true;
}

}  // namespace pmwe
