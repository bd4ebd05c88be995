#include "pmwe/decoder.hpp"

#include <map>

namespace pmwe {

namespace {

Alignment rebuild(const AlignmentRecord& rec, Point start, Pos x_end) {
  return alignment_from_edit_info(start, x_end, rec.info);
}

template <class F>
auto corrupt_on_failure(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const CorruptSketch&) {
    throw;
  } catch (const std::exception& e) {
    throw CorruptSketch(std::string("inconsistent block: ") + e.what());
  }
}

}  // namespace

ReconstructedBlock reconstruct_graph(const BlockSketch& b, const SketchHeader& h) {
  if (b.mode != BlockMode::kBcZero && b.mode != BlockMode::kGeneral && b.mode != BlockMode::kPeriodic)
    throw ProtocolMisuse("block carries no alignments");
  return corrupt_on_failure([&] {
    const Pos m = h.m;
    const Pos nw = b.r - b.ell;
    if (nw < 0) throw CorruptSketch("negative window");
    ReconstructedBlock rb;
    AlignmentSet& s = rb.set;
    s.x_pref = rebuild(b.x_pref, {0, 0}, m);
    s.x_suf = rebuild(b.x_suf, {0, b.x_suf.y}, m);
    if (s.x_suf.y_end() != nw) throw CorruptSketch("suffix alignment misses the window end");
    for (const auto& a : b.a_list) s.a_list.push_back(rebuild(a, {0, a.y}, m));
    for (const auto& a : b.b_list) {
      if (a.x_len < 1 || a.x + a.x_len > m) throw CorruptSketch("partial alignment out of range");
      s.b_list.push_back(rebuild(a, {a.x, a.y}, a.x + a.x_len));
    }
    for (const Alignment* x : s.ordered())
      if (x->y_end() > nw || x->y() < 0) throw CorruptSketch("alignment leaves the window");
    rb.infos.push_back(b.x_pref.info);
    rb.infos.push_back(b.x_suf.info);
    for (const auto& a : b.a_list) rb.infos.push_back(a.info);
    for (const auto& a : b.b_list) rb.infos.push_back(a.info);
    rb.graph = build_graph(m, nw, s.ordered(), rb.infos);
    return rb;
  });
}

HashedStrings build_hashed_strings(const ReconstructedBlock& rb, const BlockSketch& b, const SketchHeader& h) {
  return corrupt_on_failure([&] {
    const InferenceGraph& g = rb.graph;
    const Symbol sigma = static_cast<Symbol>(h.alphabet.size());
    HashedStrings hs;
    hs.p.resize(static_cast<std::size_t>(g.m));
    hs.t.resize(static_cast<std::size_t>(g.n));
    if (g.bc == 0) {
      if (b.mode != BlockMode::kBcZero || !b.runs.empty()) throw CorruptSketch("block mode disagrees with the graph");
      for (Pos v = 0; v < g.m; ++v) hs.p[static_cast<std::size_t>(v)] = g.symbol[static_cast<std::size_t>(v)];
      for (Pos y = 0; y < g.n; ++y) hs.t[static_cast<std::size_t>(y)] = g.symbol[static_cast<std::size_t>(g.m + y)];
      return hs;
    }
    if (b.mode == BlockMode::kBcZero) throw CorruptSketch("block mode disagrees with the graph");
    const BlackIndexing ix = black_indexing(g, rb.set.ordered(), rb.infos);
    std::vector<Symbol> comp_symbol(static_cast<std::size_t>(g.bc), kEps);
    for (const CoverRun& run : b.runs) {
      if (run.a < 0 || run.a > run.b || run.b >= g.bc) throw CorruptSketch("cover run outside the components");
      const Pos begin = ix.tau[static_cast<std::size_t>(run.a)];
      const Pos end = ix.tau[static_cast<std::size_t>(run.b)] + 1;
      if (static_cast<Pos>(run.chars.size()) != end - begin) throw CorruptSketch("cover run length mismatch");
      for (Pos y = begin; y < end; ++y) {
        const Symbol c = run.chars[static_cast<std::size_t>(y - begin)];
        if (g.black_t(y)) comp_symbol[static_cast<std::size_t>(ix.t_comp[static_cast<std::size_t>(y)])] = c;
        else if (g.symbol[static_cast<std::size_t>(g.m + y)] != c) throw CorruptSketch("cover disagrees with edits");
      }
    }
    auto resolve = [&](Pos vertex, Pos comp) {
      if (comp < 0) return g.symbol[static_cast<std::size_t>(vertex)];
      const Symbol c = comp_symbol[static_cast<std::size_t>(comp)];
      return c != kEps ? c : sigma + static_cast<Symbol>(comp);
    };
    for (Pos x = 0; x < g.m; ++x) hs.p[static_cast<std::size_t>(x)] = resolve(x, ix.p_comp[static_cast<std::size_t>(x)]);
    for (Pos y = 0; y < g.n; ++y)
      hs.t[static_cast<std::size_t>(y)] = resolve(g.m + y, ix.t_comp[static_cast<std::size_t>(y)]);
    return hs;
  });
}

std::vector<Occurrence> decode_block(const BlockSketch& b, const SketchHeader& h, std::size_t cap) {
  const Symbol sigma = static_cast<Symbol>(h.alphabet.size());
  if (b.mode == BlockMode::kEmpty) return {};
  if (b.mode == BlockMode::kRaw) return find_occurrences(b.raw_p, b.raw_t, h.k, cap).occurrences;
  const BlockGeometry geo = block_geometry(h.n, h.m, h.k);
  if (b.ell < 0 || b.r > geo.n || b.ell > b.r) throw CorruptSketch("window outside the text");
  const ReconstructedBlock rb = reconstruct_graph(b, h);
  const HashedStrings hs = build_hashed_strings(rb, b, h);
  auto found = find_occurrences(hs.p, hs.t, geo.k, cap).occurrences;
  const Pos shift = b.ell - geo.pad;
  std::vector<Occurrence> out;
  for (auto& o : found) {
    if (o.dist > h.k || o.t + shift < 0) continue;
    o.t += shift;
    o.t_end += shift;
    for (auto& info : o.edit_infos)
      for (auto& e : info) {
        if ((e.cx != kEps && e.cx >= sigma) || (e.cy != kEps && e.cy >= sigma))
          throw CorruptSketch("placeholder symbol inside an edit");
        e.y += shift;
      }
    out.push_back(std::move(o));
  }
  return out;
}

OccurrenceReport decode(const Sketch& s, std::size_t cap) {
  const SketchHeader& h = s.header;
  const BlockGeometry geo = block_geometry(h.n, h.m, h.k);
  bool raw = false;
  for (const auto& b : s.blocks) raw = raw || b.mode == BlockMode::kRaw;
  if (raw ? s.blocks.size() != 1
          : static_cast<Pos>(s.blocks.size()) != (h.n == 0 ? 0 : geo.count))
    throw CorruptSketch("block count does not match the header");
  std::map<std::pair<Pos, Pos>, Occurrence> merged;
  for (const auto& b : s.blocks) {
    for (auto& o : decode_block(b, h, cap)) {
      auto [it, fresh] = merged.try_emplace({o.t, o.t_end}, o);
      if (!fresh && !(it->second == o)) throw CorruptSketch("blocks disagree on a shared fragment");
    }
  }
  OccurrenceReport rep;
  for (auto& [key, o] : merged) rep.occurrences.push_back(std::move(o));
  return rep;
}

}  // namespace pmwe
