#include "pmwe/sketch.hpp"

#include <algorithm>
#include <bit>
#include <thread>

namespace pmwe {

namespace {

Pos ceil_log2(Pos v) { return v <= 1 ? 0 : static_cast<Pos>(std::bit_width(static_cast<std::uint64_t>(v - 1))); }

// out[q] = ed(a, b[0..q)) for q in [0, |b|].
std::vector<Pos> prefix_distances(View a, View b) {
  std::vector<Pos> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<Pos>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<Pos>(i);
    for (std::size_t j = 1; j <= b.size(); ++j)
      cur[j] = std::min({prev[j - 1] + (a[i - 1] != b[j - 1] ? 1 : 0), prev[j] + 1, cur[j - 1] + 1});
    std::swap(prev, cur);
  }
  return prev;
}

Span full(const Str& s) { return {0, static_cast<Pos>(s.size())}; }

bool captured_all(const BlackIndexing& ix, Pos w, Pos K, const std::vector<Occurrence>& occ,
                  std::vector<Pos>* uncaptured) {
  bool all = true;
  Pos last_t = -1;
  bool last_ok = true;
  for (std::size_t i = 0; i < occ.size(); ++i) {
    if (occ[i].t != last_t) {
      last_t = occ[i].t;
      last_ok = captures(ix, w, last_t, K);
    }
    if (!last_ok) {
      all = false;
      if (!uncaptured) return false;
      uncaptured->push_back(static_cast<Pos>(i));
    }
  }
  return all;
}

}  // namespace

Instance normalize_instance(std::string_view p, std::string_view t, Pos k) {
  if (k < 0) throw std::invalid_argument("negative threshold");
  Instance inst;
  inst.alphabet = Alphabet::from_bytes(p, t);
  inst.p = inst.alphabet.encode(p);
  inst.t = inst.alphabet.encode(t);
  inst.k = k;
  const Pos m = static_cast<Pos>(p.size()), n = static_cast<Pos>(t.size());
  inst.geo = block_geometry(n, m, k);
  inst.t_norm.assign(static_cast<std::size_t>(inst.geo.pad), 0);
  inst.t_norm.insert(inst.t_norm.end(), inst.t.begin(), inst.t.end());
  return inst;
}

AnalyzedSet analyze_set(const Str& p, const Str& tw, AlignmentSet s, const std::vector<Occurrence>& occ) {
  AnalyzedSet a;
  a.set = std::move(s);
  a.infos = set_edit_infos(a.set, p, tw);
  a.graph = build_graph(p, tw, a.set);
  if (a.graph.bc == 0) {
    a.all_captured = true;
    return a;
  }
  const auto ordered = a.set.ordered();
  a.ix = black_indexing(a.graph, ordered, a.infos);
  a.w = build_weight_cover(ordered, a.infos, *a.ix);
  a.cover = build_period_cover(tw, *a.ix, *a.w, a.set.K);
  a.all_captured = captured_all(*a.ix, a.w->total, a.set.K, occ, &a.uncaptured);
  return a;
}

AnalyzedSet build_alignment_set(const Str& p, const Str& tw, Pos k, const std::vector<Occurrence>& occ,
                                ConstructionTrace* trace) {
  const Pos m = static_cast<Pos>(p.size());
  const Pos nw = static_cast<Pos>(tw.size());
  if (nw > 2 * m - 2 * k) throw ProtocolMisuse("window longer than 2m - 2k");
  const Occurrence* pref = nullptr;
  const Occurrence* suf = nullptr;
  for (const auto& o : occ) {
    if (o.t == 0 && (!pref || o.dist < pref->dist)) pref = &o;
    if (o.t_end == nw && (!suf || o.dist < suf->dist)) suf = &o;
  }
  if (!pref || !suf) throw ProtocolMisuse("window lacks a prefix or suffix occurrence");

  AlignmentSet s;
  s.K = k;
  s.x_pref = align(p, full(p), tw, {0, pref->t_end}).path;
  s.x_suf = align(p, full(p), tw, {suf->t, nw}).path;

  ConstructionTrace local;
  ConstructionTrace& tr = trace ? *trace : local;
  Pos prev_sp = 0;
  auto head = [&](char loop, Pos iteration) {
    AnalyzedSet a = analyze_set(p, tw, s, occ);
    HeadTrace h;
    h.loop = loop;
    h.iteration = iteration;
    h.cost = set_cost(a.set, p, tw);
    h.size = static_cast<Pos>(a.set.size());
    h.bc = a.graph.bc;
    if (a.ix) {
      h.succinct = encloses(a.set, m, nw, k) && check_succinct_enclosure(a.set, *a.ix).ok;
      h.s_p = a.ix->s_p();
      h.full = a.cover->full;
      if (!h.succinct) throw InvariantViolation("loop head without succinct enclosure");
    }
    // s_P at least doubles per added alignment unless bc = 0 or C_S is full.
    if (!tr.heads.empty() && a.ix && !h.full && h.s_p < 2 * prev_sp) tr.doubling_ok = false;
    prev_sp = h.s_p;
    tr.heads.push_back(h);
    return a;
  };
  auto pick = [&](const AnalyzedSet& a) {
    const Occurrence& o = occ[static_cast<std::size_t>(a.uncaptured.front())];
    tr.selected.emplace_back(o.t, o.t_end);
    Alignment y = align(p, full(p), tw, {o.t, o.t_end}).path;
    // An uncaptured optimal alignment never pairs two characters of one black component.
    for (std::size_t i = 1; a.ix && i < y.pts.size(); ++i) {
      const Point u = y.pts[i - 1], v = y.pts[i];
      if (v.x == u.x || v.y == u.y) continue;
      const Pos cp = a.ix->p_comp[static_cast<std::size_t>(u.x)], ct = a.ix->t_comp[static_cast<std::size_t>(u.y)];
      if (cp >= 0 && cp == ct) tr.halving_ok = false;
    }
    return y;
  };

  for (Pos l = 1; l <= 2; ++l) {
    AnalyzedSet a = head('A', l);
    if (a.done()) return a;
    s.a_list.push_back(pick(a));
  }
  const Pos cap = 2 * ceil_log2(std::max<Pos>(m, 2)) + 16;
  for (Pos l = 1;; ++l) {
    AnalyzedSet a = head('B', l);
    if (a.done()) return a;
    if (l > cap) throw InvariantViolation("Algorithm 1 does not terminate");
    const Alignment y = pick(a);
    const BlackIndexing& ix = *a.ix;
    const Pos m0 = ix.m_c(0);
    if (m0 < 3) throw InvariantViolation("too few period blocks in loop B");
    Alignment best;
    Pos best_cost = -1;
    for (Pos j = 0; j < m0 - 2; ++j) {
      Alignment part = restrict_alignment(y, {ix.pi_c(0, j), ix.pi_c(0, j + 2)});
      const Pos c = alignment_cost(part, p, tw);
      if (best_cost < 0 || c < best_cost) {
        best_cost = c;
        best = std::move(part);
      }
    }
    s.b_list.push_back(std::move(best));
  }
}

std::optional<Str> find_approximate_period(const Str& p, Pos k) {
  if (k < 1) throw ProtocolMisuse("period search needs k >= 1");
  const Pos m = static_cast<Pos>(p.size());
  const Pos qmax = m / (128 * k);
  for (Pos q = 1; q <= qmax; ++q) {
    for (Pos j = 0; j < 3 && (j + 1) * q <= m; ++j) {
      Str cand(p.begin() + j * q, p.begin() + (j + 1) * q);
      if (is_primitive(cand) && edp(p, cand) <= 2 * k) return cand;
    }
  }
  return std::nullopt;
}

std::optional<AlignmentSet> build_periodic_alignment_set(const Str& p, const Str& tw, Pos k, const Str& q) {
  const Pos m = static_cast<Pos>(p.size());
  const Pos nw = static_cast<Pos>(tw.size());
  const Pos ql = static_cast<Pos>(q.size());
  const Pos qt_max = nw + 12 * k;
  const Str qinf = periodic_extension(q, std::max(qt_max, m + k) + ql);

  const auto dp = prefix_distances(p, View(qinf).first(static_cast<std::size_t>(m + k + 1)));
  Pos qp = -1;
  for (Pos v = std::max<Pos>(0, m - k); v <= m + k; ++v)
    if (dp[static_cast<std::size_t>(v)] <= 2 * k && (qp < 0 || dp[static_cast<std::size_t>(v)] < dp[static_cast<std::size_t>(qp)]))
      qp = v;
  if (qp < 0) return std::nullopt;

  const auto dt = prefix_distances(tw, View(qinf).first(static_cast<std::size_t>(qt_max + 1)));
  Pos qt = -1;
  for (Pos v = qp; v <= qt_max; v += ql)
    if (dt[static_cast<std::size_t>(v)] <= 12 * k && (qt < 0 || dt[static_cast<std::size_t>(v)] < dt[static_cast<std::size_t>(qt)]))
      qt = v;
  if (qt < 0) return std::nullopt;

  const Alignment a = align(p, full(p), qinf, {0, qp}).path;
  const Alignment z = align(qinf, {0, qt}, tw, full(tw)).path;
  auto through = [&](Pos shift) {
    const Alignment zs = restrict_alignment(z, {shift, shift + qp});
    return compose_alignments_split(shift_alignment(a, 0, shift), zs, p, qinf, tw);
  };
  AlignmentSet s;
  s.K = 14 * k;
  s.x_pref = through(0);
  s.x_suf = through(qt - qp);
  if (qt != qp) s.a_list.push_back(through(ql));
  return s;
}

bool sends_raw(Pos m, Pos k, RawPolicy policy) {
  if (m == 0) return true;
  const Pos kk = std::min(m, std::max<Pos>(k, 1));
  if (policy == RawPolicy::kStrict) return 200 * kk > m;
  const Pos third = (m + 2) / 3;
  return third - kk < 1 || third - 1 + m > 2 * m - 2 * kk;
}

namespace {

void fill_alignments(BlockSketch& b, const AnalyzedSet& a) {
  const auto& s = a.set;
  b.x_pref = {0, 0, 0, a.infos[0]};
  b.x_suf = {0, 0, s.x_suf.y(), a.infos[1]};
  std::size_t i = 2;
  for (const auto& x : s.a_list) b.a_list.push_back({0, 0, x.y(), a.infos[i++]});
  for (const auto& x : s.b_list) b.b_list.push_back({x.x(), x.x_end() - x.x(), x.y(), a.infos[i++]});
}

void fill_cover(BlockSketch& b, const AnalyzedSet& a, const Str& tw) {
  for (const auto& run : a.cover->runs) {
    const Pos begin = a.ix->tau[static_cast<std::size_t>(run.a)];
    const Pos end = a.ix->tau[static_cast<std::size_t>(run.b)] + 1;
    b.runs.push_back({run.a, run.b, Str(tw.begin() + begin, tw.begin() + end)});
  }
}

}  // namespace

BlockSketch encode_block(const Instance& inst, const std::vector<Occurrence>& occ, Pos index,
                         const EncoderOptions& opt, BlockReport* report) {
  const BlockGeometry& g = inst.geo;
  const Pos b0 = g.begin(index);
  const Pos wend = std::min(b0 + g.window, g.n);
  BlockSketch b;
  BlockReport rep;
  std::vector<Occurrence> local;
  auto it = std::lower_bound(occ.begin(), occ.end(), b0, [](const Occurrence& o, Pos v) { return o.t < v; });
  for (; it != occ.end() && it->t <= wend; ++it)
    if (it->t_end <= wend) local.push_back(*it);
  if (local.empty()) {
    if (report) *report = rep;
    return b;
  }
  Pos ell = local.front().t, r = 0;
  for (const auto& o : local) r = std::max(r, o.t_end);
  for (auto& o : local) {
    o.t -= ell;
    o.t_end -= ell;
  }
  b.ell = rep.ell = ell;
  b.r = rep.r = r;
  rep.occurrences = static_cast<Pos>(local.size());
  const Str tw(inst.t_norm.begin() + ell, inst.t_norm.begin() + r);
  const Str& p = inst.p;
  const Pos m = g.m, k = g.k, nw = r - ell;

  OccurrenceReport wrep{local};
  rep.buckets = static_cast<Pos>(occurrence_buckets(wrep, k).size());
  std::optional<AnalyzedSet> chosen;
  bool periodic = false;
  if (rep.buckets > opt.bucket_factor * k && k < 2 * ceil_log2(m)) {
    rep.periodic_attempted = true;
    if (2 * nw > 3 * m - 56 * k) {
      rep.fallback = "window too long for the periodic set";
    } else if (auto q = find_approximate_period(p, k); !q) {
      rep.fallback = "no approximate period";
    } else if (auto s = build_periodic_alignment_set(p, tw, k, *q); !s) {
      rep.fallback = "no admissible q_T";
    } else {
      AnalyzedSet a = analyze_set(p, tw, std::move(*s), local);
      if (!a.done()) rep.fallback = "periodic set misses an occurrence";
      else if (a.ix && !(encloses(a.set, m, nw, k) && check_succinct_enclosure(a.set, *a.ix).ok))
        rep.fallback = "periodic set does not enclose";
      else {
        chosen = std::move(a);
        periodic = true;
      }
    }
  }
  if (!chosen) chosen = build_alignment_set(p, tw, k, local, &rep.trace);

  const AnalyzedSet& a = *chosen;
  fill_alignments(b, a);
  rep.set_cost = set_cost(a.set, p, tw);
  rep.set_size = static_cast<Pos>(a.set.size());
  rep.bc = a.graph.bc;
  if (a.graph.bc == 0) {
    b.mode = BlockMode::kBcZero;
  } else {
    b.mode = periodic ? BlockMode::kPeriodic : BlockMode::kGeneral;
    fill_cover(b, a, tw);
    rep.weight = a.w->total;
    rep.cover_members = static_cast<Pos>(std::count(a.cover->member.begin(), a.cover->member.end(), 1));
  }
  rep.mode = b.mode;
  if (report) *report = std::move(rep);
  return b;
}

Sketch encode(std::string_view p, std::string_view t, Pos k, const EncoderOptions& opt,
              std::vector<BlockReport>* reports) {
  const Instance inst = normalize_instance(p, t, k);
  Sketch s;
  s.header = {static_cast<Pos>(t.size()), static_cast<Pos>(p.size()), k, inst.alphabet};
  const Pos m = inst.geo.m;
  if (reports) reports->clear();
  auto raw = [&] {
    BlockSketch b;
    b.mode = BlockMode::kRaw;
    b.raw_p = inst.p;
    b.raw_t = inst.t;
    s.blocks.push_back(std::move(b));
    if (reports) {
      BlockReport r;
      r.mode = BlockMode::kRaw;
      reports->push_back(r);
    }
  };
  if (t.empty()) {
    if (k >= m) raw();
    return s;
  }
  if (sends_raw(m, k, opt.raw_policy)) {
    raw();
    return s;
  }
  const auto occ = find_occurrences(inst.p, inst.t_norm, inst.geo.k, kDefaultCap, false).occurrences;
  const Pos count = inst.geo.count;
  s.blocks.resize(static_cast<std::size_t>(count));
  std::vector<BlockReport> reps(static_cast<std::size_t>(count));
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(count)));
  auto work = [&](unsigned lane) {
    for (Pos i = lane; i < count; i += jobs)
      s.blocks[static_cast<std::size_t>(i)] = encode_block(inst, occ, i, opt, &reps[static_cast<std::size_t>(i)]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j)
      pool.emplace_back([&, j] {
        try {
          work(j);
        } catch (...) {
          errors[j] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  if (reports) *reports = std::move(reps);
  return s;
}

std::string reduce_text_alphabet(std::string_view p, std::string_view t) {
  bool used[256] = {};
  for (unsigned char c : p) used[c] = true;
  int other = -1;
  for (int c = 0; c < 256 && other < 0; ++c)
    if (!used[c]) other = c;
  if (other < 0) return std::string(t);
  std::string out(t);
  for (char& c : out)
    if (!used[static_cast<unsigned char>(c)]) c = static_cast<char>(other);
  return out;
}

}  // namespace pmwe
