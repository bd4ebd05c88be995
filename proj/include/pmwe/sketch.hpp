#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmwe/bitcodec.hpp"
#include "pmwe/inference_graph.hpp"
#include "pmwe/matcher.hpp"
#include "pmwe/period_cover.hpp"
#include "pmwe/weight_cover.hpp"

namespace pmwe {

// kStructural sends RAW only when blocks cannot be formed; kStrict sends RAW
// whenever 200k > m.
enum class RawPolicy { kStructural, kStrict };

struct EncoderOptions {
  RawPolicy raw_policy = RawPolicy::kStructural;
  Pos bucket_factor = 963068;
  unsigned jobs = 1;
};

// Normalized instance: T padded to length >= m, k clamped to [1, m].
struct Instance {
  Alphabet alphabet;
  Str p;
  Str t;  // original text
  Pos k = 0;  // original threshold
  Str t_norm;
  BlockGeometry geo;
};

Instance normalize_instance(std::string_view p, std::string_view t, Pos k);

// State derived from S at an Algorithm-1 loop head.
struct AnalyzedSet {
  AlignmentSet set;
  std::vector<EditInfo> infos;
  InferenceGraph graph;
  std::optional<BlackIndexing> ix;
  std::optional<WeightCover> w;
  std::optional<PeriodCover> cover;
  bool all_captured = false;
  std::vector<Pos> uncaptured;  // indices into the occurrence list

  bool done() const { return all_captured || (cover && cover->full); }
};

AnalyzedSet analyze_set(const Str& p, const Str& tw, AlignmentSet s, const std::vector<Occurrence>& occ);

struct HeadTrace {
  char loop = 'A';
  Pos iteration = 1;
  bool succinct = true;
  Pos cost = 0;
  Pos size = 0;
  Pos bc = 0;
  bool full = false;
  Pos s_p = 0;
};

struct ConstructionTrace {
  std::vector<HeadTrace> heads;
  std::vector<std::pair<Pos, Pos>> selected;  // uncaptured occurrences picked, (t, t')
  bool doubling_ok = true;  // s_P at least doubles between heads unless C_S is full
  bool halving_ok = true;   // picked alignments avoid pairs inside one black component
};

// Algorithm 1 on a trimmed window. `occ` lists every k-error occurrence of P
// in tw (edit informations not needed).
AnalyzedSet build_alignment_set(const Str& p, const Str& tw, Pos k, const std::vector<Occurrence>& occ,
                                ConstructionTrace* trace = nullptr);

std::optional<Str> find_approximate_period(const Str& p, Pos k);

// Three alignments of cost <= 14k built through Q^inf; nullopt when no
// admissible q_P or q_T exists.
std::optional<AlignmentSet> build_periodic_alignment_set(const Str& p, const Str& tw, Pos k, const Str& q);

struct BlockReport {
  BlockMode mode = BlockMode::kEmpty;
  Pos ell = 0;
  Pos r = 0;
  Pos occurrences = 0;
  Pos buckets = 0;
  bool periodic_attempted = false;
  std::string fallback;  // why PERIODIC was abandoned
  ConstructionTrace trace;
  Pos set_cost = 0;
  Pos set_size = 0;
  Pos bc = 0;
  Pos weight = 0;
  Pos cover_members = 0;
};

BlockSketch encode_block(const Instance& inst, const std::vector<Occurrence>& occ, Pos index,
                         const EncoderOptions& opt, BlockReport* report = nullptr);

bool sends_raw(Pos m, Pos k, RawPolicy policy);

Sketch encode(std::string_view p, std::string_view t, Pos k, const EncoderOptions& opt = {},
              std::vector<BlockReport>* reports = nullptr);

// Restricts T to the symbols of P plus one shared symbol for everything else.
std::string reduce_text_alphabet(std::string_view p, std::string_view t);

}  // namespace pmwe
