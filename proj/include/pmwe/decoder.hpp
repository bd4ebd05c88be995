#pragma once

#include <vector>

#include "pmwe/bitcodec.hpp"
#include "pmwe/inference_graph.hpp"
#include "pmwe/matcher.hpp"

namespace pmwe {

struct ReconstructedBlock {
  AlignmentSet set;
  std::vector<EditInfo> infos;
  InferenceGraph graph;
};

// Window coordinates: P onto T[ell..r) of the normalized text.
ReconstructedBlock reconstruct_graph(const BlockSketch& b, const SketchHeader& h);

struct HashedStrings {
  Str p;
  Str t;  // the block window
};

// Untransmitted black component c becomes the symbol sigma + c.
HashedStrings build_hashed_strings(const ReconstructedBlock& rb, const BlockSketch& b, const SketchHeader& h);

// Occurrences in original text coordinates, filtered to the original k.
std::vector<Occurrence> decode_block(const BlockSketch& b, const SketchHeader& h, std::size_t cap = kDefaultCap);

OccurrenceReport decode(const Sketch& s, std::size_t cap = kDefaultCap);

}  // namespace pmwe
