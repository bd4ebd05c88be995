#pragma once

#include <vector>

#include "pmwe/inference_graph.hpp"

namespace pmwe {

struct WeightCover {
  std::vector<Pos> weights;  // indexed by black component
  Pos total = 0;

  Pos bc() const { return static_cast<Pos>(weights.size()); }
  // w(-1) is w(bc-1).
  Pos at(Pos c) const { return weights[static_cast<std::size_t>(c < 0 ? c + bc() : c)]; }
};

// Charges every edit of S to the nearest black component to its left.
WeightCover build_weight_cover(const std::vector<const Alignment*>& alignments,
                               const std::vector<EditInfo>& infos, const BlackIndexing& ix);

// Checks the five covering conditions by direct DP. Meant for tests.
bool verify_cover(const WeightCover& w, const Str& p, const Str& t, const BlackIndexing& ix);

}  // namespace pmwe
