#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "pmwe/sketch.hpp"

namespace pmwe {

// P = 0^m, T = S_0 ... S_{p-1} 0^{n - pm}; each S_q has at most k non-zero symbols.
struct AdversarialInstance {
  Pos m = 0;
  Pos n = 0;
  Pos k = 0;
  Pos sigma = 0;
  std::uint64_t seed = 0;
  Str p;
  Str t;

  // Byte strings with symbol c written as byte c.
  std::string p_bytes() const;
  std::string t_bytes() const;
};

AdversarialInstance generate_adversarial(Pos m, Pos n, Pos k, Pos sigma, std::uint64_t seed);

// floor(n/m) * log2(sum_{i<=k} C(m,i) (sigma-1)^i), exact big-integer sum.
double entropy_bound_bits(Pos m, Pos n, Pos k, Pos sigma);

struct GridCell {
  Pos m = 0;
  Pos n = 0;
  Pos k = 0;
  Pos sigma = 0;
};

std::vector<GridCell> parse_grid(const std::string& spec);

struct ExperimentRow {
  GridCell cell;
  std::uint64_t seed = 0;
  std::uint64_t bits_measured = 0;
  std::uint64_t header_bits = 0;
  double bits_bound = 0;
  double ratio = 0;
  bool decode_ok = false;
};

std::vector<ExperimentRow> run_experiment(const std::vector<GridCell>& grid, int trials, std::uint64_t seed,
                                          const EncoderOptions& opt = {});
void write_csv(std::ostream& os, const std::vector<ExperimentRow>& rows);

}  // namespace pmwe
