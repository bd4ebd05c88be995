#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "pmwe/lower_bound.hpp"

using namespace pmwe;

TEST(EntropyBound, SmallCases) {
  // sum_{i<=1} C(4,i) = 5 per block
  EXPECT_NEAR(entropy_bound_bits(4, 10, 1, 2), 2 * std::log2(5.0), 1e-12);
  EXPECT_NEAR(entropy_bound_bits(4, 16, 1, 2), 4 * std::log2(5.0), 1e-12);
  // k = m, binary: every block is free
  EXPECT_NEAR(entropy_bound_bits(8, 40, 8, 2), 5 * 8.0, 1e-9);
  EXPECT_NEAR(entropy_bound_bits(3, 3, 3, 4), 3 * 2.0, 1e-9);
  // 2^200 overflows a double sum only if done carelessly
  EXPECT_NEAR(entropy_bound_bits(200, 200, 200, 2), 200.0, 1e-9);
  EXPECT_NEAR(entropy_bound_bits(1000, 1000, 1000, 256), 8000.0, 1e-6);
}

TEST(Adversarial, LayoutAndSeedStability) {
  AdversarialInstance a = generate_adversarial(16, 70, 3, 4, 99);
  AdversarialInstance b = generate_adversarial(16, 70, 3, 4, 99);
  EXPECT_EQ(a.t, b.t);
  EXPECT_NE(a.t, generate_adversarial(16, 70, 3, 4, 100).t);
  EXPECT_EQ(a.p, Str(16, 0));
  ASSERT_EQ(a.t.size(), 70u);
  for (Pos q = 0; q < 4; ++q) {
    Pos nz = 0;
    for (Pos i = 0; i < 16; ++i) nz += a.t[static_cast<std::size_t>(q * 16 + i)] != 0;
    EXPECT_LE(nz, 3);
  }
  for (std::size_t i = 64; i < 70; ++i) EXPECT_EQ(a.t[i], 0u);
  for (Symbol c : a.t) EXPECT_LT(c, 4u);
  EXPECT_EQ(a.t_bytes().size(), 70u);
  EXPECT_THROW(generate_adversarial(4, 3, 1, 2, 0), std::invalid_argument);
  EXPECT_THROW(generate_adversarial(4, 8, 1, 1, 0), std::invalid_argument);
}

TEST(Grid, Parse) {
  auto g = parse_grid("64,512,2,4;32,64,1,2");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].m, 64);
  EXPECT_EQ(g[0].n, 512);
  EXPECT_EQ(g[1].sigma, 2);
  EXPECT_THROW(parse_grid("1,2,3"), std::invalid_argument);
}

TEST(Experiment, RowsDecodeAndBeatTheBound) {
  auto rows = run_experiment(parse_grid("48,480,2,4;64,512,1,2"), 2, 5);
  ASSERT_EQ(rows.size(), 4u);
  for (auto& r : rows) {
    EXPECT_TRUE(r.decode_ok);
    EXPECT_GE(static_cast<double>(r.bits_measured), r.bits_bound - static_cast<double>(r.header_bits));
    EXPECT_NEAR(r.ratio, static_cast<double>(r.bits_measured) / r.bits_bound, 1e-9);
  }
  std::ostringstream os;
  write_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "m,n,k,sigma,seed,bits_measured,bits_bound,ratio,decode_ok");
}
