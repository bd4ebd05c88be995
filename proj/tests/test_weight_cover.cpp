#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmwe/weight_cover.hpp"

using namespace pmwe;
using oracle::S;

namespace {

struct Built {
  Alignment a;
  std::vector<EditInfo> infos;
  InferenceGraph g;
  BlackIndexing ix;
};

Built single(const Str& p, const Str& t) {
  Built b;
  b.a = align(p, {0, static_cast<Pos>(p.size())}, t, {0, static_cast<Pos>(t.size())}).path;
  b.infos = {edit_info(b.a, p, t)};
  b.g = build_graph(static_cast<Pos>(p.size()), static_cast<Pos>(t.size()), {&b.a}, b.infos);
  b.ix = black_indexing(b.g, {&b.a}, b.infos);
  return b;
}

}  // namespace

TEST(WeightCover, ZeroCostGivesZeroWeights) {
  Str p = S("abcab");
  Built b = single(p, p);
  WeightCover w = build_weight_cover({&b.a}, b.infos, b.ix);
  EXPECT_EQ(w.total, 0);
  EXPECT_EQ(w.weights, std::vector<Pos>(5, 0));
  EXPECT_TRUE(verify_cover(w, p, p, b.ix));
}

TEST(WeightCover, LeadingDeletionChargesLastComponent) {
  Str p = S("cabab"), t = S("abab");
  Built b = single(p, t);
  ASSERT_EQ(b.ix.bc, 4);
  WeightCover w = build_weight_cover({&b.a}, b.infos, b.ix);
  EXPECT_EQ(w.weights, (std::vector<Pos>{0, 0, 0, 1}));
  EXPECT_EQ(w.at(-1), 1);
  EXPECT_TRUE(verify_cover(w, p, t, b.ix));
  w.weights[3] = 0;
  w.total = 0;
  EXPECT_FALSE(verify_cover(w, p, t, b.ix));
}

TEST(WeightCover, InsertionChargedThroughText) {
  Str p = S("abab"), t = S("abcab");
  Built b = single(p, t);
  WeightCover w = build_weight_cover({&b.a}, b.infos, b.ix);
  EXPECT_EQ(w.total, 1);
  // T[2] = c sits after the black T[1], the component of P[1].
  EXPECT_EQ(w.weights[static_cast<std::size_t>(b.ix.t_comp[1])], 1);
  EXPECT_TRUE(verify_cover(w, p, t, b.ix));
}

TEST(WeightCover, AlgorithmOutputCoversConstructedSets) {
  std::mt19937_64 rng(77);
  int checked = 0, lowered = 0;
  for (int it = 0; it < 200 && checked < 200; ++it) {
    const Pos m = 24 + static_cast<Pos>(rng() % 48);
    auto [ps, ts] = fixture::planted(rng, m, 3 * m, 1 + static_cast<Pos>(rng() % 4), 2 + static_cast<int>(rng() % 3), rng() % 2);
    for (auto& win : fixture::windows_of(ps, ts, std::max<Pos>(1, m / 12))) {
      AnalyzedSet a = build_alignment_set(win.p, win.tw, win.k, win.occ);
      if (!a.ix) continue;
      ++checked;
      const WeightCover& w = *a.w;
      Pos sum = 0;
      for (Pos v : w.weights) sum += v;
      ASSERT_EQ(sum, w.total);
      ASSERT_LE(w.total, set_cost(a.set, win.p, win.tw));
      ASSERT_TRUE(verify_cover(w, win.p, win.tw, *a.ix));
      // Same inputs, same weights.
      WeightCover again = build_weight_cover(a.set.ordered(), a.infos, *a.ix);
      ASSERT_EQ(again.weights, w.weights);
      // All weights zero cannot cover a set whose black gaps differ.
      WeightCover zero = w;
      std::fill(zero.weights.begin(), zero.weights.end(), 0);
      zero.total = 0;
      if (!verify_cover(zero, win.p, win.tw, *a.ix)) ++lowered;
    }
  }
  EXPECT_GE(checked, 50);
  EXPECT_GT(lowered, 0);
}
