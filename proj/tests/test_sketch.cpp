#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmwe/decoder.hpp"
#include "pmwe/sketch.hpp"

using namespace pmwe;
using oracle::S;

TEST(Normalize, PadsShortTextAndClampsK) {
  Instance a = normalize_instance("abcd", "ab", 0);
  EXPECT_EQ(a.geo.pad, 2);
  EXPECT_EQ(a.t_norm, (Str{0, 0, 0, 1}));
  EXPECT_EQ(a.geo.k, 1);
  EXPECT_EQ(a.k, 0);
  Instance b = normalize_instance("ab", "abab", 9);
  EXPECT_EQ(b.geo.pad, 0);
  EXPECT_EQ(b.geo.k, 2);
  EXPECT_EQ(b.t_norm, b.t);
  EXPECT_THROW(normalize_instance("a", "a", -1), std::invalid_argument);
}

TEST(RawPolicy, Thresholds) {
  EXPECT_TRUE(sends_raw(100, 1, RawPolicy::kStrict));
  EXPECT_FALSE(sends_raw(400, 1, RawPolicy::kStrict));
  EXPECT_FALSE(sends_raw(100, 1, RawPolicy::kStructural));
  EXPECT_TRUE(sends_raw(100, 40, RawPolicy::kStructural));
  EXPECT_TRUE(sends_raw(0, 0, RawPolicy::kStructural));
  // The window ceil(m/3) - 1 + m must fit in 2m - 2k.
  for (Pos m = 1; m < 200; ++m)
    for (Pos k = 1; k <= m; ++k) {
      const Pos third = (m + 2) / 3;
      const bool fits = third - k >= 1 && third - 1 + m <= 2 * m - 2 * k;
      ASSERT_EQ(sends_raw(m, k, RawPolicy::kStructural), !fits);
    }
}

TEST(Encode, StrictPolicySendsRawBlock) {
  EncoderOptions opt;
  opt.raw_policy = RawPolicy::kStrict;
  Sketch s = encode("abcab", "xxabcabyy", 1, opt);
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_EQ(s.blocks[0].mode, BlockMode::kRaw);
  EXPECT_EQ(s.header.alphabet.table.size(), 5u);
}

TEST(Encode, EmptyText) {
  EXPECT_TRUE(encode("abc", "", 1).blocks.empty());
  Sketch s = encode("abc", "", 3);
  ASSERT_EQ(s.blocks.size(), 1u);
  EXPECT_EQ(s.blocks[0].mode, BlockMode::kRaw);
}

TEST(Encode, DeterministicAndThreadIndependent) {
  std::mt19937_64 rng(12);
  for (int it = 0; it < 10; ++it) {
    const Pos m = 40 + static_cast<Pos>(rng() % 60);
    auto [p, t] = fixture::planted(rng, m, 5 * m, 3, 3, it % 2);
    const auto a = serialize_sketch(encode(p, t, 3));
    EXPECT_EQ(serialize_sketch(encode(p, t, 3)), a);
    EncoderOptions opt;
    opt.jobs = 4;
    EXPECT_EQ(serialize_sketch(encode(p, t, 3, opt)), a);
  }
}

TEST(Encode, ReportsMatchBlocks) {
  std::mt19937_64 rng(13);
  auto [p, t] = fixture::planted(rng, 64, 400, 4, 4, false);
  std::vector<BlockReport> reps;
  Sketch s = encode(p, t, 4, {}, &reps);
  ASSERT_EQ(reps.size(), s.blocks.size());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    EXPECT_EQ(reps[i].mode, s.blocks[i].mode);
    if (s.blocks[i].mode == BlockMode::kGeneral) {
      EXPECT_LE(reps[i].set_cost, 6 * 4);
      EXPECT_GT(reps[i].bc, 0);
    }
  }
}

TEST(ReduceAlphabet, CollapsesForeignBytes) {
  EXPECT_EQ(reduce_text_alphabet("ab", "abxyzb"), std::string("ab") + '\0' + '\0' + '\0' + "b");
  EXPECT_EQ(reduce_text_alphabet("\x01" "b", "zz"), std::string(2, '\0'));
}

TEST(ApproximatePeriod, FindsPlantedPeriod) {
  Str q = S("abc");
  Str p = oracle::q_power(q, 400);
  p[100] = 'c';
  auto found = find_approximate_period(p, 1);
  ASSERT_TRUE(found.has_value());
  EXPECT_EQ(found->size(), 3u);
  EXPECT_LE(edp(p, *found), 2);
  std::mt19937_64 rng(1);
  EXPECT_FALSE(find_approximate_period(oracle::random_str(rng, 400, 4), 1).has_value());
  EXPECT_THROW(find_approximate_period(p, 0), ProtocolMisuse);
}

TEST(PeriodicSet, AtMostThreeCheapAlignments) {
  std::mt19937_64 rng(3);
  int built = 0;
  for (int it = 0; it < 30; ++it) {
    const Pos k = 1 + static_cast<Pos>(rng() % 2);
    Str q = oracle::random_str(rng, 2 + static_cast<Pos>(rng() % 3), 3);
    if (!is_primitive(q)) continue;
    const Pos m = 128 * k * static_cast<Pos>(q.size());
    Str p = oracle::q_power(q, m);
    for (Pos e = 0; e < 2 * k; ++e) p[rng() % p.size()] = static_cast<Symbol>(rng() % 3);
    const Pos shift = static_cast<Pos>(rng() % q.size()) + static_cast<Pos>(q.size()) * static_cast<Pos>(rng() % 4);
    Str tw = oracle::q_power(q, shift + m);
    for (Pos e = 0; e < 2 * k; ++e) tw[rng() % tw.size()] = static_cast<Symbol>(rng() % 3);
    auto qf = find_approximate_period(p, k);
    ASSERT_TRUE(qf.has_value());
    auto s = build_periodic_alignment_set(p, tw, k, *qf);
    if (!s) continue;
    ++built;
    EXPECT_LE(s->size(), 3u);
    EXPECT_EQ(s->K, 14 * k);
    for (const Alignment* a : s->ordered()) {
      EXPECT_LE(alignment_cost(*a, p, tw), 14 * k);
      EXPECT_EQ(a->x(), 0);
      EXPECT_EQ(a->x_end(), m);
    }
    EXPECT_EQ(s->x_pref.y(), 0);
    EXPECT_EQ(s->x_suf.y_end(), static_cast<Pos>(tw.size()));
  }
  EXPECT_GT(built, 10);
}

TEST(AlgorithmOne, TraceInvariants) {
  std::mt19937_64 rng(19);
  int general = 0;
  for (int it = 0; it < 40; ++it) {
    const Pos m = 32 + static_cast<Pos>(rng() % 64);
    const Pos k = 1 + static_cast<Pos>(rng() % std::max<Pos>(1, m / 16));
    auto [p, t] = fixture::planted(rng, m, 4 * m, k, 2 + static_cast<int>(rng() % 3), rng() % 2);
    for (auto& w : fixture::windows_of(p, t, k)) {
      ConstructionTrace tr;
      AnalyzedSet a = build_alignment_set(w.p, w.tw, w.k, w.occ, &tr);
      ++general;
      EXPECT_TRUE(a.done());
      EXPECT_LE(set_cost(a.set, w.p, w.tw), 6 * w.k);
      EXPECT_TRUE(tr.halving_ok);
      for (const auto& h : tr.heads) EXPECT_TRUE(h.succinct);
      for (std::size_t i = 0; i < tr.selected.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) EXPECT_GT(std::abs(tr.selected[i].first - tr.selected[j].first), w.k);
    }
  }
  EXPECT_GT(general, 20);
}
