#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "pmwe/decoder.hpp"
#include "pmwe/lower_bound.hpp"

using namespace pmwe;

namespace {

OccurrenceReport truth(const std::string& p, const std::string& t, Pos k) {
  Alphabet ab = Alphabet::from_bytes(p, t);
  return find_occurrences(ab.encode(p), ab.encode(t), k);
}

OccurrenceReport through_wire(const std::string& p, const std::string& t, Pos k, const EncoderOptions& opt = {}) {
  return decode(deserialize_sketch(serialize_sketch(encode(p, t, k, opt))));
}

}  // namespace

TEST(Decode, FigureStrings) {
  const std::string p = "ababbabaabb", t = "abbbabaabbbababbb";
  EXPECT_EQ(through_wire(p, t, 3), truth(p, t, 3));
}

TEST(Decode, EmptyBlocksOnly) {
  const std::string p(48, 'a');
  const std::string t(300, 'b');
  Sketch s = encode(p, t, 2);
  ASSERT_FALSE(s.blocks.empty());
  for (auto& b : s.blocks) EXPECT_EQ(b.mode, BlockMode::kEmpty);
  EXPECT_TRUE(decode(s).occurrences.empty());
}

TEST(Decode, RawBlock) {
  EncoderOptions opt;
  opt.raw_policy = RawPolicy::kStrict;
  const std::string p = "hello", t = "yellow jello hello";
  EXPECT_EQ(through_wire(p, t, 2, opt), truth(p, t, 2));
  EXPECT_EQ(through_wire("abc", "", 3), truth("abc", "", 3));
  EXPECT_EQ(through_wire("abc", "", 1), truth("abc", "", 1));
  // text shorter than the pattern
  EXPECT_EQ(through_wire("abcdefghij", "bcd", 9), truth("abcdefghij", "bcd", 9));
}

TEST(Decode, BlockWithoutBlackComponents) {
  int seen = 0;
  for (std::uint64_t seed = 0; seed < 200 && seen < 3; ++seed) {
    AdversarialInstance a = generate_adversarial(32 + static_cast<Pos>(seed % 3) * 16, 400, 1 + static_cast<Pos>(seed % 3), 2 + static_cast<Pos>(seed % 3), seed);
    std::vector<BlockReport> reps;
    Sketch s = encode(a.p_bytes(), a.t_bytes(), a.k, {}, &reps);
    bool zero = false;
    for (auto& b : s.blocks) zero = zero || b.mode == BlockMode::kBcZero;
    if (!zero) continue;
    ++seen;
    EXPECT_EQ(decode(deserialize_sketch(serialize_sketch(s))), truth(a.p_bytes(), a.t_bytes(), a.k));
  }
  EXPECT_GT(seen, 0);
}

TEST(Decode, MatchesOracleOnRandomInstances) {
  std::mt19937_64 rng(23);
  for (int it = 0; it < 60; ++it) {
    const int sigma = std::vector<int>{2, 4, 26}[it % 3];
    const Pos m = 16 + static_cast<Pos>(rng() % 80);
    const Pos n = m + static_cast<Pos>(rng() % (3 * m));
    const Pos k = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(std::max<Pos>(1, m / 8)));
    auto [p, t] = it % 2 ? fixture::planted(rng, m, n, k, sigma, it % 4 == 1)
                         : std::pair{fixture::random_text(rng, m, sigma), fixture::random_text(rng, n, sigma)};
    ASSERT_EQ(through_wire(p, t, k), truth(p, t, k)) << "m=" << m << " n=" << n << " k=" << k;
  }
}

TEST(Decode, PeriodicBranchWhenForced) {
  std::mt19937_64 rng(29);
  EncoderOptions opt;
  opt.bucket_factor = 0;
  int periodic = 0;
  for (int it = 0; it < 6; ++it) {
    const Pos k = 1;
    const std::string q = fixture::random_text(rng, 2 + static_cast<Pos>(it % 2), 3);
    std::string p;
    while (static_cast<Pos>(p.size()) < 128 * k * static_cast<Pos>(q.size())) p += q;
    p[rng() % p.size()] = 'a' + static_cast<char>(rng() % 3);
    std::string t;
    while (t.size() < 3 * p.size()) t += q;
    for (int e = 0; e < 3; ++e) t[rng() % t.size()] = 'a' + static_cast<char>(rng() % 3);
    std::vector<BlockReport> reps;
    Sketch s = encode(p, t, k, opt, &reps);
    for (auto& r : reps) periodic += r.mode == BlockMode::kPeriodic;
    EXPECT_EQ(decode(deserialize_sketch(serialize_sketch(s))), truth(p, t, k));
  }
  EXPECT_GT(periodic, 0);
}

TEST(Decode, RejectsInconsistentSketches) {
  std::mt19937_64 rng(31);
  auto [p, t] = fixture::planted(rng, 60, 300, 3, 4, false);
  Sketch s = encode(p, t, 3);
  Sketch fewer = s;
  fewer.blocks.pop_back();
  EXPECT_THROW(decode(fewer), CorruptSketch);

  std::size_t g = 0;
  while (g < s.blocks.size() && s.blocks[g].mode != BlockMode::kGeneral) ++g;
  ASSERT_LT(g, s.blocks.size());
  Sketch moved = s;
  moved.blocks[g].r += 1;
  EXPECT_THROW(decode(moved), CorruptSketch);
  Sketch relabel = s;
  relabel.blocks[g].mode = BlockMode::kBcZero;
  EXPECT_THROW(decode(relabel), CorruptSketch);
  Sketch run = s;
  run.blocks[g].runs.push_back({1 << 20, 1 << 20, {}});
  EXPECT_THROW(decode(run), CorruptSketch);
}

TEST(Decode, HashedStringsAgreeOnCapturedOccurrences) {
  std::mt19937_64 rng(37);
  auto [p, t] = fixture::planted(rng, 72, 400, 3, 3, false);
  Sketch s = encode(p, t, 3);
  Instance inst = normalize_instance(p, t, 3);
  for (const auto& b : s.blocks) {
    if (b.mode != BlockMode::kGeneral) continue;
    ReconstructedBlock rb = reconstruct_graph(b, s.header);
    HashedStrings hs = build_hashed_strings(rb, b, s.header);
    const Symbol sigma = static_cast<Symbol>(s.header.alphabet.size());
    for (Pos y = 0; y < static_cast<Pos>(hs.t.size()); ++y) {
      const Symbol c = hs.t[static_cast<std::size_t>(y)];
      if (c < sigma) ASSERT_EQ(c, inst.t_norm[static_cast<std::size_t>(b.ell + y)]);
    }
    for (Pos x = 0; x < static_cast<Pos>(hs.p.size()); ++x) {
      const Symbol c = hs.p[static_cast<std::size_t>(x)];
      if (c < sigma) ASSERT_EQ(c, inst.p[static_cast<std::size_t>(x)]);
    }
  }
}
