// Copyright 2026 The ordhc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "core/comparison_oracle.hpp"
#include "support/brute_force.hpp"

namespace ordhc {
namespace {

std::shared_ptr<const SimilarityMatrix> Shared(SimilarityMatrix w) {
  return std::make_shared<const SimilarityMatrix>(std::move(w));
}

TEST(ActiveOracle, ComparesAndCaches) {
  SimilarityMatrix w(4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = i + 1; j < 4; ++j) w.Set(i, j, 0.1);
  }
  w.Set(0, 1, 0.9);
  w.Set(2, 3, 0.4);
  ActiveOracle oracle(Shared(w));
  EXPECT_TRUE(oracle.Compare({0, 1}, {2, 3}));
  EXPECT_EQ(oracle.query_count(), 1u);
  EXPECT_TRUE(oracle.Compare({0, 1}, {2, 3}));
  EXPECT_FALSE(oracle.Compare({2, 3}, {0, 1}));
  EXPECT_EQ(oracle.query_count(), 1u);
  EXPECT_TRUE(oracle.Compare({0, 2}, {0, 3}) || oracle.Compare({0, 3}, {0, 2}));
  EXPECT_EQ(oracle.query_count(), 2u);
}

TEST(ActiveOracle, TiesGoToSmallerPair) {
  SimilarityMatrix w(4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = i + 1; j < 4; ++j) w.Set(i, j, 0.5);
  }
  ActiveOracle oracle(Shared(w));
  EXPECT_TRUE(oracle.Compare({0, 1}, {2, 3}));
  EXPECT_FALSE(oracle.Compare({2, 3}, {0, 1}));
  EXPECT_TRUE(oracle.Compare({0, 2}, {1, 2}));
}

TEST(ActiveOracle, RejectsSelfAndOutOfRange) {
  ActiveOracle oracle(Shared(testing::RandomSimilarities(4, 1)));
  EXPECT_THROW(oracle.Compare({0, 1}, {0, 1}), Error);
  EXPECT_THROW(oracle.Compare({0, 4}, {0, 1}), Error);
  EXPECT_THROW(oracle.Compare({1, 0}, {2, 3}), Error);
  EXPECT_EQ(oracle.query_count(), 0u);
}

TEST(ActiveOracle, LargeInstanceUsesSameAnswers) {
  // Large enough that the cache may leave the dense table.
  const SimilarityMatrix w = testing::RandomSimilarities(400, 5);
  ActiveOracle oracle(Shared(w));
  Rng rng(6);
  for (int t = 0; t < 2000; ++t) {
    const auto a = static_cast<Index>(rng.Below(399));
    const auto b = static_cast<Index>(a + 1 + rng.Below(399 - a));
    const auto c = static_cast<Index>(rng.Below(399));
    const auto d = static_cast<Index>(c + 1 + rng.Below(399 - c));
    const PairId p{a, b};
    const PairId q{c, d};
    if (p == q) continue;
    EXPECT_EQ(oracle.Compare(p, q), PairBeats(w, p, q));
    EXPECT_EQ(oracle.Compare(q, p), !PairBeats(w, p, q));
  }
}

TEST(SamplePassive, FullAndEmpty) {
  const SimilarityMatrix w = testing::RandomSimilarities(4, 2);
  EXPECT_EQ(SamplePassive(w, 1.0, 0).size(), 15u);
  EXPECT_TRUE(SamplePassive(w, 0.0, 0).empty());
  EXPECT_THROW(SamplePassive(w, 1.5, 0), Error);
  EXPECT_THROW(SamplePassive(w, -0.1, 0), Error);
}

TEST(SamplePassive, FullSampleReproducesCompare) {
  SimilarityMatrix w = testing::RandomSimilarities(7, 3);
  w.Set(0, 1, 0.5);
  w.Set(2, 3, 0.5);  // one exact tie
  const QuadrupletSet qs = SamplePassive(w, 1.0, 9);
  ActiveOracle oracle(Shared(w));
  const PairIndexer pairs(7);
  for (PairRank a = 0; a < pairs.size(); ++a) {
    for (PairRank b = 0; b < pairs.size(); ++b) {
      if (a == b) continue;
      const PairId p = pairs.Unrank(a);
      const PairId q = pairs.Unrank(b);
      EXPECT_EQ(qs.Orientation(p, q), oracle.Compare(p, q) ? 1 : -1);
    }
  }
}

TEST(SamplePassive, FullSampleIsStrictTotalOrder) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SimilarityMatrix w = testing::RandomSimilarities(6, 100 + seed);
    const QuadrupletSet qs = SamplePassive(w, 1.0, seed);
    const PairIndexer pairs(6);
    const auto m = static_cast<PairRank>(pairs.size());
    // A tournament is transitive iff its win counts are 0..m-1.
    std::vector<int> wins(m, 0);
    for (PairRank a = 0; a < m; ++a) {
      for (PairRank b = 0; b < m; ++b) {
        if (a != b && qs.Orientation(a, b) == 1) ++wins[a];
      }
    }
    std::sort(wins.begin(), wins.end());
    for (PairRank a = 0; a < m; ++a) EXPECT_EQ(wins[a], static_cast<int>(a));
  }
}

TEST(SamplePassive, AdjacencyMatchesObservations) {
  const SimilarityMatrix w = testing::RandomSimilarities(9, 4);
  const QuadrupletSet qs = SamplePassive(w, 0.3, 17);
  std::size_t listed = 0;
  for (PairRank r = 0; r < qs.pairs().size(); ++r) {
    for (const auto& ref : qs.ByReference(qs.pairs().Unrank(r))) {
      EXPECT_EQ(qs.Orientation(ref.other, r), ref.sign);
      EXPECT_EQ(ref.sign, PairBeats(w, qs.pairs().Unrank(ref.other),
                                    qs.pairs().Unrank(r)) ? 1 : -1);
      ++listed;
    }
  }
  EXPECT_EQ(listed, 2 * qs.size());
  for (std::size_t k = 0; k < qs.size(); ++k) {
    const Quadruplet q = qs.quadruplet(k);
    EXPECT_TRUE(PairBeats(w, q.winner, q.loser));
    EXPECT_TRUE(qs.Contains(q));
    EXPECT_FALSE(qs.Contains({q.loser, q.winner}));
  }
}

TEST(SamplePassive, DeterministicPerSeed) {
  const SimilarityMatrix w = testing::RandomSimilarities(12, 4);
  EXPECT_EQ(SamplePassive(w, 0.2, 5).ToQuadruplets(),
            SamplePassive(w, 0.2, 5).ToQuadruplets());
  EXPECT_NE(SamplePassive(w, 0.2, 5).ToQuadruplets(),
            SamplePassive(w, 0.2, 6).ToQuadruplets());
}

TEST(SamplePassive, SizeConcentrates) {
  const SimilarityMatrix w = testing::RandomSimilarities(30, 8);
  const double trials = 94395.0;  // C(435, 2)
  const double mean = 0.1 * trials;
  const double width = 5.0 * std::sqrt(0.1 * 0.9 * trials);
  int inside = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const double size = static_cast<double>(SamplePassive(w, 0.1, seed).size());
    inside += std::abs(size - mean) <= width;
  }
  EXPECT_GE(inside, 99);
}

TEST(QuadrupletSet, DuplicatesAndMajority) {
  const std::vector<Quadruplet> quads = {
      {{0, 1}, {2, 3}}, {{0, 1}, {2, 3}}, {{2, 3}, {0, 1}},  // 2 vs 1
      {{0, 2}, {1, 3}}, {{1, 3}, {0, 2}},                    // tie: dropped
  };
  const QuadrupletSet qs = QuadrupletSet::FromQuadruplets(4, quads);
  ASSERT_EQ(qs.size(), 1u);
  EXPECT_EQ(qs.Orientation({0, 1}, {2, 3}), 1);
  EXPECT_EQ(qs.Orientation({0, 2}, {1, 3}), 0);
  EXPECT_THROW(QuadrupletSet::FromQuadruplets(4, std::vector<Quadruplet>{
                                                     {{0, 1}, {0, 1}}}),
               Error);
  EXPECT_THROW(QuadrupletSet::FromQuadruplets(3, std::vector<Quadruplet>{
                                                     {{0, 1}, {2, 3}}}),
               Error);
}

TEST(IngestTriplets, Canonicalizes) {
  const std::vector<Triplet> one = {{2, 1, 3}};
  const QuadrupletSet qs = IngestTriplets(4, one);
  ASSERT_EQ(qs.size(), 1u);
  EXPECT_EQ(qs.quadruplet(0), (Quadruplet{{1, 2}, {2, 3}}));
}

TEST(IngestTriplets, DuplicatesCollapseContradictionsDrop) {
  const std::vector<Triplet> dup = {{0, 1, 2}, {0, 1, 2}};
  EXPECT_EQ(IngestTriplets(3, dup).size(), 1u);
  const std::vector<Triplet> clash = {{0, 1, 2}, {0, 2, 1}};
  EXPECT_TRUE(IngestTriplets(3, clash).empty());
  const std::vector<Triplet> bad = {{0, 0, 2}};
  EXPECT_THROW(IngestTriplets(3, bad), Error);
}

}  // namespace
}  // namespace ordhc
