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

#include <cmath>
#include <map>
#include <memory>

#include "core/quadruplet_kernel.hpp"
#include "support/brute_force.hpp"

namespace ordhc {
namespace {

std::shared_ptr<const SimilarityMatrix> Shared(SimilarityMatrix w) {
  return std::make_shared<const SimilarityMatrix>(std::move(w));
}

void ExpectKernelEquals(const KernelMatrix& k,
                        const std::vector<std::int64_t>& expected) {
  const Index n = k.size();
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) {
        EXPECT_EQ(k(i, j), KernelMatrix::kDiagonal);
      } else {
        EXPECT_EQ(k(i, j), expected[static_cast<std::size_t>(i) * n + j])
            << "entry " << i << "," << j;
      }
    }
  }
}

TEST(PassiveKernel, EmptySampleGivesZeroKernel) {
  const QuadrupletSet qs(5);
  const KernelMatrix k = PassiveKernel(qs);
  for (Index i = 0; i < 5; ++i) {
    for (Index j = 0; j < 5; ++j) {
      if (i != j) EXPECT_EQ(k(i, j), 0);
    }
  }
}

TEST(PassiveKernel, MatchesFiveIndexSum) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Index n = 3 + static_cast<Index>(seed % 6);
    const SimilarityMatrix w = testing::RandomSimilarities(n, seed);
    for (double p : {1.0, 0.3}) {
      const QuadrupletSet qs = SamplePassive(w, p, seed + 77);
      ExpectKernelEquals(PassiveKernel(qs),
                         testing::NaivePassiveKernel(n, qs.ToQuadruplets()));
    }
  }
}

TEST(PassiveKernel, ThreadsDoNotChangeTheResult) {
  const SimilarityMatrix w = testing::RandomSimilarities(24, 5);
  const QuadrupletSet qs = SamplePassive(w, 0.2, 6);
  const KernelMatrix one = PassiveKernel(qs, 1);
  EXPECT_EQ(PassiveKernel(qs, 3), one);
  EXPECT_EQ(PassiveKernel(qs, 8), one);
}

TEST(PassiveKernel, SymmetricAndBounded) {
  const SimilarityMatrix w = testing::RandomSimilarities(12, 9);
  const QuadrupletSet qs = SamplePassive(w, 1.0, 1);
  const KernelMatrix k = PassiveKernel(qs);
  const std::int64_t bound = static_cast<std::int64_t>(Choose2(12)) * 12;
  for (Index i = 0; i < 12; ++i) {
    for (Index j = i + 1; j < 12; ++j) {
      EXPECT_EQ(k(i, j), k(j, i));
      EXPECT_LE(std::llabs(k(i, j)), bound);
    }
  }
}

// Keeps only comparisons between pairs with different similarities.
QuadrupletSet DropTies(const SimilarityMatrix& w, const QuadrupletSet& qs) {
  std::vector<Quadruplet> kept;
  for (const Quadruplet& q : qs.ToQuadruplets()) {
    if (w(q.winner) != w(q.loser)) kept.push_back(q);
  }
  return QuadrupletSet::FromQuadruplets(w.size(), kept);
}

// Noiseless planted data, every untied comparison observed: each entry is
// determined by the lca level and grows with it.
TEST(PassiveKernel, NoiselessBlockStructure) {
  for (int levels : {1, 2, 3}) {
    PlantedConfig c{.n0 = 4, .levels = levels, .mu = 0.8, .delta = 0.1,
                    .sigma = 0};
    const PlantedInstance inst = GeneratePlanted(c);
    const Index n = inst.similarities.size();
    const KernelMatrix k =
        PassiveKernel(DropTies(inst.similarities,
                               SamplePassive(inst.similarities, 1.0, 0)));
    std::map<int, std::pair<std::int64_t, std::int64_t>> range;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const int l = inst.truth.LcaLevel(i, j);
        auto [it, fresh] = range.try_emplace(l, k(i, j), k(i, j));
        it->second.first = std::min(it->second.first, k(i, j));
        it->second.second = std::max(it->second.second, k(i, j));
      }
    }
    const std::int64_t slack = 4 * (levels + 1);
    for (const auto& [l, r] : range) EXPECT_LE(r.second - r.first, slack);
    for (int l = 0; l < levels; ++l) {
      EXPECT_LT(range[l].second, range[l + 1].first) << "level " << l;
    }
  }
}

TEST(ActiveKernel, HandExample) {
  SimilarityMatrix w(3);
  w.Set(0, 1, 0.9);
  w.Set(0, 2, 0.5);
  w.Set(1, 2, 0.7);
  bool found = false;
  for (std::uint64_t seed = 0; seed < 50 && !found; ++seed) {
    ActiveOracle oracle(Shared(w));
    const ActiveKernelResult r =
        ActiveKernel(oracle, 3, {.q = 1.0, .num_references = 1, .seed = seed});
    ASSERT_EQ(r.landmarks, (std::vector<Index>{0, 1, 2}));
    if (r.references[0] != PairId{0, 1}) continue;
    found = true;
    EXPECT_EQ(r.kernel(0, 1), 1);
  }
  EXPECT_TRUE(found);
}

TEST(ActiveKernel, MatchesTripleLoop) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = seed < 10 ? 10 : 3 + static_cast<Index>(seed % 6);
    const SimilarityMatrix w = testing::RandomSimilarities(n, 50 + seed);
    ActiveOracle oracle(Shared(w));
    const Index refs = seed % 2 ? 1 : 3;
    const ActiveKernelResult r = ActiveKernel(
        oracle, n, {.q = 1.0, .num_references = refs, .seed = seed});
    ASSERT_EQ(r.references.size(), static_cast<std::size_t>(refs));
    ExpectKernelEquals(r.kernel, testing::NaiveActiveKernel(w, r.landmarks,
                                                            r.references));
    EXPECT_EQ(r.queries_used, oracle.query_count());
    const std::int64_t bound =
        static_cast<std::int64_t>(r.landmarks.size()) * refs;
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        EXPECT_EQ(r.kernel(i, j), r.kernel(j, i));
        EXPECT_LE(std::llabs(r.kernel(i, j)), bound);
      }
    }
  }
}

TEST(ActiveKernel, PartialLandmarksMatchTripleLoop) {
  const SimilarityMatrix w = testing::RandomSimilarities(20, 4);
  ActiveOracle oracle(Shared(w));
  const ActiveKernelResult r =
      ActiveKernel(oracle, 20, {.q = 0.3, .num_references = 7, .seed = 2});
  ExpectKernelEquals(r.kernel,
                     testing::NaiveActiveKernel(w, r.landmarks, r.references));
}

TEST(ActiveKernel, ReferencesAreDistinct) {
  const SimilarityMatrix w = testing::RandomSimilarities(6, 4);
  ActiveOracle oracle(Shared(w));
  const ActiveKernelResult r =
      ActiveKernel(oracle, 6, {.q = 1.0, .num_references = 15, .seed = 2});
  std::set<PairId> seen(r.references.begin(), r.references.end());
  EXPECT_EQ(seen.size(), 15u);
  ActiveOracle again(Shared(w));
  EXPECT_THROW(ActiveKernel(again, 6, {.q = 1.0, .num_references = 16}), Error);
}

TEST(ActiveKernel, Errors) {
  const SimilarityMatrix w = testing::RandomSimilarities(5, 4);
  ActiveOracle oracle(Shared(w));
  EXPECT_THROW(ActiveKernel(oracle, 5, {.q = 1e-300, .num_references = 1}),
               Error);
  EXPECT_THROW(ActiveKernel(oracle, 5, {.q = 0.0}), Error);
  EXPECT_THROW(ActiveKernel(oracle, 5, {.q = 1.0, .num_references = 0}), Error);
  ActiveOracle small(Shared(testing::RandomSimilarities(2, 4)));
  EXPECT_THROW(ActiveKernel(small, 2, {.q = 1.0}), Error);
}

TEST(ActiveKernel, BudgetSetsReferenceCount) {
  const SimilarityMatrix w = testing::RandomSimilarities(40, 4);
  ActiveOracle oracle(Shared(w));
  const std::uint64_t budget = 5000;
  const ActiveKernelResult r = ActiveKernel(
      oracle, 40, {.q = 0.1, .seed = 3, .query_budget = budget});
  const std::uint64_t s = r.landmarks.size();
  const double per_ref = double(s * 39 - Choose2(s));
  EXPECT_EQ(r.references.size(),
            static_cast<std::size_t>(std::llround(budget / per_ref)));
  // Every landmark-touching pair except the reference itself is queried, and
  // a query repeats only when the same two pairs meet again with roles swapped.
  const double refs = double(r.references.size());
  EXPECT_LE(r.queries_used, refs * per_ref);
  EXPECT_GE(r.queries_used + refs + Choose2(r.references.size()), refs * per_ref);
}

TEST(ActiveKernel, QueriesPerReferenceWithinBound) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Index n = 64;
    const double q = std::log(double(n)) / n;
    ActiveOracle oracle(Shared(testing::RandomSimilarities(n, seed)));
    const ActiveKernelResult r =
        ActiveKernel(oracle, n, {.q = q, .num_references = 1, .seed = seed});
    if (r.landmarks.size() > 2 * q * n) continue;
    EXPECT_LE(double(r.queries_used), 2 * q * n * n);
    EXPECT_LE(r.queries_used, std::uint64_t(n) * r.landmarks.size());
  }
}

TEST(KernelAverageLinkage, TwoBlocks) {
  KernelMatrix k(4);
  for (Index i = 0; i < 4; ++i) {
    for (Index j = i + 1; j < 4; ++j) k.Set(i, j, (i < 2) == (j < 2) ? 10 : -10);
  }
  const Dendrogram d = AverageLinkageOnKernel(k);
  EXPECT_EQ(d.merges()[0], (MergeStep{0, 1, 4}));
  EXPECT_EQ(d.merges()[1], (MergeStep{2, 3, 5}));
  EXPECT_EQ(d.merges()[2], (MergeStep{4, 5, 6}));
}

TEST(KernelAverageLinkage, TwoItems) {
  KernelMatrix k(2);
  k.Set(0, 1, -3);
  EXPECT_EQ(AverageLinkageOnKernel(k).merges().size(), 1u);
  EXPECT_THROW(AverageLinkageOnKernel(KernelMatrix(1)), Error);
}

TEST(KernelAverageLinkage, MatchesBruteForce) {
  Rng rng(12);
  for (int t = 0; t < 40; ++t) {
    const Index n = 2 + static_cast<Index>(rng.Below(6));
    KernelMatrix k(n);
    std::vector<std::int64_t> flat(n * n, 0);
    for (Index i = 0; i < n; ++i) {
      for (Index j = i + 1; j < n; ++j) {
        const auto v = static_cast<std::int64_t>(rng.Below(t % 2 ? 5 : 1000)) - 2;
        k.Set(i, j, v);
        flat[i * n + j] = flat[j * n + i] = v;
      }
    }
    EXPECT_EQ(AverageLinkageOnKernel(k), testing::BruteAverageLinkage(n, flat));
  }
}

}  // namespace
}  // namespace ordhc
