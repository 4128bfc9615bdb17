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

#include "core/quadruplet_kernel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <thread>
#include <unordered_set>

#include "core/random.hpp"

namespace ordhc {
namespace {

std::vector<Index> SampleLandmarks(Rng& rng, Index n, double q) {
  std::vector<Index> landmarks;
  for (Index k = 0; k < n; ++k) {
    if (rng.Bernoulli(q)) landmarks.push_back(k);
  }
  return landmarks;
}

// `count` distinct ranks out of [0, total), returned ascending.
std::vector<PairRank> SampleDistinct(Rng& rng, std::uint64_t total,
                                     std::uint64_t count) {
  std::vector<PairRank> out;
  if (count * 2 >= total) {
    std::vector<PairRank> all(total);
    std::iota(all.begin(), all.end(), PairRank{0});
    for (std::uint64_t k = 0; k < count; ++k) {
      std::swap(all[k], all[k + rng.Below(total - k)]);
    }
    out.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count));
  } else {
    // Floyd's algorithm.
    std::unordered_set<PairRank> chosen;
    for (std::uint64_t j = total - count; j < total; ++j) {
      const auto t = static_cast<PairRank>(rng.Below(j + 1));
      if (!chosen.insert(t).second) chosen.insert(static_cast<PairRank>(j));
    }
    out.assign(chosen.begin(), chosen.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void AccumulateReferences(const QuadrupletSet& qs, PairRank begin,
                          PairRank end, std::vector<std::int64_t>& upper) {
  const Index n = qs.n_items();
  const PairIndexer& pairs = qs.pairs();
  std::vector<std::uint32_t> count(n, 0);
  std::vector<std::uint32_t> start(n + 1, 0);
  std::vector<Index> item;
  std::vector<std::int8_t> sign;
  for (PairRank ref = begin; ref < end; ++ref) {
    const std::size_t degree = qs.reference_degree(ref);
    if (degree < 2) continue;
    std::fill(count.begin(), count.end(), 0u);
    for (std::size_t e = 0; e < degree; ++e) {
      const PairId p = pairs.Unrank(qs.reference_entry(ref, e).other);
      ++count[p.a];
      ++count[p.b];
    }
    start[0] = 0;
    for (Index r = 0; r < n; ++r) start[r + 1] = start[r] + count[r];
    item.resize(start[n]);
    sign.resize(start[n]);
    std::fill(count.begin(), count.end(), 0u);
    for (std::size_t e = 0; e < degree; ++e) {
      const QuadrupletSet::Reference entry = qs.reference_entry(ref, e);
      const PairId p = pairs.Unrank(entry.other);
      // The pair (p.a, p.b) is (i, r) with r = p.b, and also with r = p.a.
      std::uint32_t slot = start[p.b] + count[p.b]++;
      item[slot] = p.a;
      sign[slot] = static_cast<std::int8_t>(entry.sign);
      slot = start[p.a] + count[p.a]++;
      item[slot] = p.b;
      sign[slot] = static_cast<std::int8_t>(entry.sign);
    }
    for (Index r = 0; r < n; ++r) {
      const std::uint32_t lo = start[r];
      const std::uint32_t hi = start[r + 1];
      for (std::uint32_t x = lo; x < hi; ++x) {
        const Index i = item[x];
        const int si = sign[x];
        for (std::uint32_t y = x + 1; y < hi; ++y) {
          const Index j = item[y];
          const std::size_t cell = i < j ? static_cast<std::size_t>(i) * n + j
                                         : static_cast<std::size_t>(j) * n + i;
          upper[cell] += si * sign[y];
        }
      }
    }
  }
}

KernelMatrix FromUpper(Index n, const std::vector<std::int64_t>& upper) {
  KernelMatrix k(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      k.Set(i, j, upper[static_cast<std::size_t>(i) * n + j]);
    }
  }
  return k;
}

}  // namespace

KernelMatrix::KernelMatrix(Index n) : n_(n) {
  Require(n >= 0, ErrorCode::kInvalidArgument, "negative kernel size");
  values_.assign(static_cast<std::size_t>(n) * n, 0);
  for (Index i = 0; i < n; ++i) {
    values_[static_cast<std::size_t>(i) * n + i] = kDiagonal;
  }
}

void KernelMatrix::Set(Index i, Index j, std::int64_t value) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
    Fail(ErrorCode::kOutOfRange, "invalid off-diagonal kernel entry");
  }
  values_[static_cast<std::size_t>(i) * n_ + j] = value;
  values_[static_cast<std::size_t>(j) * n_ + i] = value;
}

ActiveKernelResult ActiveKernel(ActiveOracle& oracle, Index n,
                                const ActiveKernelConfig& config) {
  Require(n >= 3, ErrorCode::kInvalidArgument, "active kernel needs n >= 3");
  Require(n == oracle.n_items(), ErrorCode::kInvalidArgument,
          "oracle and item count disagree");
  Require(config.q > 0.0 && config.q <= 1.0, ErrorCode::kInvalidArgument,
          "landmark probability must be in (0, 1]");
  const std::uint64_t pair_total = Choose2(static_cast<std::uint64_t>(n));

  Rng rng(config.seed);
  ActiveKernelResult out;
  out.landmarks = SampleLandmarks(rng, n, config.q);
  if (out.landmarks.empty()) out.landmarks = SampleLandmarks(rng, n, config.q);
  if (out.landmarks.empty()) {
    Fail(ErrorCode::kInvalidArgument,
         "landmark set is empty after resampling; increase q");
  }

  std::uint64_t num_refs = 0;
  if (config.query_budget > 0) {
    // Distinct pairs (i, k) touching the landmark set, i.e. queries per
    // reference up to the rare skip of the reference itself.
    const std::uint64_t s = out.landmarks.size();
    const std::uint64_t per_reference =
        s * static_cast<std::uint64_t>(n - 1) - Choose2(s);
    num_refs = static_cast<std::uint64_t>(std::llround(
        static_cast<double>(config.query_budget) / static_cast<double>(per_reference)));
    num_refs = std::clamp<std::uint64_t>(num_refs, 1, pair_total);
  } else {
    Require(config.num_references >= 1, ErrorCode::kInvalidArgument,
            "need at least one reference pair");
    num_refs = static_cast<std::uint64_t>(config.num_references);
    Require(num_refs <= pair_total, ErrorCode::kInvalidArgument,
            "more reference pairs requested than distinct pairs exist");
  }
  const PairIndexer pairs(n);
  const std::vector<PairRank> ref_ranks = SampleDistinct(rng, pair_total, num_refs);
  out.references.reserve(ref_ranks.size());
  for (PairRank r : ref_ranks) out.references.push_back(pairs.Unrank(r));

  const std::uint64_t before = oracle.query_count();
  const std::size_t words = (out.references.size() + 63) / 64;
  std::vector<std::uint64_t> nonzero(static_cast<std::size_t>(n) * words);
  std::vector<std::uint64_t> negative(static_cast<std::size_t>(n) * words);
  std::vector<std::int64_t> upper(static_cast<std::size_t>(n) * n, 0);
  for (Index k : out.landmarks) {
    std::fill(nonzero.begin(), nonzero.end(), 0);
    std::fill(negative.begin(), negative.end(), 0);
    for (std::size_t t = 0; t < out.references.size(); ++t) {
      const PairId ref = out.references[t];
      const std::uint64_t bit = std::uint64_t{1} << (t % 64);
      for (Index i = 0; i < n; ++i) {
        if (i == k) continue;
        const PairId ik = MakePair(i, k);
        if (ik == ref) continue;
        const std::size_t w = static_cast<std::size_t>(i) * words + t / 64;
        nonzero[w] |= bit;
        if (!oracle.Compare(ik, ref)) negative[w] |= bit;
      }
    }
    // Sum over references of s_ik * s_jk = #agree - #disagree.
    for (Index i = 0; i < n; ++i) {
      const std::uint64_t* nz_i = &nonzero[static_cast<std::size_t>(i) * words];
      const std::uint64_t* ng_i = &negative[static_cast<std::size_t>(i) * words];
      for (Index j = i + 1; j < n; ++j) {
        const std::uint64_t* nz_j = &nonzero[static_cast<std::size_t>(j) * words];
        const std::uint64_t* ng_j = &negative[static_cast<std::size_t>(j) * words];
        std::int64_t both = 0;
        std::int64_t disagree = 0;
        for (std::size_t w = 0; w < words; ++w) {
          const std::uint64_t common = nz_i[w] & nz_j[w];
          both += std::popcount(common);
          disagree += std::popcount(common & (ng_i[w] ^ ng_j[w]));
        }
        upper[static_cast<std::size_t>(i) * n + j] += both - 2 * disagree;
      }
    }
  }
  out.queries_used = oracle.query_count() - before;
  out.kernel = FromUpper(n, upper);
  return out;
}

KernelMatrix PassiveKernel(const QuadrupletSet& comparisons, int threads) {
  const Index n = comparisons.n_items();
  const std::size_t cells = static_cast<std::size_t>(n) * n;
  const auto refs = static_cast<PairRank>(comparisons.pairs().size());
  threads = std::max(1, threads);
  if (threads == 1 || refs < 2) {
    std::vector<std::int64_t> upper(cells, 0);
    AccumulateReferences(comparisons, 0, refs, upper);
    return FromUpper(n, upper);
  }
  std::vector<std::vector<std::int64_t>> partial(
      threads, std::vector<std::int64_t>(cells, 0));
  std::vector<std::thread> workers;
  for (int t = 0; t < threads; ++t) {
    const auto lo = static_cast<PairRank>(std::uint64_t{refs} * t / threads);
    const auto hi = static_cast<PairRank>(std::uint64_t{refs} * (t + 1) / threads);
    workers.emplace_back([&, t, lo, hi] {
      AccumulateReferences(comparisons, lo, hi, partial[t]);
    });
  }
  for (std::thread& w : workers) w.join();
  for (int t = 1; t < threads; ++t) {
    for (std::size_t c = 0; c < cells; ++c) partial[0][c] += partial[t][c];
  }
  return FromUpper(n, partial[0]);
}

Dendrogram AverageLinkageOnKernel(const KernelMatrix& kernel) {
  Require(kernel.size() >= 2, ErrorCode::kInvalidArgument,
          "average linkage needs n >= 2");
  const IntegerSimilarity similarity = kernel.AsSimilarity();
  ClassicalLinkage strategy(LinkageMethod::kAverage, similarity);
  return Agglomerate(strategy, Partition::Singletons(kernel.size()));
}

}  // namespace ordhc
