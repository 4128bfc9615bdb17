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

// Proxy similarities built from quadruplet comparisons.
//
// Two items are similar when they relate alike to third items: for a
// reference pair (k, l) and a third item r, the signs of w_ir - w_kl and
// w_jr - w_kl agree. Summing sign products over references and third items
// gives an integer kernel K, which is then clustered with ordinary average
// linkage.

#ifndef ORDHC_CORE_QUADRUPLET_KERNEL_HPP_
#define ORDHC_CORE_QUADRUPLET_KERNEL_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "core/agglomeration.hpp"
#include "core/comparison_oracle.hpp"
#include "core/dendrogram.hpp"

namespace ordhc {

// Symmetric integer kernel. The diagonal holds kDiagonal and is never used.
class KernelMatrix {
 public:
  static constexpr std::int64_t kDiagonal =
      std::numeric_limits<std::int64_t>::max();

  KernelMatrix() = default;
  explicit KernelMatrix(Index n);

  Index size() const { return n_; }
  std::int64_t operator()(Index i, Index j) const {
    return values_[static_cast<std::size_t>(i) * n_ + j];
  }
  void Set(Index i, Index j, std::int64_t value);

  IntegerSimilarity AsSimilarity() const { return {n_, values_}; }

  friend bool operator==(const KernelMatrix&, const KernelMatrix&) = default;

 private:
  Index n_ = 0;
  std::vector<std::int64_t> values_;
};

struct ActiveKernelConfig {
  // Landmark inclusion probability.
  double q = 1.0;
  // Number of reference pairs |R|; ignored when query_budget > 0.
  Index num_references = 1;
  std::uint64_t seed = 0;
  // When positive, |R| is chosen after landmark sampling so the expected
  // number of distinct queries matches this budget (capped at C(n,2)).
  std::uint64_t query_budget = 0;
};

struct ActiveKernelResult {
  KernelMatrix kernel;
  std::uint64_t queries_used = 0;
  std::vector<Index> landmarks;
  std::vector<PairId> references;
};

// K_ij = sum over references (i0,j0) and landmarks k not in {i,j} of
// sign(w_ik - w_i0j0) * sign(w_jk - w_i0j0). Terms where (i,k) or (j,k) is the
// reference itself are skipped.
ActiveKernelResult ActiveKernel(ActiveOracle& oracle, Index n,
                                const ActiveKernelConfig& config);

// K_ij = sum over reference pairs (k,l) and r not in {i,j} of
// s((i,r),(k,l)) * s((j,r),(k,l)) with s = +1 / -1 for an observed win / loss
// and 0 when the comparison was not observed. Accumulated per reference by
// grouping its comparisons on the shared item r; `threads` > 1 splits the
// references across workers and sums their partial kernels.
KernelMatrix PassiveKernel(const QuadrupletSet& comparisons, int threads = 1);

// Classical average linkage on K with exact integer cross sums.
Dendrogram AverageLinkageOnKernel(const KernelMatrix& kernel);

}  // namespace ordhc

#endif  // ORDHC_CORE_QUADRUPLET_KERNEL_HPP_
