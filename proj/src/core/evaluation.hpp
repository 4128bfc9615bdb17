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


#ifndef ORDHC_CORE_EVALUATION_HPP_
#define ORDHC_CORE_EVALUATION_HPP_

#include <span>
#include <vector>

#include "core/dendrogram.hpp"
#include "core/partition.hpp"
#include "core/planted_model.hpp"

namespace ordhc {

// Adjusted Rand index from integer pair counts. Identical partitions score
// exactly 1. When the chance-corrected denominator vanishes (both labelings
// trivial in the same way) the result is 1.
double Ari(std::span<const Index> labels_a, std::span<const Index> labels_b);
double Ari(const Partition& a, const Partition& b);

// Mean ARI over levels 1..L between the planted 2^l-cluster partition and the
// cut of `tree` that leaves 2^l clusters.
double Aari(const GroundTruthHierarchy& truth, const Dendrogram& tree);

// Sum over i < j of w_ij times the leaf count of the smallest subtree that
// holds both i and j.
double DasguptaCost(const SimilarityMatrix& w, const Dendrogram& tree);

SimilarityMatrix CosineSimilarityMatrix(
    const std::vector<std::vector<double>>& features);

// 2 Phi(l delta / (sqrt(2) sigma)) - 1.
double BetaExpected(double ell, double delta, double sigma);

double StandardNormalCdf(double x);

}  // namespace ordhc

#endif  // ORDHC_CORE_EVALUATION_HPP_
