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

// Planted hierarchical block model.
//
// N = 2^L * n0 items are split into 2^L pure clusters of n0 contiguous
// indices; the clusters are the leaves of a complete binary tree. Two items
// whose lowest common ancestor sits at level l (L = same pure cluster, 0 =
// split at the root) have expected similarity mu - (L - l) * delta, observed
// with additive Normal(0, sigma^2) noise.

#ifndef ORDHC_CORE_PLANTED_MODEL_HPP_
#define ORDHC_CORE_PLANTED_MODEL_HPP_

#include <cstdint>
#include <limits>
#include <vector>

#include "core/common.hpp"
#include "core/dendrogram.hpp"

namespace ordhc {

struct PlantedConfig {
  Index n0 = 1;
  int levels = 0;
  double mu = 0.8;
  double delta = 0.1;
  double sigma = 0.1;
  std::uint64_t seed = 0;

  // Throws on n0 == 0, negative delta/sigma, or an N that overflows Index.
  void Validate() const;
  Index ItemCount() const;
};

// Symmetric similarity scores. The diagonal holds NaN and is never read.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(Index n);

  Index size() const { return n_; }

  double operator()(Index i, Index j) const {
    return data_[static_cast<std::size_t>(i) * n_ + j];
  }
  double operator()(PairId p) const { return (*this)(p.a, p.b); }
  // Range-checked read; rejects the diagonal.
  double At(Index i, Index j) const;

  void Set(Index i, Index j, double value);

  // Applies f to every off-diagonal entry.
  template <typename F>
  SimilarityMatrix Transformed(F f) const {
    SimilarityMatrix out(n_);
    for (Index i = 0; i < n_; ++i) {
      for (Index j = i + 1; j < n_; ++j) out.Set(i, j, f((*this)(i, j)));
    }
    return out;
  }

  friend bool operator==(const SimilarityMatrix& x, const SimilarityMatrix& y);

 private:
  Index n_ = 0;
  std::vector<double> data_;
};

class GroundTruthHierarchy {
 public:
  GroundTruthHierarchy() = default;
  GroundTruthHierarchy(int levels, Index n0);

  int levels() const { return levels_; }
  Index n0() const { return n0_; }
  Index item_count() const { return n0_ << levels_; }
  Index pure_cluster_count() const { return Index{1} << levels_; }
  // Pure cluster g holds items [g*n0, (g+1)*n0).
  Index pure_cluster_of(Index item) const { return item / n0_; }

  // Level of the lowest common ancestor of two distinct items.
  int LcaLevel(Index i, Index j) const;

  // Cluster label of every item in the 2^level-cluster planted partition.
  std::vector<Index> LevelLabels(int level) const;

 private:
  int levels_ = 0;
  Index n0_ = 1;
};

struct PlantedInstance {
  SimilarityMatrix similarities;
  GroundTruthHierarchy truth;
};

PlantedInstance GeneratePlanted(const PlantedConfig& config);

// Noise-free similarity mu - (L - lca) * delta.
double ExpectedSimilarity(const GroundTruthHierarchy& truth,
                          const PlantedConfig& config, Index i, Index j);

// Reference tree: each pure cluster chains its members in index order, then
// sibling clusters merge level by level.
Dendrogram GroundTruthDendrogram(const GroundTruthHierarchy& truth);

// Standard normal draw for entry (i, j) under `seed`; independent of the
// order in which entries are generated.
double PlantedNoise(std::uint64_t seed, Index i, Index j);

}  // namespace ordhc

#endif  // ORDHC_CORE_PLANTED_MODEL_HPP_
