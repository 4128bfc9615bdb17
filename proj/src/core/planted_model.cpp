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

#include "core/planted_model.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "core/random.hpp"

namespace ordhc {

void PlantedConfig::Validate() const {
  Require(n0 >= 1, ErrorCode::kInvalidArgument, "n0 must be positive");
  Require(levels >= 0, ErrorCode::kInvalidArgument, "levels must be >= 0");
  Require(levels < 31 && (static_cast<std::int64_t>(n0) << levels) <=
                             std::numeric_limits<Index>::max(),
          ErrorCode::kOutOfRange, "2^levels * n0 overflows the item index");
  Require(std::isfinite(mu), ErrorCode::kInvalidArgument, "mu must be finite");
  Require(std::isfinite(delta) && delta >= 0, ErrorCode::kInvalidArgument,
          "delta must be >= 0");
  Require(std::isfinite(sigma) && sigma >= 0, ErrorCode::kInvalidArgument,
          "sigma must be >= 0");
}

Index PlantedConfig::ItemCount() const {
  Validate();
  return n0 << levels;
}

SimilarityMatrix::SimilarityMatrix(Index n) : n_(n) {
  Require(n >= 0, ErrorCode::kInvalidArgument, "negative matrix size");
  data_.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (Index i = 0; i < n; ++i) {
    data_[static_cast<std::size_t>(i) * n + i] =
        std::numeric_limits<double>::quiet_NaN();
  }
}

double SimilarityMatrix::At(Index i, Index j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) {
    Fail(ErrorCode::kOutOfRange, "similarity index out of range");
  }
  Require(i != j, ErrorCode::kInvalidArgument, "self-similarity is undefined");
  return (*this)(i, j);
}

void SimilarityMatrix::Set(Index i, Index j, double value) {
  if (i < 0 || j < 0 || i >= n_ || j >= n_ || i == j) {
    Fail(ErrorCode::kOutOfRange, "invalid off-diagonal entry");
  }
  data_[static_cast<std::size_t>(i) * n_ + j] = value;
  data_[static_cast<std::size_t>(j) * n_ + i] = value;
}

bool operator==(const SimilarityMatrix& x, const SimilarityMatrix& y) {
  if (x.n_ != y.n_) return false;
  for (Index i = 0; i < x.n_; ++i) {
    for (Index j = i + 1; j < x.n_; ++j) {
      if (x(i, j) != y(i, j)) return false;
    }
  }
  return true;
}

GroundTruthHierarchy::GroundTruthHierarchy(int levels, Index n0)
    : levels_(levels), n0_(n0) {
  PlantedConfig{.n0 = n0, .levels = levels}.Validate();
}

int GroundTruthHierarchy::LcaLevel(Index i, Index j) const {
  const Index n = item_count();
  if (i < 0 || j < 0 || i >= n || j >= n) {
    Fail(ErrorCode::kOutOfRange, "lca item out of range");
  }
  Require(i != j, ErrorCode::kInvalidArgument,
          "lca of an item with itself is undefined");
  const auto gi = static_cast<std::uint32_t>(i / n0_);
  const auto gj = static_cast<std::uint32_t>(j / n0_);
  if (gi == gj) return levels_;
  // Highest differing bit of the cluster index decides the split level.
  const int top_bit = std::bit_width(gi ^ gj) - 1;
  return levels_ - 1 - top_bit;
}

std::vector<Index> GroundTruthHierarchy::LevelLabels(int level) const {
  if (level < 0 || level > levels_) {
    Fail(ErrorCode::kOutOfRange, "level " + std::to_string(level) +
                                     " outside 0.." + std::to_string(levels_));
  }
  std::vector<Index> labels(item_count());
  for (Index i = 0; i < item_count(); ++i) {
    labels[i] = (i / n0_) >> (levels_ - level);
  }
  return labels;
}

double PlantedNoise(std::uint64_t seed, Index i, Index j) {
  const Philox4x32 philox(seed);
  const Philox4x32::Block block = philox(
      {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 0u, 0u});
  const std::uint64_t b0 = (static_cast<std::uint64_t>(block[0]) << 32) | block[1];
  const std::uint64_t b1 = (static_cast<std::uint64_t>(block[2]) << 32) | block[3];
  // Box-Muller; u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - ToUnitInterval(b0);
  const double u2 = ToUnitInterval(b1);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

PlantedInstance GeneratePlanted(const PlantedConfig& config) {
  config.Validate();
  PlantedInstance out{SimilarityMatrix(config.ItemCount()),
                      GroundTruthHierarchy(config.levels, config.n0)};
  const Index n = config.ItemCount();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double w = ExpectedSimilarity(out.truth, config, i, j);
      if (config.sigma > 0) w += config.sigma * PlantedNoise(config.seed, i, j);
      out.similarities.Set(i, j, w);
    }
  }
  return out;
}

double ExpectedSimilarity(const GroundTruthHierarchy& truth,
                          const PlantedConfig& config, Index i, Index j) {
  const int lca = truth.LcaLevel(i, j);
  return config.mu - (truth.levels() - lca) * config.delta;
}

Dendrogram GroundTruthDendrogram(const GroundTruthHierarchy& truth) {
  const Index n = truth.item_count();
  Dendrogram d(n);
  std::vector<Index> roots;
  roots.reserve(truth.pure_cluster_count());
  for (Index g = 0; g < truth.pure_cluster_count(); ++g) {
    Index node = g * truth.n0();
    for (Index k = 1; k < truth.n0(); ++k) node = d.Merge(node, g * truth.n0() + k);
    roots.push_back(node);
  }
  while (roots.size() > 1) {
    std::vector<Index> next;
    for (std::size_t k = 0; k + 1 < roots.size(); k += 2) {
      next.push_back(d.Merge(roots[k], roots[k + 1]));
    }
    roots = std::move(next);
  }
  return d;
}

}  // namespace ordhc
