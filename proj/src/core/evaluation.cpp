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


#include "core/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace ordhc {
namespace {

using Wide = __int128;

std::uint64_t PairsWithin(const std::unordered_map<Index, std::uint64_t>& sizes) {
  std::uint64_t total = 0;
  for (const auto& [label, count] : sizes) total += Choose2(count);
  return total;
}

}  // namespace

double Ari(std::span<const Index> labels_a, std::span<const Index> labels_b) {
  if (labels_a.size() != labels_b.size()) {
    Fail(ErrorCode::kInvalidArgument,
         "ARI needs labelings of the same items, got " +
             std::to_string(labels_a.size()) + " and " +
             std::to_string(labels_b.size()));
  }
  std::unordered_map<Index, std::uint64_t> rows;
  std::unordered_map<Index, std::uint64_t> cols;
  std::unordered_map<std::uint64_t, std::uint64_t> cells;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    Require(labels_a[i] >= 0 && labels_b[i] >= 0, ErrorCode::kInvalidArgument,
            "ARI labels must be non-negative");
    ++rows[labels_a[i]];
    ++cols[labels_b[i]];
    ++cells[(static_cast<std::uint64_t>(labels_a[i]) << 32) |
            static_cast<std::uint32_t>(labels_b[i])];
  }
  std::uint64_t both = 0;
  for (const auto& [key, count] : cells) both += Choose2(count);
  const Wide total = Choose2(labels_a.size());
  const Wide sa = PairsWithin(rows);
  const Wide sb = PairsWithin(cols);
  // Index minus expected index over max index minus expected index, with
  // every term scaled by 2 C(n,2) to stay integral.
  const Wide num = 2 * (total * static_cast<Wide>(both) - sa * sb);
  const Wide den = total * (sa + sb) - 2 * sa * sb;
  if (den == 0) return 1.0;
  if (num == den) return 1.0;
  return static_cast<double>(static_cast<long double>(num) /
                             static_cast<long double>(den));
}

double Ari(const Partition& a, const Partition& b) {
  Require(a.n_items() == b.n_items(), ErrorCode::kInvalidArgument,
          "ARI needs partitions of the same items");
  Require(a.CoversAll() && b.CoversAll(), ErrorCode::kInvalidArgument,
          "ARI needs partitions covering every item");
  const std::vector<Index> la = a.Labels();
  const std::vector<Index> lb = b.Labels();
  return Ari(la, lb);
}

double Aari(const GroundTruthHierarchy& truth, const Dendrogram& tree) {
  Require(truth.levels() >= 1, ErrorCode::kInvalidArgument,
          "AARI is undefined for a hierarchy with no levels");
  Require(tree.complete(), ErrorCode::kInvalidArgument,
          "AARI needs a complete dendrogram");
  Require(tree.n_leaves() == truth.item_count(), ErrorCode::kInvalidArgument,
          "dendrogram and hierarchy disagree on the item count");
  double sum = 0.0;
  for (int level = 1; level <= truth.levels(); ++level) {
    const std::vector<Index> planted = truth.LevelLabels(level);
    const std::vector<Index> cut = tree.CutLabels(Index{1} << level);
    sum += Ari(planted, cut);
  }
  return sum / truth.levels();
}

double DasguptaCost(const SimilarityMatrix& w, const Dendrogram& tree) {
  Require(tree.complete(), ErrorCode::kInvalidArgument,
          "Dasgupta cost needs a complete dendrogram");
  Require(tree.n_leaves() == w.size(), ErrorCode::kInvalidArgument,
          "dendrogram and similarity matrix disagree on the item count");
  // Record the size of the subtree where each pair first meets, then sum in
  // fixed (i, j) order so the result only depends on those sizes.
  const Index n = tree.n_leaves();
  std::vector<Index> meet(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(tree.node_count()));
  for (Index i = 0; i < n; ++i) members[i] = {i};
  for (const MergeStep& m : tree.merges()) {
    std::vector<Index>& left = members[m.left];
    std::vector<Index>& right = members[m.right];
    const auto size = static_cast<Index>(left.size() + right.size());
    for (Index i : left) {
      for (Index j : right) {
        meet[static_cast<std::size_t>(std::min(i, j)) * n + std::max(i, j)] = size;
      }
    }
    std::vector<Index>& joined = members[m.merged];
    joined = std::move(left);
    joined.insert(joined.end(), right.begin(), right.end());
    right.clear();
    right.shrink_to_fit();
  }
  double cost = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      cost += w(i, j) * static_cast<double>(meet[static_cast<std::size_t>(i) * n + j]);
    }
  }
  return cost;
}

SimilarityMatrix CosineSimilarityMatrix(
    const std::vector<std::vector<double>>& features) {
  const auto n = static_cast<Index>(features.size());
  const std::size_t dim = features.empty() ? 0 : features.front().size();
  std::vector<double> norms(features.size());
  for (Index i = 0; i < n; ++i) {
    if (features[i].size() != dim) {
      Fail(ErrorCode::kInvalidArgument,
           "feature row " + std::to_string(i) + " has " +
               std::to_string(features[i].size()) + " values, expected " +
               std::to_string(dim));
    }
    double sq = 0.0;
    for (double v : features[i]) sq += v * v;
    if (!(sq > 0.0)) {
      Fail(ErrorCode::kInvalidArgument,
           "feature row " + std::to_string(i) + " has zero norm");
    }
    norms[i] = std::sqrt(sq);
  }
  SimilarityMatrix w(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      double dot = 0.0;
      for (std::size_t k = 0; k < dim; ++k) dot += features[i][k] * features[j][k];
      w.Set(i, j, dot / (norms[i] * norms[j]));
    }
  }
  return w;
}

double StandardNormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double BetaExpected(double ell, double delta, double sigma) {
  if (!(sigma > 0.0)) {
    Fail(ErrorCode::kInvalidArgument,
         "beta needs sigma > 0, got " + std::to_string(sigma));
  }
  return 2.0 * StandardNormalCdf(ell * delta / (std::sqrt(2.0) * sigma)) - 1.0;
}

}  // namespace ordhc
