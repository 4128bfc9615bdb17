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

#ifndef ORDHC_CORE_AGGLOMERATION_HPP_
#define ORDHC_CORE_AGGLOMERATION_HPP_

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "core/common.hpp"
#include "core/dendrogram.hpp"
#include "core/partition.hpp"

namespace ordhc {

// Two distinct live clusters, first < second.
struct ClusterPair {
  ClusterId first = -1;
  ClusterId second = -1;

  friend auto operator<=>(const ClusterPair&, const ClusterPair&) = default;
};

inline ClusterPair MakeClusterPair(ClusterId x, ClusterId y) {
  return x < y ? ClusterPair{x, y} : ClusterPair{y, x};
}

// Cluster-level similarity W(G, G') seen through its argmax. Strategies
// choose the pair with maximal linkage; among equal values the
// lexicographically smallest (first, second) id pair wins.
class LinkageStrategy {
 public:
  virtual ~LinkageStrategy() = default;

  virtual void Initialize(const Partition& initial) = 0;
  virtual ClusterPair SelectPair(const Partition& current) = 0;
  // `current` already contains `merged`.
  virtual void OnMerge(ClusterId a, ClusterId b, ClusterId merged,
                       const Partition& current) = 0;
};

using MergeObserver = std::function<void(ClusterId a, ClusterId b,
                                         ClusterId merged,
                                         const Partition& current)>;

// Runs the merge loop. Leaves of the returned tree are the initial clusters,
// numbered in the order of initial.active().
Dendrogram AgglomerateClusters(LinkageStrategy& strategy,
                               const Partition& initial,
                               const MergeObserver& observer = {});

// Expands a cluster-level tree to one leaf per item: every initial cluster is
// first chained in increasing item order, then the cluster merges follow.
Dendrogram ExpandToItems(const Dendrogram& cluster_tree,
                         const Partition& initial);

// AgglomerateClusters followed by ExpandToItems. `initial` must cover every
// item and hold at least two clusters.
Dendrogram Agglomerate(LinkageStrategy& strategy, const Partition& initial,
                       const MergeObserver& observer = {});

// Dense n x n integer similarity; diagonal ignored.
struct IntegerSimilarity {
  Index n = 0;
  std::vector<std::int64_t> values;

  std::int64_t operator()(Index i, Index j) const {
    return values[static_cast<std::size_t>(i) * n + j];
  }
};

enum class LinkageMethod { kSingle, kComplete, kAverage };

// Classical single / complete / average linkage on integer similarities,
// updated Lance-Williams style on every merge. Average linkage keeps exact
// cross sums and compares means by cross-multiplication, so no rounding ever
// decides a merge.
class ClassicalLinkage : public LinkageStrategy {
 public:
  ClassicalLinkage(LinkageMethod method, const IntegerSimilarity& similarity);

  void Initialize(const Partition& initial) override;
  ClusterPair SelectPair(const Partition& current) override;
  void OnMerge(ClusterId a, ClusterId b, ClusterId merged,
               const Partition& current) override;

 private:
  // true iff the link (value_x over pair x) beats (value_y over pair y).
  bool Better(std::int64_t vx, std::int64_t nx, ClusterPair x, std::int64_t vy,
              std::int64_t ny, ClusterPair y) const;
  std::int64_t& link(std::size_t sa, std::size_t sb) {
    return links_[sa * slots_ + sb];
  }

  LinkageMethod method_;
  const IntegerSimilarity& similarity_;
  std::size_t slots_ = 0;
  std::vector<std::int64_t> links_;
  std::vector<std::int64_t> sizes_;
  std::vector<ClusterId> slot_cluster_;
  std::vector<std::size_t> cluster_slot_;
  std::vector<std::size_t> live_slots_;
};

}  // namespace ordhc

#endif  // ORDHC_CORE_AGGLOMERATION_HPP_
