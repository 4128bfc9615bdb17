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

#ifndef ORDHC_CORE_PARTITION_HPP_
#define ORDHC_CORE_PARTITION_HPP_

#include <span>
#include <vector>

#include "core/common.hpp"

namespace ordhc {

// Disjoint non-empty item sets with stable cluster ids. Merging two clusters
// retires both ids and creates a fresh one; ids are never reused.
class Partition {
 public:
  Partition() = default;

  static Partition Singletons(Index n_items);
  // Cluster i of `clusters` gets id i. Items not listed are uncovered.
  static Partition FromClusters(std::vector<std::vector<Index>> clusters,
                                Index n_items);
  // Negative labels mark uncovered items. Clusters are numbered by first
  // appearance of their label in item order.
  static Partition FromLabels(std::span<const Index> labels);

  Index n_items() const { return n_items_; }
  // Number of live clusters.
  std::size_t size() const { return active_.size(); }
  // Live cluster ids in increasing order.
  const std::vector<ClusterId>& active() const { return active_; }
  ClusterId next_id() const { return static_cast<ClusterId>(members_.size()); }

  bool IsActive(ClusterId id) const;
  // Sorted members of a live cluster.
  const std::vector<Index>& members(ClusterId id) const;
  Index cluster_size(ClusterId id) const {
    return static_cast<Index>(members(id).size());
  }
  // -1 for uncovered items.
  ClusterId cluster_of(Index item) const { return item_cluster_[item]; }
  bool CoversAll() const;
  bool IsAllSingletons() const;

  ClusterId Merge(ClusterId a, ClusterId b);

  // Dense labels 0..size()-1 following active() order, -1 when uncovered.
  std::vector<Index> Labels() const;

 private:
  Index n_items_ = 0;
  std::vector<std::vector<Index>> members_;  // indexed by id; empty once retired
  std::vector<ClusterId> active_;
  std::vector<ClusterId> item_cluster_;
};

}  // namespace ordhc

#endif  // ORDHC_CORE_PARTITION_HPP_
