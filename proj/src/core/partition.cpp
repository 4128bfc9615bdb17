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

#include "core/partition.hpp"

#include <algorithm>
#include <unordered_map>

namespace ordhc {

Partition Partition::Singletons(Index n_items) {
  Require(n_items >= 0, ErrorCode::kInvalidArgument, "negative item count");
  std::vector<std::vector<Index>> clusters(n_items);
  for (Index i = 0; i < n_items; ++i) clusters[i] = {i};
  return FromClusters(std::move(clusters), n_items);
}

Partition Partition::FromClusters(std::vector<std::vector<Index>> clusters,
                                  Index n_items) {
  Require(n_items >= 0, ErrorCode::kInvalidArgument, "negative item count");
  Partition p;
  p.n_items_ = n_items;
  p.item_cluster_.assign(n_items, -1);
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    auto& members = clusters[c];
    if (members.empty()) {
      Fail(ErrorCode::kInvalidArgument,
           "cluster " + std::to_string(c) + " is empty");
    }
    std::sort(members.begin(), members.end());
    for (Index item : members) {
      if (item < 0 || item >= n_items) {
        Fail(ErrorCode::kOutOfRange,
             "item " + std::to_string(item) + " out of range");
      }
      if (p.item_cluster_[item] != -1) {
        Fail(ErrorCode::kInvalidArgument,
             "item " + std::to_string(item) + " appears in two clusters");
      }
      p.item_cluster_[item] = static_cast<ClusterId>(c);
    }
    p.active_.push_back(static_cast<ClusterId>(c));
  }
  p.members_ = std::move(clusters);
  return p;
}

Partition Partition::FromLabels(std::span<const Index> labels) {
  std::unordered_map<Index, std::size_t> slot;
  std::vector<std::vector<Index>> clusters;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 0) continue;
    auto [it, inserted] = slot.try_emplace(labels[i], clusters.size());
    if (inserted) clusters.emplace_back();
    clusters[it->second].push_back(static_cast<Index>(i));
  }
  return FromClusters(std::move(clusters), static_cast<Index>(labels.size()));
}

bool Partition::IsActive(ClusterId id) const {
  return id >= 0 && id < next_id() && !members_[id].empty();
}

const std::vector<Index>& Partition::members(ClusterId id) const {
  if (!IsActive(id)) {
    Fail(ErrorCode::kOutOfRange,
         "cluster " + std::to_string(id) + " is not live");
  }
  return members_[id];
}

bool Partition::CoversAll() const {
  return std::none_of(item_cluster_.begin(), item_cluster_.end(),
                      [](ClusterId c) { return c < 0; });
}

bool Partition::IsAllSingletons() const {
  if (static_cast<Index>(active_.size()) != n_items_) return false;
  for (Index i = 0; i < n_items_; ++i) {
    if (item_cluster_[i] != i) return false;
  }
  return true;
}

ClusterId Partition::Merge(ClusterId a, ClusterId b) {
  if (a == b || !IsActive(a) || !IsActive(b)) {
    Fail(ErrorCode::kContractViolation,
         "cannot merge clusters " + std::to_string(a) + " and " +
             std::to_string(b));
  }
  const ClusterId merged = next_id();
  std::vector<Index> joined;
  joined.reserve(members_[a].size() + members_[b].size());
  std::merge(members_[a].begin(), members_[a].end(), members_[b].begin(),
             members_[b].end(), std::back_inserter(joined));
  for (Index item : joined) item_cluster_[item] = merged;
  members_[a].clear();
  members_[a].shrink_to_fit();
  members_[b].clear();
  members_[b].shrink_to_fit();
  members_.push_back(std::move(joined));
  std::erase_if(active_, [&](ClusterId c) { return c == a || c == b; });
  active_.push_back(merged);  // fresh id is the largest, order preserved
  return merged;
}

std::vector<Index> Partition::Labels() const {
  std::vector<Index> labels(n_items_, -1);
  for (std::size_t k = 0; k < active_.size(); ++k) {
    for (Index item : members_[active_[k]]) {
      labels[item] = static_cast<Index>(k);
    }
  }
  return labels;
}

}  // namespace ordhc
