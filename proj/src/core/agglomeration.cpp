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

#include "core/agglomeration.hpp"

#include <algorithm>
#include <limits>

namespace ordhc {

Dendrogram AgglomerateClusters(LinkageStrategy& strategy,
                               const Partition& initial,
                               const MergeObserver& observer) {
  Require(initial.size() >= 2, ErrorCode::kInvalidArgument,
          "agglomeration needs at least two initial clusters");
  Partition current = initial;
  const std::vector<ClusterId> leaves = initial.active();
  Dendrogram tree(static_cast<Index>(leaves.size()));
  std::vector<Index> node_of(static_cast<std::size_t>(initial.next_id()) +
                                 leaves.size(),
                             -1);
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    node_of[leaves[k]] = static_cast<Index>(k);
  }

  strategy.Initialize(current);
  while (current.size() > 1) {
    const ClusterPair pick = strategy.SelectPair(current);
    if (pick.first == pick.second || !current.IsActive(pick.first) ||
        !current.IsActive(pick.second)) {
      Fail(ErrorCode::kContractViolation,
           "linkage strategy returned an invalid pair (" +
               std::to_string(pick.first) + "," + std::to_string(pick.second) +
               ")");
    }
    const ClusterId merged = current.Merge(pick.first, pick.second);
    node_of[merged] = tree.Merge(node_of[pick.first], node_of[pick.second]);
    strategy.OnMerge(pick.first, pick.second, merged, current);
    if (observer) observer(pick.first, pick.second, merged, current);
  }
  return tree;
}

Dendrogram ExpandToItems(const Dendrogram& cluster_tree,
                         const Partition& initial) {
  Require(initial.CoversAll(), ErrorCode::kInvalidArgument,
          "leaf expansion needs a partition covering every item");
  const std::vector<ClusterId>& leaves = initial.active();
  Require(static_cast<Index>(leaves.size()) == cluster_tree.n_leaves(),
          ErrorCode::kInvalidArgument,
          "cluster tree and partition disagree on the leaf count");
  Dendrogram items(initial.n_items());
  std::vector<Index> node_of(cluster_tree.node_count());
  for (std::size_t k = 0; k < leaves.size(); ++k) {
    const std::vector<Index>& members = initial.members(leaves[k]);
    Index node = members.front();
    for (std::size_t m = 1; m < members.size(); ++m) {
      node = items.Merge(node, members[m]);
    }
    node_of[k] = node;
  }
  for (const MergeStep& m : cluster_tree.merges()) {
    node_of[m.merged] = items.Merge(node_of[m.left], node_of[m.right]);
  }
  return items;
}

Dendrogram Agglomerate(LinkageStrategy& strategy, const Partition& initial,
                       const MergeObserver& observer) {
  Require(initial.CoversAll(), ErrorCode::kInvalidArgument,
          "initial partition must cover every item");
  const Dendrogram clusters = AgglomerateClusters(strategy, initial, observer);
  if (initial.IsAllSingletons()) return clusters;
  return ExpandToItems(clusters, initial);
}

ClassicalLinkage::ClassicalLinkage(LinkageMethod method,
                                   const IntegerSimilarity& similarity)
    : method_(method), similarity_(similarity) {
  Require(similarity.values.size() ==
              static_cast<std::size_t>(similarity.n) * similarity.n,
          ErrorCode::kInvalidArgument, "similarity matrix has the wrong size");
}

void ClassicalLinkage::Initialize(const Partition& initial) {
  Require(initial.n_items() == similarity_.n, ErrorCode::kInvalidArgument,
          "partition and similarity matrix disagree on the item count");
  const std::vector<ClusterId>& ids = initial.active();
  slots_ = ids.size();
  links_.assign(slots_ * slots_, 0);
  sizes_.assign(slots_, 0);
  slot_cluster_ = ids;
  cluster_slot_.assign(static_cast<std::size_t>(initial.next_id()) + slots_, 0);
  live_slots_.resize(slots_);
  for (std::size_t s = 0; s < slots_; ++s) {
    cluster_slot_[ids[s]] = s;
    live_slots_[s] = s;
    sizes_[s] = initial.cluster_size(ids[s]);
  }
  for (std::size_t sa = 0; sa < slots_; ++sa) {
    for (std::size_t sb = sa + 1; sb < slots_; ++sb) {
      std::int64_t acc = 0;
      bool first = true;
      for (Index i : initial.members(ids[sa])) {
        for (Index j : initial.members(ids[sb])) {
          const std::int64_t v = similarity_(i, j);
          switch (method_) {
            case LinkageMethod::kSingle:
              acc = first ? v : std::max(acc, v);
              break;
            case LinkageMethod::kComplete:
              acc = first ? v : std::min(acc, v);
              break;
            case LinkageMethod::kAverage:
              acc += v;
              break;
          }
          first = false;
        }
      }
      link(sa, sb) = acc;
      link(sb, sa) = acc;
    }
  }
}

bool ClassicalLinkage::Better(std::int64_t vx, std::int64_t nx, ClusterPair x,
                              std::int64_t vy, std::int64_t ny,
                              ClusterPair y) const {
  if (method_ == LinkageMethod::kAverage) {
    // vx / nx vs vy / ny with positive denominators.
    const __int128 lhs = static_cast<__int128>(vx) * ny;
    const __int128 rhs = static_cast<__int128>(vy) * nx;
    if (lhs != rhs) return lhs > rhs;
  } else if (vx != vy) {
    return vx > vy;
  }
  return x < y;
}

ClusterPair ClassicalLinkage::SelectPair(const Partition&) {
  ClusterPair best;
  std::int64_t best_value = 0;
  std::int64_t best_count = 1;
  bool have = false;
  for (std::size_t x = 0; x < live_slots_.size(); ++x) {
    const std::size_t sa = live_slots_[x];
    for (std::size_t y = x + 1; y < live_slots_.size(); ++y) {
      const std::size_t sb = live_slots_[y];
      const ClusterPair pair =
          MakeClusterPair(slot_cluster_[sa], slot_cluster_[sb]);
      const std::int64_t value = links_[sa * slots_ + sb];
      const std::int64_t count = sizes_[sa] * sizes_[sb];
      if (!have || Better(value, count, pair, best_value, best_count, best)) {
        best = pair;
        best_value = value;
        best_count = count;
        have = true;
      }
    }
  }
  return best;
}

void ClassicalLinkage::OnMerge(ClusterId a, ClusterId b, ClusterId merged,
                               const Partition&) {
  const std::size_t sa = cluster_slot_[a];
  const std::size_t sb = cluster_slot_[b];
  for (std::size_t sc : live_slots_) {
    if (sc == sa || sc == sb) continue;
    std::int64_t v = 0;
    switch (method_) {
      case LinkageMethod::kSingle:
        v = std::max(link(sa, sc), link(sb, sc));
        break;
      case LinkageMethod::kComplete:
        v = std::min(link(sa, sc), link(sb, sc));
        break;
      case LinkageMethod::kAverage:
        v = link(sa, sc) + link(sb, sc);
        break;
    }
    link(sa, sc) = v;
    link(sc, sa) = v;
  }
  sizes_[sa] += sizes_[sb];
  slot_cluster_[sa] = merged;
  if (static_cast<std::size_t>(merged) >= cluster_slot_.size()) {
    cluster_slot_.resize(static_cast<std::size_t>(merged) + 1);
  }
  cluster_slot_[merged] = sa;
  std::erase(live_slots_, sb);
}

}  // namespace ordhc
