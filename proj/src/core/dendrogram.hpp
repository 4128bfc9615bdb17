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

#ifndef ORDHC_CORE_DENDROGRAM_HPP_
#define ORDHC_CORE_DENDROGRAM_HPP_

#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/partition.hpp"

namespace ordhc {

struct MergeStep {
  Index left = 0;
  Index right = 0;
  Index merged = 0;

  friend bool operator==(const MergeStep&, const MergeStep&) = default;
};

// Binary merge tree. Leaves are nodes 0..n_leaves-1; the i-th merge creates
// node n_leaves + i. Only roots (nodes not yet merged) can be merged.
class Dendrogram {
 public:
  Dendrogram() = default;
  explicit Dendrogram(Index n_leaves);

  Index n_leaves() const { return n_leaves_; }
  Index node_count() const {
    return n_leaves_ + static_cast<Index>(merges_.size());
  }
  const std::vector<MergeStep>& merges() const { return merges_; }
  bool complete() const {
    return n_leaves_ > 0 &&
           static_cast<Index>(merges_.size()) == n_leaves_ - 1;
  }

  // Returns the id of the new node.
  Index Merge(Index left, Index right);

  // Partition left after undoing the last k-1 merges of a complete tree.
  // Labels are numbered by first appearance in leaf order.
  std::vector<Index> CutLabels(Index k) const;
  Partition Cut(Index k) const;

  // Leaves below `node`, ascending.
  std::vector<Index> Members(Index node) const;
  // Leaf count below every node.
  std::vector<Index> Sizes() const;

  std::string ToNewick() const;

  friend bool operator==(const Dendrogram&, const Dendrogram&) = default;

 private:
  Index n_leaves_ = 0;
  std::vector<MergeStep> merges_;
  std::vector<bool> is_root_;
};

}  // namespace ordhc

#endif  // ORDHC_CORE_DENDROGRAM_HPP_
