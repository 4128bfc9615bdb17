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

#include "core/dendrogram.hpp"

#include <algorithm>
#include <numeric>

namespace ordhc {
namespace {

Index FindRoot(std::vector<Index>& parent, Index x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

Dendrogram::Dendrogram(Index n_leaves) : n_leaves_(n_leaves) {
  Require(n_leaves >= 1, ErrorCode::kInvalidArgument,
          "dendrogram needs at least one leaf");
  merges_.reserve(n_leaves - 1);
  is_root_.assign(n_leaves, true);
}

Index Dendrogram::Merge(Index left, Index right) {
  const Index nodes = node_count();
  if (left == right || left < 0 || right < 0 || left >= nodes ||
      right >= nodes || !is_root_[left] || !is_root_[right]) {
    Fail(ErrorCode::kContractViolation,
         "invalid merge of nodes " + std::to_string(left) + " and " +
             std::to_string(right));
  }
  is_root_[left] = false;
  is_root_[right] = false;
  is_root_.push_back(true);
  merges_.push_back({left, right, nodes});
  return nodes;
}

std::vector<Index> Dendrogram::CutLabels(Index k) const {
  Require(complete(), ErrorCode::kContractViolation,
          "cut requires a complete dendrogram");
  if (k < 1 || k > n_leaves_) {
    Fail(ErrorCode::kOutOfRange, "cannot cut " + std::to_string(n_leaves_) +
                                     " leaves into " + std::to_string(k) +
                                     " clusters");
  }
  // Union-find over leaves; node -> representative leaf.
  std::vector<Index> parent(n_leaves_);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<Index> node_leaf(node_count());
  std::iota(node_leaf.begin(), node_leaf.begin() + n_leaves_, 0);
  const std::size_t applied = static_cast<std::size_t>(n_leaves_ - k);
  for (std::size_t s = 0; s < merges_.size(); ++s) {
    const MergeStep& m = merges_[s];
    node_leaf[m.merged] = node_leaf[m.left];
    if (s < applied) {
      parent[FindRoot(parent, node_leaf[m.right])] =
          FindRoot(parent, node_leaf[m.left]);
    }
  }
  std::vector<Index> label_of_root(n_leaves_, -1);
  std::vector<Index> labels(n_leaves_);
  Index next = 0;
  for (Index i = 0; i < n_leaves_; ++i) {
    const Index r = FindRoot(parent, i);
    if (label_of_root[r] < 0) label_of_root[r] = next++;
    labels[i] = label_of_root[r];
  }
  return labels;
}

Partition Dendrogram::Cut(Index k) const {
  const std::vector<Index> labels = CutLabels(k);
  return Partition::FromLabels(labels);
}

std::vector<Index> Dendrogram::Members(Index node) const {
  if (node < 0 || node >= node_count()) {
    Fail(ErrorCode::kOutOfRange, "no node " + std::to_string(node));
  }
  std::vector<Index> out;
  std::vector<Index> stack{node};
  while (!stack.empty()) {
    const Index x = stack.back();
    stack.pop_back();
    if (x < n_leaves_) {
      out.push_back(x);
    } else {
      const MergeStep& m = merges_[x - n_leaves_];
      stack.push_back(m.left);
      stack.push_back(m.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> Dendrogram::Sizes() const {
  std::vector<Index> sizes(node_count(), 1);
  for (const MergeStep& m : merges_) {
    sizes[m.merged] = sizes[m.left] + sizes[m.right];
  }
  return sizes;
}

std::string Dendrogram::ToNewick() const {
  Require(complete(), ErrorCode::kContractViolation,
          "newick export requires a complete dendrogram");
  std::vector<std::string> text(node_count());
  for (Index i = 0; i < n_leaves_; ++i) text[i] = std::to_string(i);
  for (const MergeStep& m : merges_) {
    text[m.merged] = "(" + text[m.left] + "," + text[m.right] + ")";
    text[m.left].clear();
    text[m.right].clear();
  }
  return text.back() + ";";
}

}  // namespace ordhc
