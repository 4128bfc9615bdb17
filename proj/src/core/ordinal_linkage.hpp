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

// Single and complete linkage driven purely by active comparisons: all
// C(n,2) pairs are merge-sorted through the oracle and the resulting ranks
// stand in for the hidden similarities. Max and min only depend on order, so
// the trees equal classical SL/CL on any strictly increasing transform of w.

#ifndef ORDHC_CORE_ORDINAL_LINKAGE_HPP_
#define ORDHC_CORE_ORDINAL_LINKAGE_HPP_

#include <cstdint>
#include <vector>

#include "core/agglomeration.hpp"
#include "core/comparison_oracle.hpp"
#include "core/dendrogram.hpp"

namespace ordhc {

struct PairRankTable {
  PairIndexer pairs;
  // Pair ranks from least to most similar.
  std::vector<PairRank> ascending;
  // position[r] = index of pair r inside `ascending`.
  std::vector<std::uint32_t> position;

  // Rank positions 1..C(n,2) as a dense similarity surrogate.
  IntegerSimilarity AsSimilarity() const;
};

PairRankTable RankAllPairs(ActiveOracle& oracle, Index n);

struct OrdinalLinkageResult {
  Dendrogram dendrogram;
  std::uint64_t queries_used = 0;
};

OrdinalLinkageResult SingleLinkage(ActiveOracle& oracle, Index n);
OrdinalLinkageResult CompleteLinkage(ActiveOracle& oracle, Index n);

}  // namespace ordhc

#endif  // ORDHC_CORE_ORDINAL_LINKAGE_HPP_
