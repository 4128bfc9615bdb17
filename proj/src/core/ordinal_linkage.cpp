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

#include "core/ordinal_linkage.hpp"

#include <numeric>

namespace ordhc {
namespace {

// Top-down merge sort; `less(x, y)` costs one oracle query.
template <typename Less>
void MergeSort(std::vector<PairRank>& items, std::vector<PairRank>& buffer,
               std::size_t begin, std::size_t end, Less& less) {
  if (end - begin < 2) return;
  const std::size_t mid = begin + (end - begin) / 2;
  MergeSort(items, buffer, begin, mid, less);
  MergeSort(items, buffer, mid, end, less);
  std::size_t i = begin;
  std::size_t j = mid;
  std::size_t out = begin;
  while (i < mid && j < end) {
    if (less(items[j], items[i])) {
      buffer[out++] = items[j++];
    } else {
      buffer[out++] = items[i++];
    }
  }
  while (i < mid) buffer[out++] = items[i++];
  while (j < end) buffer[out++] = items[j++];
  std::copy(buffer.begin() + static_cast<std::ptrdiff_t>(begin),
            buffer.begin() + static_cast<std::ptrdiff_t>(end),
            items.begin() + static_cast<std::ptrdiff_t>(begin));
}

OrdinalLinkageResult RunOrdinal(ActiveOracle& oracle, Index n,
                                LinkageMethod method) {
  const std::uint64_t before = oracle.query_count();
  const PairRankTable table = RankAllPairs(oracle, n);
  const IntegerSimilarity ranks = table.AsSimilarity();
  ClassicalLinkage strategy(method, ranks);
  OrdinalLinkageResult out;
  out.dendrogram = Agglomerate(strategy, Partition::Singletons(n));
  out.queries_used = oracle.query_count() - before;
  return out;
}

}  // namespace

IntegerSimilarity PairRankTable::AsSimilarity() const {
  IntegerSimilarity s;
  s.n = pairs.n();
  s.values.assign(static_cast<std::size_t>(s.n) * s.n, 0);
  for (PairRank r = 0; r < pairs.size(); ++r) {
    const PairId p = pairs.Unrank(r);
    const std::int64_t v = static_cast<std::int64_t>(position[r]) + 1;
    s.values[static_cast<std::size_t>(p.a) * s.n + p.b] = v;
    s.values[static_cast<std::size_t>(p.b) * s.n + p.a] = v;
  }
  return s;
}

PairRankTable RankAllPairs(ActiveOracle& oracle, Index n) {
  Require(n >= 2, ErrorCode::kInvalidArgument, "ranking needs n >= 2");
  Require(n == oracle.n_items(), ErrorCode::kInvalidArgument,
          "oracle and item count disagree");
  PairRankTable table{PairIndexer(n), {}, {}};
  const std::size_t m = table.pairs.size();
  table.ascending.resize(m);
  std::iota(table.ascending.begin(), table.ascending.end(), PairRank{0});
  std::vector<PairRank> buffer(m);
  auto less = [&](PairRank x, PairRank y) {
    // w_x < w_y  <=>  y beats x.
    return oracle.Compare(table.pairs.Unrank(y), table.pairs.Unrank(x));
  };
  MergeSort(table.ascending, buffer, 0, m, less);
  table.position.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    table.position[table.ascending[k]] = static_cast<std::uint32_t>(k);
  }
  return table;
}

OrdinalLinkageResult SingleLinkage(ActiveOracle& oracle, Index n) {
  return RunOrdinal(oracle, n, LinkageMethod::kSingle);
}

OrdinalLinkageResult CompleteLinkage(ActiveOracle& oracle, Index n) {
  return RunOrdinal(oracle, n, LinkageMethod::kComplete);
}

}  // namespace ordhc
