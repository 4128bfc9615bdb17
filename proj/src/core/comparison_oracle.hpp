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

#ifndef ORDHC_CORE_COMPARISON_ORACLE_HPP_
#define ORDHC_CORE_COMPARISON_ORACLE_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "core/common.hpp"
#include "core/planted_model.hpp"

namespace ordhc {

// True iff w_p > w_q. Equal similarities go to the lexicographically smaller
// pair so every pair-of-pairs has exactly one winner.
inline bool PairBeats(const SimilarityMatrix& w, PairId p, PairId q) {
  const double wp = w(p);
  const double wq = w(q);
  return wp > wq || (wp == wq && p < q);
}

// "winner is more similar than loser": w_winner > w_loser.
struct Quadruplet {
  PairId winner;
  PairId loser;

  friend bool operator==(const Quadruplet&, const Quadruplet&) = default;
};

// Immutable set of observed comparisons, at most one orientation per
// unordered pair-of-pairs. Observations are kept sorted by
// (min pair rank, max pair rank); a per-pair adjacency index ("by reference")
// lists every pair compared against a given pair, sorted by rank.
class QuadrupletSet {
 public:
  // One observation in rank form. `low < high`; `low_wins` tells which side
  // was observed as the more similar pair.
  struct Observation {
    PairRank low;
    PairRank high;
    bool low_wins;
  };

  // Adjacency entry: `other` was compared with the reference pair and
  // sign = +1 when w_other > w_reference, -1 otherwise.
  struct Reference {
    PairRank other;
    int sign;
  };

  QuadrupletSet() = default;
  explicit QuadrupletSet(Index n_items);

  // Duplicates collapse; contradicting observations of the same pair-of-pairs
  // are settled by majority and dropped on a tie.
  static QuadrupletSet FromQuadruplets(Index n_items,
                                       std::span<const Quadruplet> quadruplets);

  // Takes observations already in canonical order with no repeats.
  static QuadrupletSet FromSortedObservations(Index n_items,
                                              std::vector<std::uint64_t> keys,
                                              std::vector<bool> low_wins);

  Index n_items() const { return pairs_ ? pairs_->n() : 0; }
  std::size_t size() const { return keys_.size(); }
  bool empty() const { return keys_.empty(); }
  const PairIndexer& pairs() const { return *pairs_; }

  Observation observation(std::size_t k) const {
    return {static_cast<PairRank>(keys_[k] >> 32),
            static_cast<PairRank>(keys_[k] & 0xFFFFFFFFu),
            static_cast<bool>(low_wins_[k])};
  }
  Quadruplet quadruplet(std::size_t k) const;
  std::vector<Quadruplet> ToQuadruplets() const;

  // +1 if "p beats q" was observed, -1 if "q beats p", 0 if neither.
  int Orientation(PairId p, PairId q) const;
  int Orientation(PairRank p, PairRank q) const;
  bool Contains(const Quadruplet& q) const {
    return Orientation(q.winner, q.loser) == 1;
  }

  std::size_t reference_degree(PairRank p) const {
    return offsets_[p + 1] - offsets_[p];
  }
  Reference reference_entry(PairRank p, std::size_t k) const {
    const std::uint32_t e = adjacency_[offsets_[p] + k];
    return {e >> 1, (e & 1u) ? +1 : -1};
  }
  std::vector<Reference> ByReference(PairId p) const;

  static std::uint64_t Key(PairRank low, PairRank high) {
    return (static_cast<std::uint64_t>(low) << 32) | high;
  }

 private:
  void BuildAdjacency();

  std::shared_ptr<const PairIndexer> pairs_;
  std::vector<std::uint64_t> keys_;
  std::vector<bool> low_wins_;
  std::vector<std::uint64_t> offsets_;  // size C(n,2) + 1
  std::vector<std::uint32_t> adjacency_;  // (other << 1) | (other beats ref)
};

// Answers quadruplet queries against a hidden similarity matrix and counts
// distinct queries. Not thread-safe; use one oracle per clustering run.
class ActiveOracle {
 public:
  explicit ActiveOracle(std::shared_ptr<const SimilarityMatrix> w);

  Index n_items() const { return w_->size(); }

  // True iff w_p > w_q (ties: lexicographically smaller pair wins).
  bool Compare(PairId p, PairId q);

  std::uint64_t query_count() const { return query_count_; }

 private:
  // 2 bits per unordered pair-of-pairs when the dense table is small enough,
  // otherwise a hash map.
  bool LookupOrInsert(std::uint64_t low, std::uint64_t high, bool low_wins_if_new,
                      bool* low_wins);

  std::shared_ptr<const SimilarityMatrix> w_;
  std::uint64_t pair_count_ = 0;
  std::uint64_t query_count_ = 0;
  struct FreeDeleter {
    void operator()(std::uint64_t* p) const;
  };
  std::unique_ptr<std::uint64_t, FreeDeleter> dense_;
  std::unordered_map<std::uint64_t, bool> sparse_;
};

// Observes every unordered pair-of-pairs independently with probability p.
// Pairs sharing an item are included.
QuadrupletSet SamplePassive(const SimilarityMatrix& w, double p,
                            std::uint64_t seed);

// (i, j, k): "i is more similar to j than to k".
struct Triplet {
  Index i = 0;
  Index j = 0;
  Index k = 0;
};

// Each triplet becomes the quadruplet (i,j) beats (i,k).
QuadrupletSet IngestTriplets(Index n_items, std::span<const Triplet> triplets);

}  // namespace ordhc

#endif  // ORDHC_CORE_COMPARISON_ORACLE_HPP_
