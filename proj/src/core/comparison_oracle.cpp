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

#include "core/comparison_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "core/random.hpp"

namespace ordhc {
namespace {

// Dense query caches above this many pair-of-pair slots fall back to hashing.
constexpr std::uint64_t kMaxDenseCacheSlots = std::uint64_t{1} << 31;

void CheckPair(const PairIndexer& pairs, PairId p) {
  if (!pairs.Contains(p)) {
    Fail(ErrorCode::kOutOfRange, "pair (" + std::to_string(p.a) + "," +
                                     std::to_string(p.b) +
                                     ") is not a valid item pair");
  }
}

}  // namespace

QuadrupletSet::QuadrupletSet(Index n_items)
    : pairs_(std::make_shared<PairIndexer>(n_items)) {
  Require(pairs_->size() < (std::uint64_t{1} << 31), ErrorCode::kOutOfRange,
          "too many item pairs for the comparison index");
  BuildAdjacency();
}

QuadrupletSet QuadrupletSet::FromQuadruplets(
    Index n_items, std::span<const Quadruplet> quadruplets) {
  QuadrupletSet tmp(n_items);
  const PairIndexer& pairs = *tmp.pairs_;
  // (key, vote) with vote +1 when the lower-ranked pair won.
  std::vector<std::pair<std::uint64_t, int>> votes;
  votes.reserve(quadruplets.size());
  for (const Quadruplet& q : quadruplets) {
    CheckPair(pairs, q.winner);
    CheckPair(pairs, q.loser);
    if (q.winner == q.loser) {
      Fail(ErrorCode::kInvalidArgument,
           "a pair cannot be compared with itself");
    }
    const PairRank w = pairs.Rank(q.winner);
    const PairRank l = pairs.Rank(q.loser);
    votes.emplace_back(w < l ? Key(w, l) : Key(l, w), w < l ? +1 : -1);
  }
  std::sort(votes.begin(), votes.end());
  std::vector<std::uint64_t> keys;
  std::vector<bool> low_wins;
  for (std::size_t k = 0; k < votes.size();) {
    std::size_t end = k;
    int tally = 0;
    while (end < votes.size() && votes[end].first == votes[k].first) {
      tally += votes[end].second;
      ++end;
    }
    if (tally != 0) {
      keys.push_back(votes[k].first);
      low_wins.push_back(tally > 0);
    }
    k = end;
  }
  return FromSortedObservations(n_items, std::move(keys), std::move(low_wins));
}

QuadrupletSet QuadrupletSet::FromSortedObservations(
    Index n_items, std::vector<std::uint64_t> keys,
    std::vector<bool> low_wins) {
  Require(keys.size() == low_wins.size(), ErrorCode::kInvalidArgument,
          "observation arrays differ in length");
  QuadrupletSet out;
  out.pairs_ = std::make_shared<PairIndexer>(n_items);
  Require(out.pairs_->size() < (std::uint64_t{1} << 31), ErrorCode::kOutOfRange,
          "too many item pairs for the comparison index");
  for (std::size_t k = 0; k < keys.size(); ++k) {
    const auto low = keys[k] >> 32;
    const auto high = keys[k] & 0xFFFFFFFFu;
    if (low >= high || high >= out.pairs_->size() ||
        (k > 0 && keys[k - 1] >= keys[k])) {
      Fail(ErrorCode::kInvalidArgument,
           "observations must be canonical, sorted and unique");
    }
  }
  out.keys_ = std::move(keys);
  out.low_wins_ = std::move(low_wins);
  out.BuildAdjacency();
  return out;
}

void QuadrupletSet::BuildAdjacency() {
  const std::uint64_t m = pairs_->size();
  offsets_.assign(m + 1, 0);
  for (std::uint64_t key : keys_) {
    ++offsets_[(key >> 32) + 1];
    ++offsets_[(key & 0xFFFFFFFFu) + 1];
  }
  for (std::uint64_t r = 0; r < m; ++r) offsets_[r + 1] += offsets_[r];
  adjacency_.assign(offsets_[m], 0);
  std::vector<std::uint64_t> cursor(offsets_.begin(), offsets_.end() - 1);
  // Keys are sorted by (low, high); every list receives its entries in
  // increasing `other` order: first the lows (as high), then the highs.
  for (std::size_t k = 0; k < keys_.size(); ++k) {
    const auto low = static_cast<std::uint32_t>(keys_[k] >> 32);
    const auto high = static_cast<std::uint32_t>(keys_[k] & 0xFFFFFFFFu);
    const bool lw = low_wins_[k];
    adjacency_[cursor[low]++] = (high << 1) | (lw ? 0u : 1u);
    adjacency_[cursor[high]++] = (low << 1) | (lw ? 1u : 0u);
  }
}

Quadruplet QuadrupletSet::quadruplet(std::size_t k) const {
  const Observation o = observation(k);
  const PairId low = pairs_->Unrank(o.low);
  const PairId high = pairs_->Unrank(o.high);
  return o.low_wins ? Quadruplet{low, high} : Quadruplet{high, low};
}

std::vector<Quadruplet> QuadrupletSet::ToQuadruplets() const {
  std::vector<Quadruplet> out;
  out.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) out.push_back(quadruplet(k));
  return out;
}

int QuadrupletSet::Orientation(PairId p, PairId q) const {
  CheckPair(*pairs_, p);
  CheckPair(*pairs_, q);
  return Orientation(pairs_->Rank(p), pairs_->Rank(q));
}

int QuadrupletSet::Orientation(PairRank p, PairRank q) const {
  if (p == q) return 0;
  const auto begin = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[p]);
  const auto end = adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[p + 1]);
  const auto it = std::lower_bound(begin, end, q << 1);
  if (it == end || (*it >> 1) != q) return 0;
  // Low bit set means q beat p.
  return (*it & 1u) ? -1 : +1;
}

std::vector<QuadrupletSet::Reference> QuadrupletSet::ByReference(PairId p) const {
  CheckPair(*pairs_, p);
  const PairRank r = pairs_->Rank(p);
  std::vector<Reference> out;
  out.reserve(reference_degree(r));
  for (std::size_t k = 0; k < reference_degree(r); ++k) {
    out.push_back(reference_entry(r, k));
  }
  return out;
}

void ActiveOracle::FreeDeleter::operator()(std::uint64_t* p) const {
  std::free(p);
}

ActiveOracle::ActiveOracle(std::shared_ptr<const SimilarityMatrix> w)
    : w_(std::move(w)) {
  Require(w_ != nullptr, ErrorCode::kInvalidArgument, "null similarity matrix");
  pair_count_ = Choose2(static_cast<std::uint64_t>(w_->size()));
  const std::uint64_t slots = Choose2(pair_count_);
  if (slots > 0 && slots <= kMaxDenseCacheSlots) {
    // calloc hands back lazily-zeroed pages, so untouched slots cost nothing.
    const std::uint64_t words = (slots + 31) / 32;
    auto* raw = static_cast<std::uint64_t*>(std::calloc(words, sizeof(std::uint64_t)));
    if (raw == nullptr) Fail(ErrorCode::kInternal, "query cache allocation failed");
    dense_.reset(raw);
  }
}

bool ActiveOracle::LookupOrInsert(std::uint64_t low, std::uint64_t high,
                                  bool low_wins_if_new, bool* low_wins) {
  if (dense_) {
    const std::uint64_t slot = high * (high - 1) / 2 + low;
    std::uint64_t& word = dense_.get()[slot / 32];
    const unsigned shift = static_cast<unsigned>(slot % 32) * 2;
    if ((word >> shift) & 1u) {
      *low_wins = (word >> (shift + 1)) & 1u;
      return true;
    }
    word |= (std::uint64_t{1} | (low_wins_if_new ? 2u : 0u)) << shift;
    *low_wins = low_wins_if_new;
    return false;
  }
  auto [it, inserted] = sparse_.try_emplace(high * pair_count_ + low, low_wins_if_new);
  *low_wins = it->second;
  return !inserted;
}

bool ActiveOracle::Compare(PairId p, PairId q) {
  const Index n = w_->size();
  if (!(p.a >= 0 && p.a < p.b && p.b < n) || !(q.a >= 0 && q.a < q.b && q.b < n)) {
    Fail(ErrorCode::kOutOfRange, "query pair out of range");
  }
  Require(!(p == q), ErrorCode::kInvalidArgument,
          "a pair cannot be compared with itself");
  const auto rank = [n](PairId x) {
    const auto a = static_cast<std::uint64_t>(x.a);
    return a * (2 * static_cast<std::uint64_t>(n) - a - 1) / 2 +
           static_cast<std::uint64_t>(x.b - x.a - 1);
  };
  const bool p_low = p < q;
  const PairId low = p_low ? p : q;
  const PairId high = p_low ? q : p;
  bool low_wins = false;
  const bool cached = LookupOrInsert(rank(low), rank(high),
                                     PairBeats(*w_, low, high), &low_wins);
  if (!cached) ++query_count_;
  return p_low ? low_wins : !low_wins;
}

QuadrupletSet SamplePassive(const SimilarityMatrix& w, double p,
                            std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    Fail(ErrorCode::kInvalidArgument, "sampling probability must be in [0, 1]");
  }
  const Index n = w.size();
  const PairIndexer pairs(n);
  const std::uint64_t m = pairs.size();
  std::vector<double> value(m);
  for (PairRank r = 0; r < m; ++r) value[r] = w(pairs.Unrank(r));

  std::vector<std::uint64_t> keys;
  std::vector<bool> low_wins;
  const std::uint64_t total = Choose2(m);
  if (p == 0.0 || total == 0) {
    return QuadrupletSet::FromSortedObservations(n, {}, {});
  }
  keys.reserve(static_cast<std::size_t>(p * static_cast<double>(total) * 1.01) + 16);
  low_wins.reserve(keys.capacity());
  // The lower-ranked pair is also the lexicographically smaller one, so it
  // wins ties.
  auto emit = [&](std::uint64_t low, std::uint64_t high) {
    keys.push_back(QuadrupletSet::Key(static_cast<PairRank>(low),
                                      static_cast<PairRank>(high)));
    low_wins.push_back(value[low] >= value[high]);
  };
  if (p == 1.0) {
    for (std::uint64_t a = 0; a < m; ++a) {
      for (std::uint64_t b = a + 1; b < m; ++b) emit(a, b);
    }
  } else {
    // Geometric gaps between successes walk the canonical enumeration.
    Rng rng(seed);
    const double log_q = std::log1p(-p);
    std::uint64_t row = 0;
    std::uint64_t col = 1;  // next candidate is (row, col)
    while (row + 1 < m) {
      const double gap_real = std::floor(std::log(rng.UniformOpen()) / log_q);
      std::uint64_t gap = gap_real >= static_cast<double>(total)
                              ? total
                              : static_cast<std::uint64_t>(gap_real);
      while (row + 1 < m && gap >= m - col) {
        gap -= m - col;
        ++row;
        col = row + 1;
      }
      if (row + 1 >= m) break;
      col += gap;
      emit(row, col);
      if (++col == m) {
        ++row;
        col = row + 1;
      }
    }
  }
  return QuadrupletSet::FromSortedObservations(n, std::move(keys),
                                               std::move(low_wins));
}

QuadrupletSet IngestTriplets(Index n_items, std::span<const Triplet> triplets) {
  std::vector<Quadruplet> quads;
  quads.reserve(triplets.size());
  for (std::size_t t = 0; t < triplets.size(); ++t) {
    const Triplet& x = triplets[t];
    if (x.i == x.j || x.i == x.k || x.j == x.k) {
      Fail(ErrorCode::kInvalidArgument,
           "triplet " + std::to_string(t) + " repeats an index");
    }
    quads.push_back({MakePair(x.i, x.j), MakePair(x.i, x.k)});
  }
  return QuadrupletSet::FromQuadruplets(n_items, quads);
}

}  // namespace ordhc
