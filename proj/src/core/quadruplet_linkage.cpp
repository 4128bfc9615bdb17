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

#include "core/quadruplet_linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/csv_io.hpp"
#include "core/random.hpp"

namespace ordhc {
namespace {

constexpr std::size_t kNoSlot = std::numeric_limits<std::size_t>::max();

// A dense table of signed counts is kept once (live cluster pairs)^2 fits in
// this many cells.
constexpr std::uint64_t kDenseCellLimit = std::uint64_t{1} << 24;

void RequireLive(const Partition& partition, ClusterId id) {
  if (!partition.IsActive(id)) {
    Fail(ErrorCode::kInvalidArgument,
         "cluster " + std::to_string(id) + " is not live in the partition");
  }
}

void RequireSplitPair(ClusterId x, ClusterId y) {
  if (x == y) {
    Fail(ErrorCode::kInvalidArgument,
         "cluster pair (" + std::to_string(x) + "," + std::to_string(y) +
             ") does not consist of two disjoint clusters");
  }
}

// Cluster pair an item pair straddles, or nullopt-like {-1,-1} when the pair
// sits inside one cluster or touches an uncovered item.
ClusterPair SplitOf(const Partition& partition, PairId p) {
  const ClusterId x = partition.cluster_of(p.a);
  const ClusterId y = partition.cluster_of(p.b);
  if (x < 0 || y < 0 || x == y) return {};
  return MakeClusterPair(x, y);
}

bool Valid(ClusterPair c) { return c.first >= 0; }

using Int128 = __int128;

Int128 Gcd(Int128 a, Int128 b) {
  while (b != 0) {
    const Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// num / den with den > 0, rounded once when both fit in a double mantissa.
double RationalToDouble(Int128 num, Int128 den) {
  const Int128 g = Gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  constexpr Int128 kMantissa = Int128{1} << 53;
  if (num <= kMantissa && -num <= kMantissa && den <= kMantissa) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  return static_cast<double>(static_cast<long double>(num) /
                             static_cast<long double>(den));
}

std::array<ClusterId, 4> EntryKey(ClusterPair u, ClusterPair v) {
  return {u.first, u.second, v.first, v.second};
}

}  // namespace

// --- ClusterPreferenceTable --------------------------------------------------

ClusterPreferenceTable ClusterPreferenceTable::Build(
    const QuadrupletSet& comparisons, const Partition& partition) {
  Require(comparisons.n_items() == partition.n_items(),
          ErrorCode::kInvalidArgument,
          "comparisons and partition disagree on the item count");
  ClusterPreferenceTable table;
  table.sizes_.assign(static_cast<std::size_t>(partition.next_id()), 0);
  for (ClusterId id : partition.active()) {
    table.sizes_[id] = partition.cluster_size(id);
  }
  const PairIndexer& pairs = comparisons.pairs();
  for (std::size_t k = 0; k < comparisons.size(); ++k) {
    const QuadrupletSet::Observation o = comparisons.observation(k);
    const PairId low = pairs.Unrank(o.low);
    const PairId high = pairs.Unrank(o.high);
    const ClusterPair win = SplitOf(partition, o.low_wins ? low : high);
    const ClusterPair lose = SplitOf(partition, o.low_wins ? high : low);
    if (!Valid(win) || !Valid(lose) || win == lose) continue;
    if (win < lose) {
      table.counts_[EntryKey(win, lose)] += 1;
    } else {
      table.counts_[EntryKey(lose, win)] -= 1;
    }
  }
  std::erase_if(table.counts_, [](const auto& e) { return e.second == 0; });
  return table;
}

std::int64_t ClusterPreferenceTable::Count(ClusterId p, ClusterId q,
                                           ClusterId r, ClusterId s) const {
  RequireSplitPair(p, q);
  RequireSplitPair(r, s);
  const ClusterPair u = MakeClusterPair(p, q);
  const ClusterPair v = MakeClusterPair(r, s);
  if (u == v) return 0;
  const bool forward = u < v;
  const auto it = counts_.find(forward ? EntryKey(u, v) : EntryKey(v, u));
  if (it == counts_.end()) return 0;
  return forward ? it->second : -it->second;
}

double ClusterPreferenceTable::Preference(ClusterId p, ClusterId q,
                                          ClusterId r, ClusterId s) const {
  for (ClusterId id : {p, q, r, s}) {
    if (id < 0 || static_cast<std::size_t>(id) >= sizes_.size() ||
        sizes_[id] == 0) {
      Fail(ErrorCode::kInvalidArgument,
           "cluster " + std::to_string(id) + " was not live at build time");
    }
  }
  const double denom = static_cast<double>(sizes_[p]) * sizes_[q] *
                       sizes_[r] * sizes_[s];
  return static_cast<double>(Count(p, q, r, s)) / denom;
}

std::int64_t ClusterPreferenceTable::AbsoluteMass() const {
  std::int64_t total = 0;
  for (const auto& [key, c] : counts_) total += 2 * (c < 0 ? -c : c);
  return total;
}

// --- direct evaluation -------------------------------------------------------

double Preference(const QuadrupletSet& comparisons, const Partition& partition,
                  ClusterId p, ClusterId q, ClusterId r, ClusterId s) {
  for (ClusterId id : {p, q, r, s}) RequireLive(partition, id);
  RequireSplitPair(p, q);
  RequireSplitPair(r, s);
  Require(comparisons.n_items() == partition.n_items(),
          ErrorCode::kInvalidArgument,
          "comparisons and partition disagree on the item count");
  const ClusterPair u = MakeClusterPair(p, q);
  const ClusterPair v = MakeClusterPair(r, s);
  const PairIndexer& pairs = comparisons.pairs();
  std::int64_t count = 0;
  for (std::size_t k = 0; k < comparisons.size(); ++k) {
    const QuadrupletSet::Observation o = comparisons.observation(k);
    const PairId low = pairs.Unrank(o.low);
    const PairId high = pairs.Unrank(o.high);
    const ClusterPair win = SplitOf(partition, o.low_wins ? low : high);
    const ClusterPair lose = SplitOf(partition, o.low_wins ? high : low);
    count += (win == u && lose == v) ? 1 : 0;
    count -= (win == v && lose == u) ? 1 : 0;
  }
  const double denom =
      static_cast<double>(partition.cluster_size(p)) *
      partition.cluster_size(q) * partition.cluster_size(r) *
      partition.cluster_size(s);
  return static_cast<double>(count) / denom;
}

double ClusterSimilarity(const QuadrupletSet& comparisons,
                         const Partition& partition, ClusterId p,
                         ClusterId q) {
  RequireLive(partition, p);
  RequireLive(partition, q);
  RequireSplitPair(p, q);
  Require(comparisons.n_items() == partition.n_items(),
          ErrorCode::kInvalidArgument,
          "comparisons and partition disagree on the item count");
  const auto k = static_cast<std::int64_t>(partition.size());
  const ClusterPair u = MakeClusterPair(p, q);
  const PairIndexer& pairs = comparisons.pairs();
  // Signed counts grouped by |Gr||Gs|; each unordered (r,s) stands for both
  // orders, hence the 2.
  std::map<std::int64_t, std::int64_t> by_size;
  auto size_of = [&](ClusterPair c) {
    return std::int64_t{partition.cluster_size(c.first)} *
           partition.cluster_size(c.second);
  };
  for (std::size_t n = 0; n < comparisons.size(); ++n) {
    const QuadrupletSet::Observation o = comparisons.observation(n);
    const PairId low = pairs.Unrank(o.low);
    const PairId high = pairs.Unrank(o.high);
    const ClusterPair win = SplitOf(partition, o.low_wins ? low : high);
    const ClusterPair lose = SplitOf(partition, o.low_wins ? high : low);
    if (!Valid(win) || !Valid(lose) || win == lose) continue;
    if (win == u) by_size[size_of(lose)] += 2;
    if (lose == u) by_size[size_of(win)] -= 2;
  }
  const std::int64_t outer = size_of(u) * k * (k - 1);
  // Exact rational while the denominator stays small, so the value is the
  // correctly rounded W whenever numerator and denominator fit in 53 bits.
  constexpr Int128 kDenominatorCap = Int128{1} << 96;
  Int128 num = 0;
  Int128 den = 1;
  bool exact = true;
  for (const auto& [d, c] : by_size) {
    const Int128 g = Gcd(den, d);
    const Int128 next = den / g * d;
    if (next > kDenominatorCap) {
      exact = false;
      break;
    }
    num = num * (next / den) + Int128{c} * (next / d);
    den = next;
    const Int128 r = Gcd(num < 0 ? -num : num, den);
    if (r > 1) {
      num /= r;
      den /= r;
    }
  }
  if (exact && den <= kDenominatorCap / outer) return RationalToDouble(num, den * outer);
  double sum = 0.0;
  for (const auto& [d, c] : by_size) sum += static_cast<double>(c) / static_cast<double>(d);
  return sum / static_cast<double>(outer);
}

// --- FourAlLinkage -----------------------------------------------------------

FourAlLinkage::FourAlLinkage(const QuadrupletSet& comparisons)
    : comparisons_(comparisons) {}

void FourAlLinkage::Initialize(const Partition& initial) {
  Require(initial.n_items() == comparisons_.n_items(),
          ErrorCode::kInvalidArgument,
          "comparisons and partition disagree on the item count");
  const std::vector<ClusterId>& ids = initial.active();
  slots_ = ids.size();
  slot_cluster_ = ids;
  cluster_slot_.assign(static_cast<std::size_t>(initial.next_id()) + slots_,
                       kNoSlot);
  slot_size_.assign(slots_, 0.0);
  live_.resize(slots_);
  for (std::size_t s = 0; s < slots_; ++s) {
    cluster_slot_[ids[s]] = s;
    slot_size_[s] = initial.cluster_size(ids[s]);
    live_[s] = s;
  }
  item_slot_.assign(static_cast<std::size_t>(initial.n_items()), kNoSlot);
  for (Index i = 0; i < initial.n_items(); ++i) {
    const ClusterId c = initial.cluster_of(i);
    if (c >= 0) item_slot_[i] = cluster_slot_[c];
  }
  dense_ = false;
  table_.clear();
  score_.assign(slots_ * slots_, 0.0);
  if (LivePairCount() * LivePairCount() <= kDenseCellLimit) {
    BuildDense();
    return;
  }
  // S[(x,y)] = sum over cluster pairs V of C[(x,y),V] / (|V_1||V_2|).
  const PairIndexer& pairs = comparisons_.pairs();
  for (std::size_t k = 0; k < comparisons_.size(); ++k) {
    const QuadrupletSet::Observation o = comparisons_.observation(k);
    const PairId low = pairs.Unrank(o.low);
    const PairId high = pairs.Unrank(o.high);
    const PairId win = o.low_wins ? low : high;
    const PairId lose = o.low_wins ? high : low;
    AddObservation(win, lose, 1.0);
  }
}

std::uint64_t FourAlLinkage::LivePairCount() const {
  return Choose2(live_.size());
}

double FourAlLinkage::Weight(std::size_t x, std::size_t y) const {
  return 1.0 / (slot_size_[x] * slot_size_[y]);
}

void FourAlLinkage::AddObservation(PairId win, PairId lose, double mult) {
  std::size_t a = item_slot_[win.a];
  std::size_t b = item_slot_[win.b];
  std::size_t c = item_slot_[lose.a];
  std::size_t d = item_slot_[lose.b];
  if (a == kNoSlot || b == kNoSlot || c == kNoSlot || d == kNoSlot) return;
  if (a == b || c == d) return;
  if (a > b) std::swap(a, b);
  if (c > d) std::swap(c, d);
  if (a == c && b == d) return;
  score_[a * slots_ + b] += mult * Weight(c, d);
  score_[c * slots_ + d] -= mult * Weight(a, b);
}

// Applies (mult = +1) or removes (mult = -1) every observation with at least
// one side straddling a cluster boundary at an item of `touched`. Each such
// observation is visited from exactly one of its sides.
void FourAlLinkage::SweepTouched(const std::vector<Index>& touched,
                                 const std::vector<char>& in_touched,
                                 double mult) {
  const PairIndexer& pairs = comparisons_.pairs();
  const Index n = comparisons_.n_items();
  auto is_touched = [&](PairId p) {
    return in_touched[p.a] != 0 || in_touched[p.b] != 0;
  };
  for (Index i : touched) {
    for (Index j = 0; j < n; ++j) {
      if (j == i || (in_touched[j] != 0 && j < i)) continue;
      if (item_slot_[i] == item_slot_[j]) continue;
      const PairId self = MakePair(i, j);
      const PairRank r = pairs.Rank(self);
      const std::size_t degree = comparisons_.reference_degree(r);
      for (std::size_t e = 0; e < degree; ++e) {
        const QuadrupletSet::Reference ref = comparisons_.reference_entry(r, e);
        const PairId other = pairs.Unrank(ref.other);
        if (ref.other < r && is_touched(other)) continue;
        if (ref.sign > 0) {
          AddObservation(other, self, mult);
        } else {
          AddObservation(self, other, mult);
        }
      }
    }
  }
}

std::size_t FourAlLinkage::DensePair(std::size_t dx, std::size_t dy) const {
  if (dx > dy) std::swap(dx, dy);
  return dx * (2 * dense_slots_ - dx - 1) / 2 + (dy - dx - 1);
}

void FourAlLinkage::BuildDense() {
  dense_ = true;
  dense_slots_ = live_.size();
  dense_of_.assign(slots_, kNoSlot);
  live_slot_of_dense_ = live_;
  for (std::size_t k = 0; k < live_.size(); ++k) dense_of_[live_[k]] = k;
  Require(comparisons_.size() < 0x7FFFFFFFu, ErrorCode::kOutOfRange,
          "too many comparisons for 32-bit preference counts");
  dense_pairs_ = Choose2(dense_slots_);
  table_.assign(dense_pairs_ * dense_pairs_, 0);
  const PairIndexer& pairs = comparisons_.pairs();
  for (std::size_t k = 0; k < comparisons_.size(); ++k) {
    const QuadrupletSet::Observation o = comparisons_.observation(k);
    const PairId low = pairs.Unrank(o.low);
    const PairId high = pairs.Unrank(o.high);
    const PairId win = o.low_wins ? low : high;
    const PairId lose = o.low_wins ? high : low;
    const std::size_t a = item_slot_[win.a];
    const std::size_t b = item_slot_[win.b];
    const std::size_t c = item_slot_[lose.a];
    const std::size_t d = item_slot_[lose.b];
    if (a == kNoSlot || b == kNoSlot || c == kNoSlot || d == kNoSlot) continue;
    if (a == b || c == d) continue;
    const std::size_t u = DensePair(dense_of_[a], dense_of_[b]);
    const std::size_t v = DensePair(dense_of_[c], dense_of_[d]);
    if (u == v) continue;
    table_[u * dense_pairs_ + v] += 1;
    table_[v * dense_pairs_ + u] -= 1;
  }
  dense_score_.assign(dense_pairs_, 0.0);
  for (std::size_t x = 0; x < live_.size(); ++x) {
    for (std::size_t y = x + 1; y < live_.size(); ++y) RescoreDense(x, y);
  }
  score_.clear();
  score_.shrink_to_fit();
}

// Full recomputation of one live pair's score from its table row. Arguments
// are positions in live_.
void FourAlLinkage::RescoreDense(std::size_t x, std::size_t y) {
  const std::size_t u = DensePair(dense_of_[live_[x]], dense_of_[live_[y]]);
  const std::int32_t* row = &table_[u * dense_pairs_];
  double s = 0.0;
  for (std::size_t c = 0; c < live_.size(); ++c) {
    const std::size_t dc = dense_of_[live_[c]];
    for (std::size_t d = c + 1; d < live_.size(); ++d) {
      const std::int32_t t = row[DensePair(dc, dense_of_[live_[d]])];
      if (t != 0) s += t * Weight(live_[c], live_[d]);
    }
  }
  dense_score_[u] = s;
}

double FourAlLinkage::Score(std::size_t x, std::size_t y) const {
  if (dense_) return dense_score_[DensePair(dense_of_[x], dense_of_[y])];
  return x < y ? score_[x * slots_ + y] : score_[y * slots_ + x];
}

ClusterPair FourAlLinkage::SelectPair(const Partition& current) {
  Require(current.size() == live_.size(), ErrorCode::kContractViolation,
          "partition is out of step with the linkage state");
  if (!dense_ && LivePairCount() * LivePairCount() <= kDenseCellLimit) {
    BuildDense();
  }
  const double k = static_cast<double>(live_.size());
  const double norm = 2.0 / (k * (k - 1.0));
  std::vector<std::pair<ClusterPair, double>> values;
  values.reserve(LivePairCount());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t x = 0; x < live_.size(); ++x) {
    for (std::size_t y = x + 1; y < live_.size(); ++y) {
      const std::size_t sx = live_[x];
      const std::size_t sy = live_[y];
      const double w = Score(sx, sy) * Weight(sx, sy) * norm;
      values.emplace_back(MakeClusterPair(slot_cluster_[sx], slot_cluster_[sy]),
                          w);
      best = std::max(best, w);
    }
  }
  ClusterPair pick;
  bool have = false;
  for (const auto& [pair, w] : values) {
    if (w >= best - kLinkageTieTolerance && (!have || pair < pick)) {
      pick = pair;
      have = true;
    }
  }
  if (keep_scores_) {
    last_scores_.clear();
    for (const auto& [pair, w] : values) last_scores_.emplace(pair, w);
  }
  return pick;
}

void FourAlLinkage::OnMerge(ClusterId a, ClusterId b, ClusterId merged,
                            const Partition& current) {
  std::size_t x = cluster_slot_[a];
  std::size_t y = cluster_slot_[b];
  if (x > y) std::swap(x, y);
  if (static_cast<std::size_t>(merged) >= cluster_slot_.size()) {
    cluster_slot_.resize(static_cast<std::size_t>(merged) + 1, kNoSlot);
  }
  const std::vector<Index>& touched = current.members(merged);

  if (!dense_) {
    std::vector<char> in_touched(item_slot_.size(), 0);
    for (Index i : touched) in_touched[i] = 1;
    SweepTouched(touched, in_touched, -1.0);
    ApplyMerge(x, y, merged, touched);
    // Entries of the merged cluster now hold only rounding residue.
    for (std::size_t s = 0; s < slots_; ++s) {
      score_[std::min(s, x) * slots_ + std::max(s, x)] = 0.0;
    }
    SweepTouched(touched, in_touched, 1.0);
    return;
  }

  const std::size_t dx = dense_of_[x];
  const std::size_t dy = dense_of_[y];
  const std::size_t stride = dense_pairs_;
  std::vector<std::size_t> others;  // dense ids of live slots other than x, y
  for (std::size_t s : live_) {
    if (s != x && s != y) others.push_back(dense_of_[s]);
  }
  std::vector<double> old_wx(others.size());
  std::vector<double> old_wy(others.size());
  for (std::size_t k = 0; k < others.size(); ++k) {
    const std::size_t s = live_slot_of_dense_[others[k]];
    old_wx[k] = Weight(x, s);
    old_wy[k] = Weight(y, s);
  }
  const double old_wxy = Weight(x, y);
  const std::size_t uxy = DensePair(dx, dy);

  // Pairs not touching the merged clusters: drop their old terms against
  // (x,*) and (y,*), fold the y columns into x, then add the new terms.
  for (std::size_t p = 0; p < others.size(); ++p) {
    for (std::size_t q = p + 1; q < others.size(); ++q) {
      const std::size_t u = DensePair(others[p], others[q]);
      std::int32_t* row = &table_[u * stride];
      double delta = -row[uxy] * old_wxy;
      for (std::size_t k = 0; k < others.size(); ++k) {
        const std::size_t ux = DensePair(dx, others[k]);
        const std::size_t uy = DensePair(dy, others[k]);
        delta -= row[ux] * old_wx[k] + row[uy] * old_wy[k];
        row[ux] += row[uy];
      }
      dense_score_[u] += delta;
    }
  }
  // Rows of (x,c) absorb rows of (y,c).
  for (std::size_t k = 0; k < others.size(); ++k) {
    std::int32_t* rx = &table_[DensePair(dx, others[k]) * stride];
    const std::int32_t* ry = &table_[DensePair(dy, others[k]) * stride];
    for (std::size_t v = 0; v < stride; ++v) rx[v] += ry[v];
    for (std::size_t j = 0; j < others.size(); ++j) {
      rx[DensePair(dx, others[j])] += rx[DensePair(dy, others[j])];
    }
  }

  ApplyMerge(x, y, merged, touched);

  for (std::size_t p = 0; p < others.size(); ++p) {
    for (std::size_t q = p + 1; q < others.size(); ++q) {
      const std::size_t u = DensePair(others[p], others[q]);
      const std::int32_t* row = &table_[u * stride];
      double delta = 0.0;
      for (std::size_t k = 0; k < others.size(); ++k) {
        delta += row[DensePair(dx, others[k])] *
                 Weight(x, live_slot_of_dense_[others[k]]);
      }
      dense_score_[u] += delta;
    }
  }
  const std::size_t px = static_cast<std::size_t>(
      std::find(live_.begin(), live_.end(), x) - live_.begin());
  for (std::size_t c = 0; c < live_.size(); ++c) {
    if (c != px) RescoreDense(std::min(c, px), std::max(c, px));
  }
}

// Moves the members of slot y into slot x and retires y.
void FourAlLinkage::ApplyMerge(std::size_t x, std::size_t y, ClusterId merged,
                               const std::vector<Index>& members) {
  for (Index i : members) item_slot_[i] = x;
  slot_size_[x] += slot_size_[y];
  slot_size_[y] = 0.0;
  slot_cluster_[x] = merged;
  cluster_slot_[merged] = x;
  live_.erase(std::find(live_.begin(), live_.end(), y));
}

Dendrogram FourAl(const QuadrupletSet& comparisons, const Partition& initial,
                  const FourAlOptions& options) {
  FourAlLinkage linkage(comparisons);
  if (!options.verify_merge_consistency) {
    return Agglomerate(linkage, initial);
  }
  ClusterPreferenceTable before =
      ClusterPreferenceTable::Build(comparisons, initial);
  MergeObserver check = [&](ClusterId a, ClusterId b, ClusterId merged,
                            const Partition& current) {
    ClusterPreferenceTable after =
        ClusterPreferenceTable::Build(comparisons, current);
    const MergeConsistencyReport report =
        CheckMergeConsistency(before, after, current, a, b, merged);
    if (report.violations != 0) {
      Fail(ErrorCode::kContractViolation,
           "merge of clusters " + std::to_string(a) + " and " +
               std::to_string(b) + " broke " +
               std::to_string(report.violations) +
               " preference identities");
    }
    before = std::move(after);
  };
  return Agglomerate(linkage, initial, check);
}

MergeConsistencyReport CheckMergeConsistency(
    const ClusterPreferenceTable& before, const ClusterPreferenceTable& after,
    const Partition& after_partition, ClusterId a, ClusterId b,
    ClusterId merged) {
  MergeConsistencyReport report;
  std::vector<ClusterId> rest;
  for (ClusterId id : after_partition.active()) {
    if (id != merged) rest.push_back(id);
  }
  auto expect = [&](bool ok) {
    ++report.identities_checked;
    if (!ok) ++report.violations;
  };
  const ClusterId parts[2] = {a, b};
  for (ClusterId q : rest) {
    // (merged, q) against pairs among the other clusters.
    for (std::size_t r = 0; r < rest.size(); ++r) {
      for (std::size_t s = r + 1; s < rest.size(); ++s) {
        std::int64_t sum = 0;
        for (ClusterId g : parts) sum += before.Count(g, q, rest[r], rest[s]);
        expect(after.Count(merged, q, rest[r], rest[s]) == sum);
      }
    }
    // (merged, q) against (merged, t): both sides split.
    for (ClusterId t : rest) {
      if (t <= q) continue;
      std::int64_t sum = 0;
      for (ClusterId g : parts) {
        for (ClusterId h : parts) sum += before.Count(g, q, h, t);
      }
      expect(after.Count(merged, q, merged, t) == sum);
    }
  }
  // Entries away from the merge are unchanged.
  for (std::size_t p = 0; p < rest.size(); ++p) {
    for (std::size_t q = p + 1; q < rest.size(); ++q) {
      for (std::size_t r = p; r < rest.size(); ++r) {
        for (std::size_t s = r + 1; s < rest.size(); ++s) {
          if (r == p && s <= q) continue;
          expect(after.Count(rest[p], rest[q], rest[r], rest[s]) ==
                 before.Count(rest[p], rest[q], rest[r], rest[s]));
        }
      }
    }
  }
  return report;
}

Partition MakeInitialPartition(const InitialPartitionConfig& config, Index n,
                               const GroundTruthHierarchy* truth,
                               std::uint64_t seed) {
  switch (config.mode) {
    case InitialPartitionMode::kSingletons:
      return Partition::Singletons(n);
    case InitialPartitionMode::kFromGroundTruth: {
      Require(truth != nullptr, ErrorCode::kInvalidArgument,
              "initial clusters from ground truth need a planted hierarchy");
      Require(truth->item_count() == n, ErrorCode::kInvalidArgument,
              "planted hierarchy and item count disagree");
      if (config.m < 1 || config.m > truth->n0()) {
        Fail(ErrorCode::kInvalidArgument,
             "initial cluster size m=" + std::to_string(config.m) +
                 " must lie in [1, " + std::to_string(truth->n0()) + "]");
      }
      Rng rng(seed);
      std::vector<std::vector<Index>> clusters;
      for (Index g = 0; g < truth->pure_cluster_count(); ++g) {
        std::vector<Index> items(static_cast<std::size_t>(truth->n0()));
        for (Index k = 0; k < truth->n0(); ++k) items[k] = g * truth->n0() + k;
        for (std::size_t k = items.size(); k > 1; --k) {
          std::swap(items[k - 1], items[rng.Below(k)]);
        }
        for (std::size_t start = 0; start < items.size();
             start += static_cast<std::size_t>(config.m)) {
          const std::size_t stop =
              std::min(items.size(), start + static_cast<std::size_t>(config.m));
          clusters.emplace_back(items.begin() + static_cast<std::ptrdiff_t>(start),
                                items.begin() + static_cast<std::ptrdiff_t>(stop));
        }
      }
      return Partition::FromClusters(std::move(clusters), n);
    }
    case InitialPartitionMode::kFromFile: {
      const std::vector<Index> labels = ReadPartitionCsv(config.path, n);
      for (Index i = 0; i < n; ++i) {
        if (labels[i] < 0) {
          Fail(ErrorCode::kInvalidArgument,
               "initial partition file " + config.path + " leaves item " +
                   std::to_string(i) + " unassigned");
        }
      }
      return Partition::FromLabels(labels);
    }
  }
  Fail(ErrorCode::kInternal, "unknown initial partition mode");
}

}  // namespace ordhc
