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

// Quadruplet-based average linkage (4-AL).
//
// For disjoint cluster pairs (Gp, Gq) and (Gr, Gs) the preference
//
//   W_Q(Gp,Gq || Gr,Gs) = C[(p,q),(r,s)] / (|Gp||Gq||Gr||Gs|)
//
// counts observed comparisons "some (i,j) across Gp x Gq beats some (k,l)
// across Gr x Gs" minus the reverse. The linkage of (Gp, Gq) averages its
// preference over every ordered pair (r, s), r != s, of the K current
// clusters:
//
//   W(Gp, Gq) = sum_{r != s} W_Q(Gp,Gq || Gr,Gs) / (K (K - 1)).

#ifndef ORDHC_CORE_QUADRUPLET_LINKAGE_HPP_
#define ORDHC_CORE_QUADRUPLET_LINKAGE_HPP_

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/agglomeration.hpp"
#include "core/comparison_oracle.hpp"
#include "core/planted_model.hpp"

namespace ordhc {

// Linkage values closer than this are treated as equal and resolved by the
// cluster-id tiebreak.
inline constexpr double kLinkageTieTolerance = 1e-12;

// Signed preference counts between pairs of current clusters, built by one
// pass over the comparisons. Stored once per unordered pair-of-cluster-pairs;
// lookups in the other orientation flip the sign.
class ClusterPreferenceTable {
 public:
  ClusterPreferenceTable() = default;
  static ClusterPreferenceTable Build(const QuadrupletSet& comparisons,
                                      const Partition& partition);

  // C[(p,q),(r,s)]; zero when (p,q) and (r,s) are the same cluster pair.
  std::int64_t Count(ClusterId p, ClusterId q, ClusterId r, ClusterId s) const;
  // W_Q(Gp,Gq || Gr,Gs) using the cluster sizes seen at build time.
  double Preference(ClusterId p, ClusterId q, ClusterId r, ClusterId s) const;

  // Sum of |C| over both orientations of every stored entry.
  std::int64_t AbsoluteMass() const;
  std::size_t entry_count() const { return counts_.size(); }
  // (p,q,r,s) with p<q, r<s, (p,q) < (r,s) -> C[(p,q),(r,s)].
  const std::map<std::array<ClusterId, 4>, std::int64_t>& entries() const {
    return counts_;
  }

 private:
  std::map<std::array<ClusterId, 4>, std::int64_t> counts_;
  std::vector<Index> sizes_;  // by cluster id
};

// W_Q(Gp,Gq || Gr,Gs) straight from the comparisons. Rejects p == q, r == s
// and clusters that are not live.
double Preference(const QuadrupletSet& comparisons, const Partition& partition,
                  ClusterId p, ClusterId q, ClusterId r, ClusterId s);

// W(Gp, Gq) straight from the comparisons. Summed as an exact fraction, so the
// result is the correctly rounded W whenever the reduced numerator and
// denominator fit in 53 bits (always for small instances).
double ClusterSimilarity(const QuadrupletSet& comparisons,
                         const Partition& partition, ClusterId p, ClusterId q);

// 4-AL as a linkage strategy. While many clusters are live, per-pair scores
// are kept up to date by re-sweeping only the comparisons that touch the two
// merged clusters. Once the live cluster pairs P satisfy P^2 <= 2^24, a dense
// P x P table of signed counts takes over and is folded on every merge.
class FourAlLinkage : public LinkageStrategy {
 public:
  explicit FourAlLinkage(const QuadrupletSet& comparisons);

  void Initialize(const Partition& initial) override;
  ClusterPair SelectPair(const Partition& current) override;
  void OnMerge(ClusterId a, ClusterId b, ClusterId merged,
               const Partition& current) override;

  // Linkage values computed by the last SelectPair, keyed by cluster pair.
  const std::map<ClusterPair, double>& last_scores() const {
    return last_scores_;
  }
  void set_keep_scores(bool keep) { keep_scores_ = keep; }
  bool dense_active() const { return dense_; }

 private:
  std::uint64_t LivePairCount() const;
  double Weight(std::size_t x, std::size_t y) const;
  double Score(std::size_t x, std::size_t y) const;
  void AddObservation(PairId win, PairId lose, double mult);
  void SweepTouched(const std::vector<Index>& touched,
                    const std::vector<char>& in_touched, double mult);
  void ApplyMerge(std::size_t x, std::size_t y, ClusterId merged,
                  const std::vector<Index>& members);
  std::size_t DensePair(std::size_t dx, std::size_t dy) const;
  void BuildDense();
  void RescoreDense(std::size_t x, std::size_t y);

  const QuadrupletSet& comparisons_;
  std::size_t slots_ = 0;
  std::vector<std::size_t> item_slot_;
  std::vector<std::size_t> cluster_slot_;  // by cluster id
  std::vector<ClusterId> slot_cluster_;
  std::vector<double> slot_size_;
  std::vector<std::size_t> live_;  // live slots, ascending
  // Sparse phase: slots_ x slots_ upper triangle of
  //   S[(x,y)] = sum_V C[(x,y),V] / (|V_1||V_2|).
  std::vector<double> score_;
  // Dense phase: live slots renumbered 0..dense_slots_-1 at the switch.
  bool dense_ = false;
  std::size_t dense_slots_ = 0;
  std::size_t dense_pairs_ = 0;
  std::vector<std::size_t> dense_of_;
  std::vector<std::size_t> live_slot_of_dense_;
  std::vector<std::int32_t> table_;  // dense pair x dense pair counts
  std::vector<double> dense_score_;
  bool keep_scores_ = false;
  std::map<ClusterPair, double> last_scores_;
};

struct FourAlOptions {
  // Rebuild the preference table after every merge and check it against the
  // convex-combination identity; throws kContractViolation on mismatch.
  bool verify_merge_consistency = false;
};

Dendrogram FourAl(const QuadrupletSet& comparisons, const Partition& initial,
                  const FourAlOptions& options = {});

struct MergeConsistencyReport {
  std::uint64_t identities_checked = 0;
  std::uint64_t violations = 0;
};

// After merging a and b into `merged`:
//   C_after[(merged,q),(r,s)] == C_before[(a,q),(r,s)] + C_before[(b,q),(r,s)]
// for all live q, r, s outside {merged}, which is the count form of
//   W_Q(Ga u Gb, Gq || Gr,Gs) = (|Ga| W_Q(Ga,Gq||..) + |Gb| W_Q(Gb,Gq||..))
//                               / (|Ga| + |Gb|),
// and every entry not touching `merged` is unchanged.
MergeConsistencyReport CheckMergeConsistency(
    const ClusterPreferenceTable& before, const ClusterPreferenceTable& after,
    const Partition& after_partition, ClusterId a, ClusterId b,
    ClusterId merged);

enum class InitialPartitionMode { kSingletons, kFromGroundTruth, kFromFile };

struct InitialPartitionConfig {
  InitialPartitionMode mode = InitialPartitionMode::kSingletons;
  // Target initial cluster size for kFromGroundTruth.
  Index m = 1;
  // CSV (item_index,cluster_id) for kFromFile.
  std::string path;
};

// Singletons; or each pure cluster shuffled and cut into size-m pieces, the
// remainder forming one smaller piece; or a partition read from `path`.
Partition MakeInitialPartition(const InitialPartitionConfig& config, Index n,
                               const GroundTruthHierarchy* truth,
                               std::uint64_t seed);

}  // namespace ordhc

#endif  // ORDHC_CORE_QUADRUPLET_LINKAGE_HPP_
