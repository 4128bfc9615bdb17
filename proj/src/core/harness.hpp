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


// Experiment orchestration behind the CLI: planted-model sweeps, dataset
// runs, kernel dumps and single-row replays. Every random choice is derived
// from the master seed and the row coordinates, so any row can be recomputed
// on its own.

#ifndef ORDHC_CORE_HARNESS_HPP_
#define ORDHC_CORE_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/comparison_oracle.hpp"
#include "core/dendrogram.hpp"
#include "core/planted_model.hpp"

namespace ordhc {

inline constexpr int kResultsSchemaVersion = 1;

enum class MethodKind {
  kSingleLinkage,
  kCompleteLinkage,
  kPassiveKernel,  // 4K-AL
  kActiveKernel,   // 4K-AL-act
  kFourAl,         // 4-AL, 4-AL-I<m>
};

struct Method {
  MethodKind kind = MethodKind::kSingleLinkage;
  // Initial cluster size for 4-AL-I<m>; 0 means singletons.
  Index initial_size = 0;
  std::string name;

  bool needs_similarities() const {
    return kind == MethodKind::kSingleLinkage ||
           kind == MethodKind::kCompleteLinkage ||
           kind == MethodKind::kActiveKernel;
  }
  bool needs_sample() const {
    return kind == MethodKind::kPassiveKernel ||
           kind == MethodKind::kActiveKernel || kind == MethodKind::kFourAl;
  }
};

// SL, CL, 4K-AL, 4K-AL-act, 4-AL, 4-AL-I<m>.
Method ParseMethod(const std::string& name);
// Stable 64-bit id used in seed derivation.
std::uint64_t MethodId(const std::string& name);

struct SweepConfig {
  PlantedConfig planted;  // delta and seed are set per cell
  std::vector<double> delta_grid;
  std::vector<double> p_grid;
  std::vector<std::string> methods;
  int trials = 1;
  double eta = 0.25;
  std::uint64_t master_seed = 0;
  int threads = 1;
  // Landmark probability for 4K-AL-act; ln(N)/N when unset.
  std::optional<double> active_q;
  bool plots = true;

  void Validate() const;
  nlohmann::json ToJson() const;
  static SweepConfig FromJson(const nlohmann::json& j);
};

enum class DatasetInput { kFeatures, kQuadruplets, kTriplets };

struct DatasetConfig {
  DatasetInput input = DatasetInput::kFeatures;
  std::string path;
  // Sampling probabilities; ignored for comparison files.
  std::vector<double> p_grid = {0.1};
  std::vector<std::string> methods;
  int trials = 1;
  std::uint64_t master_seed = 0;
  int threads = 1;
  std::optional<double> active_q;
  bool plots = true;

  void Validate() const;
  nlohmann::json ToJson() const;
  static DatasetConfig FromJson(const nlohmann::json& j);
};

struct ResultRow {
  std::string method;
  int delta_index = 0;
  double delta = 0.0;
  int p_index = 0;
  double p = 0.0;
  int trial = 0;
  std::uint64_t data_seed = 0;
  std::uint64_t sample_seed = 0;
  std::uint64_t method_seed = 0;
  std::string metric;  // "aari", "dasgupta" or "none"
  double value = 0.0;
  // Distinct comparisons the method observed (|Q| or oracle queries).
  std::uint64_t comparisons = 0;
  // Query budget for 4K-AL-act (the cell's |Q|), else 0.
  std::uint64_t budget = 0;
  std::uint64_t landmarks = 0;
  std::uint64_t references = 0;
  double seconds = 0.0;
  std::string status = "ok";
  // Linkage of the learned tree; kept only when the run asks for it.
  std::optional<Dendrogram> tree;

  bool ok() const { return status == "ok"; }
  nlohmann::json ToJson() const;
  static ResultRow FromJson(const nlohmann::json& j);
};

struct RunManifest {
  std::string kind;  // "planted-sweep" or "dataset-run"
  nlohmann::json config;
  std::vector<ResultRow> rows;
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;

  bool all_ok() const;
  nlohmann::json ToJson() const;
};

RunManifest PlantedSweep(const SweepConfig& config);
RunManifest DatasetRun(const DatasetConfig& config);

// Recomputes one planted row in isolation.
ResultRow ComputePlantedRow(const SweepConfig& config, const Method& method,
                            int delta_index, int p_index, int trial);
ResultRow ComputeDatasetRow(const DatasetConfig& config, const Method& method,
                            int p_index, int trial);

// results.csv, summary.csv, manifest.json, *.svg and, for comparison-file
// dataset runs, one linkage CSV per row under dendrograms/.
void WriteRunOutputs(RunManifest& manifest, const std::string& out_dir);

std::string ResultsCsv(const std::vector<ResultRow>& rows);
std::string SummaryCsv(const std::vector<ResultRow>& rows);

struct ReplayOutcome {
  ResultRow recorded;
  ResultRow replayed;
  bool identical = false;
};

// Replays row `row_index` of a manifest.json and compares value and
// comparison count bit for bit.
ReplayOutcome Replay(const std::string& manifest_path, std::size_t row_index);

struct KernelDumpConfig {
  bool active = false;
  // Exactly one source.
  std::optional<PlantedConfig> planted;
  std::string features_path;
  std::string quadruplets_path;
  std::string triplets_path;
  double p = 1.0;         // passive sampling from similarities
  double q = 1.0;         // active landmark probability
  Index references = 1;   // active reference pairs
  std::uint64_t seed = 0;
  int threads = 1;

  static KernelDumpConfig FromJson(const nlohmann::json& j);
};

// Returns the kernel CSV text.
std::string KernelDump(const KernelDumpConfig& config);

}  // namespace ordhc

#endif  // ORDHC_CORE_HARNESS_HPP_
