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


#include "core/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "core/csv_io.hpp"
#include "core/evaluation.hpp"
#include "core/ordinal_linkage.hpp"
#include "core/quadruplet_kernel.hpp"
#include "core/quadruplet_linkage.hpp"
#include "core/random.hpp"
#include "core/svg_plot.hpp"

namespace ordhc {
namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

// Seed streams.
constexpr std::uint64_t kDataStream = 1;
constexpr std::uint64_t kSampleStream = 2;
constexpr std::uint64_t kMethodStream = 3;

constexpr Index kDatasetWarnSize = 240;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::vector<Method> ParseMethods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const std::string& n : names) out.push_back(ParseMethod(n));
  return out;
}

// What a single method run produced.
struct Outcome {
  Dendrogram tree;
  std::uint64_t comparisons = 0;
  std::uint64_t budget = 0;
  std::uint64_t landmarks = 0;
  std::uint64_t references = 0;
};

double DefaultActiveQ(Index n) {
  return std::min(1.0, std::log(static_cast<double>(n)) / n);
}

Outcome RunOrdinal(const Method& method,
                   const std::shared_ptr<const SimilarityMatrix>& w) {
  ActiveOracle oracle(w);
  const OrdinalLinkageResult r =
      method.kind == MethodKind::kSingleLinkage
          ? SingleLinkage(oracle, w->size())
          : CompleteLinkage(oracle, w->size());
  return {r.dendrogram, r.queries_used, 0, 0, 0};
}

Outcome RunActiveKernel(const std::shared_ptr<const SimilarityMatrix>& w,
                        std::uint64_t budget, std::optional<double> q,
                        std::uint64_t seed) {
  ActiveOracle oracle(w);
  ActiveKernelConfig config;
  config.q = q.value_or(DefaultActiveQ(w->size()));
  config.seed = seed;
  // An empty passive sample still gets one reference pair.
  config.query_budget = std::max<std::uint64_t>(budget, 1);
  const ActiveKernelResult r = ActiveKernel(oracle, w->size(), config);
  return {AverageLinkageOnKernel(r.kernel), r.queries_used, budget,
          r.landmarks.size(), r.references.size()};
}

Outcome RunPassive(const Method& method, const QuadrupletSet& q,
                   const GroundTruthHierarchy* truth, std::uint64_t seed,
                   int threads) {
  Outcome out;
  out.comparisons = q.size();
  if (method.kind == MethodKind::kPassiveKernel) {
    out.tree = AverageLinkageOnKernel(PassiveKernel(q, threads));
    return out;
  }
  InitialPartitionConfig init;
  if (method.initial_size > 0) {
    init.mode = InitialPartitionMode::kFromGroundTruth;
    init.m = method.initial_size;
  }
  const Partition initial = MakeInitialPartition(init, q.n_items(), truth, seed);
  out.tree = FourAl(q, initial);
  return out;
}

void FillRow(ResultRow& row, const Outcome& o) {
  row.comparisons = o.comparisons;
  row.budget = o.budget;
  row.landmarks = o.landmarks;
  row.references = o.references;
}

template <typename F>
void Guarded(ResultRow& row, F&& body) {
  const Clock::time_point start = Clock::now();
  try {
    body();
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
    row.value = std::numeric_limits<double>::quiet_NaN();
  }
  row.seconds = Seconds(start);
}

// Runs `count` independent tasks on up to `threads` workers.
template <typename F>
void ParallelFor(std::size_t count, int threads, F&& task) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t k = 0; k < count; ++k) task(k);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (std::size_t k = next++; k < count; k = next++) task(k);
    });
  }
  for (std::thread& t : pool) t.join();
}

std::vector<double> ReadDoubles(const json& j, const char* key) {
  std::vector<double> out;
  for (const json& v : j.at(key)) out.push_back(v.get<double>());
  return out;
}

double JsonDouble(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

PlantedConfig PlantedFromJson(const json& j) {
  PlantedConfig c;
  c.n0 = j.value("n0", c.n0);
  c.levels = j.value("levels", c.levels);
  c.mu = j.value("mu", c.mu);
  c.delta = j.value("delta", c.delta);
  c.sigma = j.value("sigma", c.sigma);
  c.seed = j.value("seed", c.seed);
  return c;
}

json PlantedToJson(const PlantedConfig& c) {
  return {{"n0", c.n0}, {"levels", c.levels}, {"mu", c.mu},
          {"delta", c.delta}, {"sigma", c.sigma}, {"seed", c.seed}};
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string CsvNumber(double v) { return std::isfinite(v) ? FormatDouble(v) : ""; }

struct CellKey {
  std::string method;
  int delta_index;
  int p_index;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

struct CellStats {
  double delta = 0;
  double p = 0;
  std::string metric;
  int trials = 0;
  int completed = 0;
  double mean = 0;
  double stddev = 0;
  double mean_comparisons = 0;
};

// Cells in first-appearance order, so methods keep the configured order.
std::vector<std::pair<CellKey, CellStats>> Summarize(
    const std::vector<ResultRow>& rows) {
  std::vector<std::pair<CellKey, CellStats>> cells;
  std::map<CellKey, std::size_t> where;
  std::vector<std::vector<const ResultRow*>> members;
  for (const ResultRow& r : rows) {
    const CellKey key{r.method, r.delta_index, r.p_index};
    auto [it, fresh] = where.emplace(key, cells.size());
    if (fresh) {
      CellStats s;
      s.delta = r.delta;
      s.p = r.p;
      s.metric = r.metric;
      cells.emplace_back(key, s);
      members.emplace_back();
    }
    members[it->second].push_back(&r);
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellStats& s = cells[c].second;
    std::vector<double> values;
    double comparisons = 0;
    for (const ResultRow* r : members[c]) {
      ++s.trials;
      if (!r->ok() || !std::isfinite(r->value)) continue;
      values.push_back(r->value);
      comparisons += static_cast<double>(r->comparisons);
    }
    s.completed = static_cast<int>(values.size());
    if (values.empty()) {
      s.mean = s.stddev = s.mean_comparisons =
          std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / values.size();
    double sq = 0;
    for (double v : values) sq += (v - s.mean) * (v - s.mean);
    s.stddev = values.size() > 1 ? std::sqrt(sq / (values.size() - 1)) : 0.0;
    s.mean_comparisons = comparisons / values.size();
  }
  return cells;
}

void SortRows(std::vector<ResultRow>& rows,
              const std::vector<std::string>& method_order) {
  auto rank = [&](const std::string& m) {
    return std::find(method_order.begin(), method_order.end(), m) -
           method_order.begin();
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const ResultRow& a, const ResultRow& b) {
                     return std::tuple(a.delta_index, a.p_index, a.trial,
                                       rank(a.method)) <
                            std::tuple(b.delta_index, b.p_index, b.trial,
                                       rank(b.method));
                   });
}

// --- planted ----------------------------------------------------------------

struct PlantedSeeds {
  std::uint64_t data;
  std::uint64_t sample;
};

PlantedSeeds SeedsFor(const SweepConfig& c, int di, int pi, int trial) {
  return {DeriveSeed(c.master_seed, {kDataStream, static_cast<std::uint64_t>(di),
                                     static_cast<std::uint64_t>(trial)}),
          DeriveSeed(c.master_seed,
                     {kSampleStream, static_cast<std::uint64_t>(di),
                      static_cast<std::uint64_t>(pi),
                      static_cast<std::uint64_t>(trial)})};
}

std::uint64_t MethodSeed(std::uint64_t master, int di, int pi, int trial,
                         const std::string& method) {
  return DeriveSeed(master, {kMethodStream, static_cast<std::uint64_t>(di),
                             static_cast<std::uint64_t>(pi),
                             static_cast<std::uint64_t>(trial), MethodId(method)});
}

ResultRow PlantedRowSkeleton(const SweepConfig& c, const Method& m, int di,
                             int pi, int trial) {
  ResultRow row;
  row.method = m.name;
  row.delta_index = di;
  row.delta = c.delta_grid[di];
  row.p_index = pi;
  row.p = c.p_grid[pi];
  row.trial = trial;
  const PlantedSeeds seeds = SeedsFor(c, di, pi, trial);
  row.data_seed = seeds.data;
  row.sample_seed = seeds.sample;
  row.method_seed = MethodSeed(c.master_seed, di, pi, trial, m.name);
  row.metric = "aari";
  return row;
}

PlantedInstance PlantedData(const SweepConfig& c, int di, int trial) {
  PlantedConfig pc = c.planted;
  pc.delta = c.delta_grid[di];
  pc.seed = SeedsFor(c, di, 0, trial).data;
  return GeneratePlanted(pc);
}

// All rows of one (delta, trial) task.
std::vector<ResultRow> PlantedTask(const SweepConfig& c,
                                   const std::vector<Method>& methods, int di,
                                   int trial) {
  std::vector<ResultRow> rows;
  std::shared_ptr<const SimilarityMatrix> w;
  GroundTruthHierarchy truth;
  std::string data_error;
  try {
    PlantedInstance inst = PlantedData(c, di, trial);
    truth = inst.truth;
    w = std::make_shared<const SimilarityMatrix>(std::move(inst.similarities));
  } catch (const std::exception& e) {
    data_error = std::string("error: ") + e.what();
  }
  const int np = static_cast<int>(c.p_grid.size());
  if (!data_error.empty()) {
    for (int pi = 0; pi < np; ++pi) {
      for (const Method& m : methods) {
        ResultRow row = PlantedRowSkeleton(c, m, di, pi, trial);
        row.status = data_error;
        row.value = std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
      }
    }
    return rows;
  }

  // SL and CL do not look at p: run them once and repeat the row per p.
  std::map<std::string, ResultRow> ordinal;
  for (const Method& m : methods) {
    if (m.kind != MethodKind::kSingleLinkage &&
        m.kind != MethodKind::kCompleteLinkage) {
      continue;
    }
    ResultRow row = PlantedRowSkeleton(c, m, di, 0, trial);
    Guarded(row, [&] {
      const Outcome o = RunOrdinal(m, w);
      FillRow(row, o);
      row.value = Aari(truth, o.tree);
    });
    ordinal.emplace(m.name, row);
  }

  for (int pi = 0; pi < np; ++pi) {
    const bool want_sample =
        std::any_of(methods.begin(), methods.end(),
                    [](const Method& m) { return m.needs_sample(); });
    std::unique_ptr<QuadrupletSet> q;
    std::string sample_error;
    if (want_sample) {
      try {
        q = std::make_unique<QuadrupletSet>(
            SamplePassive(*w, c.p_grid[pi], SeedsFor(c, di, pi, trial).sample));
      } catch (const std::exception& e) {
        sample_error = std::string("error: ") + e.what();
      }
    }
    const std::uint64_t budget = q ? q->size() : 0;
    std::vector<ResultRow> cell(methods.size());
    // Passive methods first so the sample can be released before the active
    // kernel builds its oracle cache.
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const Method& m = methods[k];
      if (m.kind == MethodKind::kSingleLinkage ||
          m.kind == MethodKind::kCompleteLinkage) {
        ResultRow row = ordinal.at(m.name);
        const ResultRow skeleton = PlantedRowSkeleton(c, m, di, pi, trial);
        row.p_index = pi;
        row.p = skeleton.p;
        row.sample_seed = skeleton.sample_seed;
        row.method_seed = skeleton.method_seed;
        cell[k] = row;
        continue;
      }
      if (m.kind == MethodKind::kActiveKernel) continue;
      ResultRow row = PlantedRowSkeleton(c, m, di, pi, trial);
      Guarded(row, [&] {
        if (!sample_error.empty()) Fail(ErrorCode::kInternal, sample_error);
        const Outcome o = RunPassive(m, *q, &truth, row.method_seed, 1);
        FillRow(row, o);
        row.value = Aari(truth, o.tree);
      });
      cell[k] = row;
    }
    q.reset();
    for (std::size_t k = 0; k < methods.size(); ++k) {
      const Method& m = methods[k];
      if (m.kind != MethodKind::kActiveKernel) continue;
      ResultRow row = PlantedRowSkeleton(c, m, di, pi, trial);
      Guarded(row, [&] {
        if (!sample_error.empty()) Fail(ErrorCode::kInternal, sample_error);
        const Outcome o = RunActiveKernel(w, budget, c.active_q, row.method_seed);
        FillRow(row, o);
        row.value = Aari(truth, o.tree);
      });
      cell[k] = row;
    }
    rows.insert(rows.end(), cell.begin(), cell.end());
  }
  return rows;
}

// --- dataset ----------------------------------------------------------------

struct DatasetData {
  std::shared_ptr<const SimilarityMatrix> w;  // features only
  std::shared_ptr<const QuadrupletSet> fixed;  // comparison files only
  Index n = 0;
};

DatasetData LoadDataset(const DatasetConfig& c) {
  DatasetData d;
  switch (c.input) {
    case DatasetInput::kFeatures: {
      d.w = std::make_shared<const SimilarityMatrix>(
          CosineSimilarityMatrix(ReadFeaturesCsv(c.path)));
      d.n = d.w->size();
      break;
    }
    case DatasetInput::kQuadruplets: {
      const QuadrupletFile f = ReadQuadrupletsCsv(c.path);
      d.fixed = std::make_shared<const QuadrupletSet>(
          QuadrupletSet::FromQuadruplets(f.n_items, f.quadruplets));
      d.n = f.n_items;
      break;
    }
    case DatasetInput::kTriplets: {
      const TripletFile f = ReadTripletsCsv(c.path);
      d.fixed = std::make_shared<const QuadrupletSet>(
          IngestTriplets(f.n_items, f.triplets));
      d.n = f.n_items;
      break;
    }
  }
  return d;
}

std::uint64_t DatasetSampleSeed(const DatasetConfig& c, int pi, int trial) {
  return DeriveSeed(c.master_seed,
                    {kSampleStream, 0, static_cast<std::uint64_t>(pi),
                     static_cast<std::uint64_t>(trial)});
}

ResultRow DatasetRowSkeleton(const DatasetConfig& c, const Method& m, int pi,
                             int trial) {
  ResultRow row;
  row.method = m.name;
  row.delta = std::numeric_limits<double>::quiet_NaN();
  row.trial = trial;
  const bool features = c.input == DatasetInput::kFeatures;
  row.p_index = pi;
  row.p = features ? c.p_grid[pi] : std::numeric_limits<double>::quiet_NaN();
  row.sample_seed = features ? DatasetSampleSeed(c, pi, trial) : 0;
  row.method_seed = MethodSeed(c.master_seed, 0, pi, trial, m.name);
  row.metric = features ? "dasgupta" : "none";
  row.value = std::numeric_limits<double>::quiet_NaN();
  return row;
}

ResultRow DatasetRowFrom(const DatasetConfig& c, const DatasetData& d,
                         const Method& m, int pi, int trial,
                         const QuadrupletSet* q) {
  ResultRow row = DatasetRowSkeleton(c, m, pi, trial);
  Guarded(row, [&] {
    Outcome o;
    switch (m.kind) {
      case MethodKind::kSingleLinkage:
      case MethodKind::kCompleteLinkage:
        o = RunOrdinal(m, d.w);
        break;
      case MethodKind::kActiveKernel:
        o = RunActiveKernel(d.w, q->size(), c.active_q, row.method_seed);
        break;
      default:
        o = RunPassive(m, *q, nullptr, row.method_seed, c.threads);
    }
    FillRow(row, o);
    if (d.w) {
      row.value = DasguptaCost(*d.w, o.tree);
    } else {
      row.tree = o.tree;
    }
  });
  return row;
}

std::vector<ResultRow> DatasetTask(const DatasetConfig& c, const DatasetData& d,
                                   const std::vector<Method>& methods, int pi,
                                   int trial) {
  std::vector<ResultRow> rows;
  std::shared_ptr<const QuadrupletSet> q = d.fixed;
  if (!q) {
    const bool want_sample =
        std::any_of(methods.begin(), methods.end(),
                    [](const Method& m) { return m.needs_sample(); });
    if (want_sample) {
      q = std::make_shared<const QuadrupletSet>(
          SamplePassive(*d.w, c.p_grid[pi], DatasetSampleSeed(c, pi, trial)));
    }
  }
  for (const Method& m : methods) {
    rows.push_back(DatasetRowFrom(c, d, m, pi, trial, q.get()));
  }
  return rows;
}

int DatasetPCount(const DatasetConfig& c) {
  return c.input == DatasetInput::kFeatures ? static_cast<int>(c.p_grid.size())
                                            : 1;
}

int DatasetTrialCount(const DatasetConfig& c) {
  return c.input == DatasetInput::kFeatures ? c.trials : 1;
}

std::vector<std::string> DefaultDatasetMethods(DatasetInput input) {
  if (input == DatasetInput::kFeatures) return {"SL", "CL", "4K-AL", "4-AL"};
  return {"4K-AL", "4-AL"};
}

const char* InputName(DatasetInput input) {
  switch (input) {
    case DatasetInput::kFeatures: return "features";
    case DatasetInput::kQuadruplets: return "quadruplets";
    case DatasetInput::kTriplets: return "triplets";
  }
  return "features";
}

}  // namespace

// --- methods ----------------------------------------------------------------

Method ParseMethod(const std::string& name) {
  Method m;
  m.name = name;
  if (name == "SL") {
    m.kind = MethodKind::kSingleLinkage;
  } else if (name == "CL") {
    m.kind = MethodKind::kCompleteLinkage;
  } else if (name == "4K-AL") {
    m.kind = MethodKind::kPassiveKernel;
  } else if (name == "4K-AL-act") {
    m.kind = MethodKind::kActiveKernel;
  } else if (name == "4-AL") {
    m.kind = MethodKind::kFourAl;
  } else if (name.rfind("4-AL-I", 0) == 0 && name.size() > 6) {
    m.kind = MethodKind::kFourAl;
    const std::string digits = name.substr(6);
    Index size = 0;
    for (char ch : digits) {
      if (ch < '0' || ch > '9' || size > 1000000) {
        Fail(ErrorCode::kInvalidArgument, "bad initial size in method " + name);
      }
      size = size * 10 + (ch - '0');
    }
    if (size < 1) Fail(ErrorCode::kInvalidArgument, "4-AL-I<m> needs m >= 1");
    m.initial_size = size;
  } else {
    Fail(ErrorCode::kInvalidArgument,
         "unknown method \"" + name +
             "\" (expected SL, CL, 4K-AL, 4K-AL-act, 4-AL or 4-AL-I<m>)");
  }
  return m;
}

std::uint64_t MethodId(const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ull;  // FNV-1a
  for (unsigned char ch : name) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  return h;
}

// --- configs ----------------------------------------------------------------

void SweepConfig::Validate() const {
  planted.Validate();
  Require(planted.levels >= 1, ErrorCode::kInvalidArgument,
          "planted sweeps need at least one level (AARI averages over levels)");
  Require(!delta_grid.empty(), ErrorCode::kInvalidArgument, "empty delta grid");
  Require(!p_grid.empty(), ErrorCode::kInvalidArgument, "empty p grid");
  Require(!methods.empty(), ErrorCode::kInvalidArgument, "no methods requested");
  Require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
  Require(threads >= 1, ErrorCode::kInvalidArgument, "threads must be >= 1");
  for (double d : delta_grid) {
    Require(d >= 0.0 && std::isfinite(d), ErrorCode::kInvalidArgument,
            "delta values must be finite and >= 0");
  }
  for (double p : p_grid) {
    Require(p >= 0.0 && p <= 1.0, ErrorCode::kInvalidArgument,
            "sampling probabilities must lie in [0, 1]");
  }
  if (active_q) {
    Require(*active_q > 0.0 && *active_q <= 1.0, ErrorCode::kInvalidArgument,
            "active_q must lie in (0, 1]");
  }
  for (const std::string& name : methods) {
    const Method m = ParseMethod(name);
    if (m.initial_size > planted.n0) {
      Fail(ErrorCode::kInvalidArgument,
           name + " asks for initial clusters larger than n0");
    }
  }
}

json SweepConfig::ToJson() const {
  json j = {{"planted", PlantedToJson(planted)},
            {"delta_grid", delta_grid},
            {"p_grid", p_grid},
            {"methods", methods},
            {"trials", trials},
            {"eta", eta},
            {"master_seed", master_seed},
            {"threads", threads},
            {"plots", plots}};
  j["active_q"] = active_q ? json(*active_q) : json(nullptr);
  return j;
}

SweepConfig SweepConfig::FromJson(const json& j) {
  SweepConfig c;
  try {
    if (j.contains("planted")) c.planted = PlantedFromJson(j.at("planted"));
    c.delta_grid = ReadDoubles(j, "delta_grid");
    c.p_grid = ReadDoubles(j, "p_grid");
    c.methods = j.at("methods").get<std::vector<std::string>>();
    c.trials = j.value("trials", c.trials);
    c.eta = j.value("eta", c.eta);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.threads = j.value("threads", c.threads);
    c.plots = j.value("plots", c.plots);
    if (j.contains("active_q") && !j.at("active_q").is_null()) {
      c.active_q = j.at("active_q").get<double>();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("sweep config: ") + e.what());
  }
  return c;
}

void DatasetConfig::Validate() const {
  Require(!path.empty(), ErrorCode::kInvalidArgument, "dataset input path is empty");
  Require(trials >= 1, ErrorCode::kInvalidArgument, "trials must be >= 1");
  Require(threads >= 1, ErrorCode::kInvalidArgument, "threads must be >= 1");
  if (input == DatasetInput::kFeatures) {
    Require(!p_grid.empty(), ErrorCode::kInvalidArgument, "empty p grid");
    for (double p : p_grid) {
      Require(p >= 0.0 && p <= 1.0, ErrorCode::kInvalidArgument,
              "sampling probabilities must lie in [0, 1]");
    }
  }
  for (const std::string& name :
       methods.empty() ? DefaultDatasetMethods(input) : methods) {
    const Method m = ParseMethod(name);
    if (m.initial_size > 0) {
      Fail(ErrorCode::kInvalidArgument,
           name + " needs planted ground truth; use 4-AL on datasets");
    }
    if (m.needs_similarities() && input != DatasetInput::kFeatures) {
      Fail(ErrorCode::kInvalidArgument,
           name + " queries similarities and cannot run on a comparison file");
    }
  }
}

json DatasetConfig::ToJson() const {
  json j = {{"input", {{InputName(input), path}}},
            {"p_grid", p_grid},
            {"methods", methods.empty() ? DefaultDatasetMethods(input) : methods},
            {"trials", trials},
            {"master_seed", master_seed},
            {"threads", threads},
            {"plots", plots}};
  j["active_q"] = active_q ? json(*active_q) : json(nullptr);
  return j;
}

DatasetConfig DatasetConfig::FromJson(const json& j) {
  DatasetConfig c;
  try {
    const json& in = j.at("input");
    int sources = 0;
    for (DatasetInput kind : {DatasetInput::kFeatures, DatasetInput::kQuadruplets,
                              DatasetInput::kTriplets}) {
      if (in.contains(InputName(kind))) {
        c.input = kind;
        c.path = in.at(InputName(kind)).get<std::string>();
        ++sources;
      }
    }
    Require(sources == 1, ErrorCode::kInvalidArgument,
            "dataset input needs exactly one of features, quadruplets, triplets");
    if (j.contains("p_grid")) c.p_grid = ReadDoubles(j, "p_grid");
    if (j.contains("methods")) {
      c.methods = j.at("methods").get<std::vector<std::string>>();
    }
    c.trials = j.value("trials", c.trials);
    c.master_seed = j.value("master_seed", c.master_seed);
    c.threads = j.value("threads", c.threads);
    c.plots = j.value("plots", c.plots);
    if (j.contains("active_q") && !j.at("active_q").is_null()) {
      c.active_q = j.at("active_q").get<double>();
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("dataset config: ") + e.what());
  }
  return c;
}

KernelDumpConfig KernelDumpConfig::FromJson(const json& j) {
  KernelDumpConfig c;
  try {
    const std::string mode = j.value("mode", std::string("passive"));
    Require(mode == "active" || mode == "passive", ErrorCode::kInvalidArgument,
            "kernel mode must be active or passive");
    c.active = mode == "active";
    const json& src = j.at("source");
    int sources = 0;
    if (src.contains("planted")) {
      c.planted = PlantedFromJson(src.at("planted"));
      ++sources;
    }
    if (src.contains("features")) {
      c.features_path = src.at("features").get<std::string>();
      ++sources;
    }
    if (src.contains("quadruplets")) {
      c.quadruplets_path = src.at("quadruplets").get<std::string>();
      ++sources;
    }
    if (src.contains("triplets")) {
      c.triplets_path = src.at("triplets").get<std::string>();
      ++sources;
    }
    Require(sources == 1, ErrorCode::kInvalidArgument,
            "kernel source needs exactly one of planted, features, quadruplets, "
            "triplets");
    c.p = j.value("p", c.p);
    c.q = j.value("q", c.q);
    c.references = j.value("references", c.references);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, std::string("kernel config: ") + e.what());
  }
  return c;
}

// --- rows and manifests -------------------------------------------------------

json ResultRow::ToJson() const {
  json j = {{"method", method},
            {"delta_index", delta_index},
            {"p_index", p_index},
            {"trial", trial},
            {"data_seed", data_seed},
            {"sample_seed", sample_seed},
            {"method_seed", method_seed},
            {"metric", metric},
            {"comparisons", comparisons},
            {"budget", budget},
            {"landmarks", landmarks},
            {"references", references},
            {"seconds", seconds},
            {"status", status}};
  j["delta"] = std::isfinite(delta) ? json(delta) : json(nullptr);
  j["p"] = std::isfinite(p) ? json(p) : json(nullptr);
  j["value"] = std::isfinite(value) ? json(value) : json(nullptr);
  return j;
}

ResultRow ResultRow::FromJson(const json& j) {
  ResultRow r;
  r.method = j.at("method").get<std::string>();
  r.delta_index = j.at("delta_index").get<int>();
  r.delta = JsonDouble(j.at("delta"));
  r.p_index = j.at("p_index").get<int>();
  r.p = JsonDouble(j.at("p"));
  r.trial = j.at("trial").get<int>();
  r.data_seed = j.at("data_seed").get<std::uint64_t>();
  r.sample_seed = j.at("sample_seed").get<std::uint64_t>();
  r.method_seed = j.at("method_seed").get<std::uint64_t>();
  r.metric = j.at("metric").get<std::string>();
  r.value = JsonDouble(j.at("value"));
  r.comparisons = j.at("comparisons").get<std::uint64_t>();
  r.budget = j.value("budget", std::uint64_t{0});
  r.landmarks = j.value("landmarks", std::uint64_t{0});
  r.references = j.value("references", std::uint64_t{0});
  r.seconds = j.value("seconds", 0.0);
  r.status = j.at("status").get<std::string>();
  return r;
}

bool RunManifest::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ResultRow& r) { return r.ok(); });
}

json RunManifest::ToJson() const {
  json rows_json = json::array();
  for (const ResultRow& r : rows) rows_json.push_back(r.ToJson());
  const auto failed = std::count_if(rows.begin(), rows.end(),
                                    [](const ResultRow& r) { return !r.ok(); });
  return {{"schema_version", kResultsSchemaVersion},
          {"kind", kind},
          {"config", config},
          {"rows", rows_json},
          {"completed", rows.size() - static_cast<std::size_t>(failed)},
          {"failed", failed},
          {"wall_seconds", wall_seconds},
          {"outputs", outputs}};
}

std::string ResultsCsv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "schema_version,method,delta_index,delta,p_index,p,trial,data_seed,"
         "sample_seed,method_seed,metric,value,comparisons,budget,landmarks,"
         "references,seconds,status\n";
  for (const ResultRow& r : rows) {
    out << kResultsSchemaVersion << ',' << CsvField(r.method) << ','
        << r.delta_index << ',' << CsvNumber(r.delta) << ',' << r.p_index << ','
        << CsvNumber(r.p) << ',' << r.trial << ',' << r.data_seed << ','
        << r.sample_seed << ',' << r.method_seed << ',' << r.metric << ','
        << CsvNumber(r.value) << ',' << r.comparisons << ',' << r.budget << ','
        << r.landmarks << ',' << r.references << ',' << CsvNumber(r.seconds)
        << ',' << CsvField(r.status) << '\n';
  }
  return out.str();
}

std::string SummaryCsv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "schema_version,method,delta_index,delta,p_index,p,metric,trials,"
         "completed,mean,std,mean_comparisons\n";
  for (const auto& [key, s] : Summarize(rows)) {
    out << kResultsSchemaVersion << ',' << CsvField(key.method) << ','
        << key.delta_index << ',' << CsvNumber(s.delta) << ',' << key.p_index
        << ',' << CsvNumber(s.p) << ',' << s.metric << ',' << s.trials << ','
        << s.completed << ',' << CsvNumber(s.mean) << ',' << CsvNumber(s.stddev)
        << ',' << CsvNumber(s.mean_comparisons) << '\n';
  }
  return out.str();
}

void WriteRunOutputs(RunManifest& manifest, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) Fail(ErrorCode::kIo, "cannot create " + out_dir + ": " + ec.message());
  const fs::path dir(out_dir);
  manifest.outputs.clear();
  auto emit = [&](const std::string& name, const std::string& text) {
    WriteTextFile((dir / name).string(), text);
    manifest.outputs.push_back(name);
  };
  emit("results.csv", ResultsCsv(manifest.rows));
  emit("summary.csv", SummaryCsv(manifest.rows));

  const bool plots = manifest.config.value("plots", true);
  const auto cells = Summarize(manifest.rows);
  if (plots && manifest.kind == "planted-sweep") {
    // One chart per p: mean AARI against delta.
    std::map<int, std::vector<PlotSeries>> by_p;
    std::map<int, double> p_value;
    for (const auto& [key, s] : cells) {
      std::vector<PlotSeries>& list = by_p[key.p_index];
      p_value[key.p_index] = s.p;
      auto it = std::find_if(list.begin(), list.end(), [&](const PlotSeries& x) {
        return x.name == key.method;
      });
      if (it == list.end()) {
        list.push_back({key.method, {}, {}, {}});
        it = list.end() - 1;
      }
      it->x.push_back(s.delta);
      it->mean.push_back(s.mean);
      it->stddev.push_back(s.stddev);
    }
    for (const auto& [pi, series] : by_p) {
      emit("aari_vs_delta_p" + std::to_string(pi) + ".svg",
           LineChartSvg("AARI vs delta (p = " + FormatDouble(p_value[pi]) + ")",
                        "delta", "AARI", series));
    }
  }
  if (plots && manifest.kind == "dataset-run") {
    std::vector<PlotSeries> series;
    for (const auto& [key, s] : cells) {
      if (s.metric != "dasgupta") continue;
      auto it = std::find_if(series.begin(), series.end(),
                             [&](const PlotSeries& x) { return x.name == key.method; });
      if (it == series.end()) {
        series.push_back({key.method, {}, {}, {}});
        it = series.end() - 1;
      }
      it->x.push_back(s.p);
      it->mean.push_back(s.mean);
      it->stddev.push_back(s.stddev);
    }
    if (!series.empty()) {
      emit("dasgupta_vs_p.svg",
           LineChartSvg("Dasgupta cost vs p", "p", "cost", series));
    }
  }
  bool any_tree = false;
  for (const ResultRow& r : manifest.rows) any_tree |= r.tree.has_value();
  if (any_tree) {
    fs::create_directories(dir / "dendrograms", ec);
    if (ec) Fail(ErrorCode::kIo, "cannot create dendrograms/: " + ec.message());
    for (const ResultRow& r : manifest.rows) {
      if (!r.tree) continue;
      emit("dendrograms/" + r.method + "_p" + std::to_string(r.p_index) + "_t" +
               std::to_string(r.trial) + ".csv",
           LinkageCsv(*r.tree));
    }
  }
  manifest.outputs.push_back("manifest.json");
  WriteTextFile((dir / "manifest.json").string(), manifest.ToJson().dump(2) + "\n");
}

// --- entry points -------------------------------------------------------------

RunManifest PlantedSweep(const SweepConfig& config) {
  config.Validate();
  const Clock::time_point start = Clock::now();
  const std::vector<Method> methods = ParseMethods(config.methods);
  const int nd = static_cast<int>(config.delta_grid.size());
  const std::size_t tasks = static_cast<std::size_t>(nd) * config.trials;
  std::vector<std::vector<ResultRow>> results(tasks);
  ParallelFor(tasks, config.threads, [&](std::size_t t) {
    const int di = static_cast<int>(t / config.trials);
    const int trial = static_cast<int>(t % config.trials);
    results[t] = PlantedTask(config, methods, di, trial);
  });
  RunManifest manifest;
  manifest.kind = "planted-sweep";
  manifest.config = config.ToJson();
  for (std::vector<ResultRow>& r : results) {
    manifest.rows.insert(manifest.rows.end(), r.begin(), r.end());
  }
  SortRows(manifest.rows, config.methods);
  manifest.wall_seconds = Seconds(start);
  return manifest;
}

ResultRow ComputePlantedRow(const SweepConfig& config, const Method& method,
                            int delta_index, int p_index, int trial) {
  config.Validate();
  Require(delta_index >= 0 &&
              delta_index < static_cast<int>(config.delta_grid.size()) &&
              p_index >= 0 && p_index < static_cast<int>(config.p_grid.size()) &&
              trial >= 0 && trial < config.trials,
          ErrorCode::kOutOfRange, "row coordinates outside the sweep grid");
  ResultRow row = PlantedRowSkeleton(config, method, delta_index, p_index, trial);
  Guarded(row, [&] {
    PlantedInstance inst = PlantedData(config, delta_index, trial);
    const GroundTruthHierarchy truth = inst.truth;
    auto w = std::make_shared<const SimilarityMatrix>(std::move(inst.similarities));
    Outcome o;
    if (method.kind == MethodKind::kSingleLinkage ||
        method.kind == MethodKind::kCompleteLinkage) {
      o = RunOrdinal(method, w);
    } else {
      std::uint64_t budget = 0;
      {
        const QuadrupletSet q =
            SamplePassive(*w, config.p_grid[p_index], row.sample_seed);
        budget = q.size();
        if (method.kind != MethodKind::kActiveKernel) {
          o = RunPassive(method, q, &truth, row.method_seed, 1);
        }
      }
      if (method.kind == MethodKind::kActiveKernel) {
        o = RunActiveKernel(w, budget, config.active_q, row.method_seed);
      }
    }
    FillRow(row, o);
    row.value = Aari(truth, o.tree);
  });
  return row;
}

RunManifest DatasetRun(const DatasetConfig& config) {
  config.Validate();
  const Clock::time_point start = Clock::now();
  const std::vector<std::string> names =
      config.methods.empty() ? DefaultDatasetMethods(config.input) : config.methods;
  const std::vector<Method> methods = ParseMethods(names);
  const DatasetData data = LoadDataset(config);
  if (data.n > kDatasetWarnSize) {
    std::cerr << "warning: " << data.n << " items; 4-AL costs O(N |Q|) and may "
              << "be slow at this size\n";
  }
  const int np = DatasetPCount(config);
  const int nt = DatasetTrialCount(config);
  const std::size_t tasks = static_cast<std::size_t>(np) * nt;
  std::vector<std::vector<ResultRow>> results(tasks);
  // Threads go to the passive kernel inside a task for comparison files.
  const int outer = data.fixed ? 1 : config.threads;
  ParallelFor(tasks, outer, [&](std::size_t t) {
    results[t] = DatasetTask(config, data, methods, static_cast<int>(t / nt),
                             static_cast<int>(t % nt));
  });
  RunManifest manifest;
  manifest.kind = "dataset-run";
  manifest.config = config.ToJson();
  for (std::vector<ResultRow>& r : results) {
    manifest.rows.insert(manifest.rows.end(), r.begin(), r.end());
  }
  SortRows(manifest.rows, names);
  manifest.wall_seconds = Seconds(start);
  return manifest;
}

ResultRow ComputeDatasetRow(const DatasetConfig& config, const Method& method,
                            int p_index, int trial) {
  config.Validate();
  Require(p_index >= 0 && p_index < DatasetPCount(config) && trial >= 0 &&
              trial < DatasetTrialCount(config),
          ErrorCode::kOutOfRange, "row coordinates outside the dataset grid");
  const DatasetData data = LoadDataset(config);
  std::shared_ptr<const QuadrupletSet> q = data.fixed;
  if (!q && method.needs_sample()) {
    q = std::make_shared<const QuadrupletSet>(SamplePassive(
        *data.w, config.p_grid[p_index], DatasetSampleSeed(config, p_index, trial)));
  }
  return DatasetRowFrom(config, data, method, p_index, trial, q.get());
}

ReplayOutcome Replay(const std::string& manifest_path, std::size_t row_index) {
  json manifest;
  try {
    manifest = json::parse(ReadTextFile(manifest_path));
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, manifest_path + ": " + e.what());
  }
  ReplayOutcome out;
  try {
    const json& rows = manifest.at("rows");
    if (row_index >= rows.size()) {
      Fail(ErrorCode::kOutOfRange,
           "row " + std::to_string(row_index) + " does not exist (manifest has " +
               std::to_string(rows.size()) + " rows)");
    }
    out.recorded = ResultRow::FromJson(rows.at(row_index));
    const std::string kind = manifest.at("kind").get<std::string>();
    const Method method = ParseMethod(out.recorded.method);
    if (kind == "planted-sweep") {
      const SweepConfig c = SweepConfig::FromJson(manifest.at("config"));
      out.replayed = ComputePlantedRow(c, method, out.recorded.delta_index,
                                       out.recorded.p_index, out.recorded.trial);
    } else if (kind == "dataset-run") {
      const DatasetConfig c = DatasetConfig::FromJson(manifest.at("config"));
      out.replayed =
          ComputeDatasetRow(c, method, out.recorded.p_index, out.recorded.trial);
    } else {
      Fail(ErrorCode::kFormat, "unknown manifest kind \"" + kind + "\"");
    }
  } catch (const json::exception& e) {
    Fail(ErrorCode::kFormat, manifest_path + ": " + e.what());
  }
  const double a = out.recorded.value;
  const double b = out.replayed.value;
  const bool same_value =
      (std::isnan(a) && std::isnan(b)) || std::memcmp(&a, &b, sizeof a) == 0;
  out.identical = same_value &&
                  out.recorded.comparisons == out.replayed.comparisons &&
                  out.recorded.data_seed == out.replayed.data_seed &&
                  out.recorded.sample_seed == out.replayed.sample_seed &&
                  out.recorded.method_seed == out.replayed.method_seed &&
                  out.recorded.status == out.replayed.status;
  return out;
}

std::string KernelDump(const KernelDumpConfig& config) {
  std::shared_ptr<const SimilarityMatrix> w;
  std::shared_ptr<const QuadrupletSet> q;
  if (config.planted) {
    PlantedConfig pc = *config.planted;
    pc.seed = DeriveSeed(config.seed, {kDataStream});
    w = std::make_shared<const SimilarityMatrix>(GeneratePlanted(pc).similarities);
  } else if (!config.features_path.empty()) {
    w = std::make_shared<const SimilarityMatrix>(
        CosineSimilarityMatrix(ReadFeaturesCsv(config.features_path)));
  } else if (!config.quadruplets_path.empty()) {
    const QuadrupletFile f = ReadQuadrupletsCsv(config.quadruplets_path);
    q = std::make_shared<const QuadrupletSet>(
        QuadrupletSet::FromQuadruplets(f.n_items, f.quadruplets));
  } else {
    const TripletFile f = ReadTripletsCsv(config.triplets_path);
    q = std::make_shared<const QuadrupletSet>(IngestTriplets(f.n_items, f.triplets));
  }
  if (config.active) {
    Require(w != nullptr, ErrorCode::kInvalidArgument,
            "the active kernel needs similarities (planted or features source)");
    ActiveOracle oracle(w);
    ActiveKernelConfig ac;
    ac.q = config.q;
    ac.num_references = config.references;
    ac.seed = DeriveSeed(config.seed, {kMethodStream});
    const ActiveKernelResult r = ActiveKernel(oracle, w->size(), ac);
    return KernelCsv(r.kernel, r.queries_used);
  }
  if (!q) {
    q = std::make_shared<const QuadrupletSet>(
        SamplePassive(*w, config.p, DeriveSeed(config.seed, {kSampleStream})));
  }
  return KernelCsv(PassiveKernel(*q, config.threads));
}

}  // namespace ordhc
