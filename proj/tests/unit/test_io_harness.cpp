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


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>

#include "core/csv_io.hpp"
#include "core/evaluation.hpp"
#include "core/harness.hpp"
#include "core/ordinal_linkage.hpp"
#include "core/quadruplet_kernel.hpp"
#include "core/quadruplet_linkage.hpp"
#include "support/brute_force.hpp"

namespace ordhc {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("ordhc_test_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string File(const std::string& name, const std::string& content) const {
    const std::string p = (path_ / name).string();
    std::ofstream(p) << content;
    return p;
  }
  std::string Path(const std::string& name = "") const {
    return (path_ / name).string();
  }

 private:
  fs::path path_;
};

std::string ErrorText(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

std::vector<std::vector<std::string>> ParseCsv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    for (std::string_view f : SplitCsvLine(line)) fields.emplace_back(f);
    rows.push_back(fields);
  }
  return rows;
}

TEST(Csv, SplitAndFormat) {
  EXPECT_EQ(SplitCsvLine(" a, b ,c"),
            (std::vector<std::string_view>{"a", "b", "c"}));
  EXPECT_EQ(SplitCsvLine("x,"), (std::vector<std::string_view>{"x", ""}));
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5}) {
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

TEST(Csv, Features) {
  TempDir dir("features");
  const auto with_header = dir.File("a.csv", "x,y\n1,2\n\n# note\n3,4\n");
  EXPECT_EQ(ReadFeaturesCsv(with_header),
            (std::vector<std::vector<double>>{{1, 2}, {3, 4}}));
  const auto ragged = dir.File("b.csv", "1,2\n3\n");
  EXPECT_NE(ErrorText([&] { ReadFeaturesCsv(ragged); }).find("b.csv:2:"),
            std::string::npos);
  const auto bad = dir.File("c.csv", "1,2\n3,zz\n");
  EXPECT_NE(ErrorText([&] { ReadFeaturesCsv(bad); }).find("c.csv:2:"),
            std::string::npos);
  EXPECT_THROW(ReadFeaturesCsv(dir.Path("missing.csv")), Error);
}

TEST(Csv, QuadrupletsAndTriplets) {
  TempDir dir("quads");
  const auto q = dir.File("q.csv", "i,j,k,l\n1,0,2,3\n0,2,0,1\n");
  const QuadrupletFile qf = ReadQuadrupletsCsv(q);
  EXPECT_EQ(qf.n_items, 4);
  EXPECT_EQ(qf.quadruplets[0], (Quadruplet{{0, 1}, {2, 3}}));
  const auto bad_header = dir.File("h.csv", "a,b,c,d\n0,1,2,3\n");
  EXPECT_NE(ErrorText([&] { ReadQuadrupletsCsv(bad_header); }).find("h.csv:1:"),
            std::string::npos);
  const auto bad_row = dir.File("r.csv", "i,j,k,l\n0,1,2,3\n\n0,1,2\n");
  EXPECT_NE(ErrorText([&] { ReadQuadrupletsCsv(bad_row); }).find("r.csv:4:"),
            std::string::npos);
  const auto self = dir.File("s.csv", "i,j,k,l\n0,1,1,0\n");
  EXPECT_NE(ErrorText([&] { ReadQuadrupletsCsv(self); }).find("s.csv:2:"),
            std::string::npos);
  const auto neg = dir.File("n.csv", "i,j,k,l\n0,1,-1,0\n");
  EXPECT_NE(ErrorText([&] { ReadQuadrupletsCsv(neg); }).find("n.csv:2:"),
            std::string::npos);

  const auto t = dir.File("t.csv", "i,j,k\n2,1,3\n0,1,2\n");
  const TripletFile tf = ReadTripletsCsv(t);
  EXPECT_EQ(tf.n_items, 4);
  EXPECT_EQ(tf.triplets.size(), 2u);
  const auto rep = dir.File("u.csv", "i,j,k\n2,2,3\n");
  EXPECT_NE(ErrorText([&] { ReadTripletsCsv(rep); }).find("u.csv:2:"),
            std::string::npos);
}

TEST(Csv, PartitionFile) {
  TempDir dir("part");
  const auto p = dir.File("p.csv", "item_index,cluster_id\n2,5\n0,5\n");
  EXPECT_EQ(ReadPartitionCsv(p, 3), (std::vector<Index>{5, -1, 5}));
  const auto twice = dir.File("t.csv", "item_index,cluster_id\n0,1\n0,2\n");
  EXPECT_NE(ErrorText([&] { ReadPartitionCsv(twice, 3); }).find("t.csv:3:"),
            std::string::npos);
  const auto range = dir.File("r.csv", "item_index,cluster_id\n3,1\n");
  EXPECT_NE(ErrorText([&] { ReadPartitionCsv(range, 3); }).find("r.csv:2:"),
            std::string::npos);
}

TEST(Csv, Writers) {
  Dendrogram d(3);
  d.Merge(d.Merge(0, 2), 1);
  EXPECT_EQ(LinkageCsv(d), "step,left_id,right_id,new_id\n0,0,2,3\n1,3,1,4\n");
  KernelMatrix k(2);
  k.Set(0, 1, -4);
  EXPECT_EQ(KernelCsv(k), "n,2\n,-4\n-4,\n");
  EXPECT_EQ(KernelCsv(k, 9), "n,2\n,-4\n-4,\n# queries_used,9\n");
}

SweepConfig SmallSweep() {
  SweepConfig c;
  c.planted = {.n0 = 4, .levels = 2, .mu = 0.8, .sigma = 0.1};
  c.delta_grid = {0.1, 0.3};
  c.p_grid = {0.2, 1.0};
  c.methods = {"SL", "CL", "4K-AL", "4K-AL-act", "4-AL", "4-AL-I2"};
  c.trials = 2;
  c.master_seed = 42;
  return c;
}

TEST(Harness, MethodNames) {
  EXPECT_EQ(ParseMethod("4-AL-I5").initial_size, 5);
  EXPECT_EQ(ParseMethod("4K-AL-act").kind, MethodKind::kActiveKernel);
  EXPECT_THROW(ParseMethod("AL"), Error);
  EXPECT_THROW(ParseMethod("4-AL-I0"), Error);
  EXPECT_THROW(ParseMethod("4-AL-Ix"), Error);
}

TEST(Harness, ConfigRoundTripAndValidation) {
  const SweepConfig c = SmallSweep();
  const SweepConfig back = SweepConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson(), c.ToJson());
  SweepConfig bad = c;
  bad.trials = 0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = c;
  bad.p_grid = {1.5};
  EXPECT_THROW(bad.Validate(), Error);
  bad = c;
  bad.methods = {"4-AL-I9"};
  EXPECT_THROW(bad.Validate(), Error);
  EXPECT_THROW(SweepConfig::FromJson(nlohmann::json::parse(R"({"trials":"x"})")),
               Error);
}

TEST(Harness, SweepRowsOutputsAndReplay) {
  const SweepConfig c = SmallSweep();
  RunManifest m = PlantedSweep(c);
  ASSERT_EQ(m.rows.size(), 2u * 2 * 2 * 6);
  EXPECT_TRUE(m.all_ok());
  // Sorted by (delta, p, trial, method order).
  std::size_t k = 0;
  for (int di = 0; di < 2; ++di) {
    for (int pi = 0; pi < 2; ++pi) {
      for (int t = 0; t < 2; ++t) {
        for (const std::string& name : c.methods) {
          const ResultRow& r = m.rows[k++];
          EXPECT_EQ(r.delta_index, di);
          EXPECT_EQ(r.p_index, pi);
          EXPECT_EQ(r.trial, t);
          EXPECT_EQ(r.method, name);
          EXPECT_EQ(r.metric, "aari");
          EXPECT_GE(r.value, -1.0);
          EXPECT_LE(r.value, 1.0);
        }
      }
    }
  }
  // A second run is identical apart from timings.
  const RunManifest again = PlantedSweep(c);
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    EXPECT_EQ(again.rows[i].value, m.rows[i].value);
    EXPECT_EQ(again.rows[i].comparisons, m.rows[i].comparisons);
  }
  // Threads do not change results.
  SweepConfig threaded = c;
  threaded.threads = 3;
  const RunManifest par = PlantedSweep(threaded);
  for (std::size_t i = 0; i < m.rows.size(); ++i) {
    EXPECT_EQ(par.rows[i].value, m.rows[i].value);
  }

  TempDir dir("sweep");
  WriteRunOutputs(m, dir.Path());
  for (const char* f : {"results.csv", "summary.csv", "manifest.json"}) {
    EXPECT_TRUE(fs::exists(dir.Path(f))) << f;
  }
  bool any_svg = false;
  for (const auto& e : fs::directory_iterator(dir.Path())) {
    any_svg |= e.path().extension() == ".svg";
  }
  EXPECT_TRUE(any_svg);

  // Schema: every row has the header's field count and the version column.
  const auto results = ParseCsv(ReadTextFile(dir.Path("results.csv")));
  ASSERT_EQ(results.size(), m.rows.size() + 1);
  EXPECT_EQ(results[0][0], "schema_version");
  for (const auto& row : results) EXPECT_EQ(row.size(), results[0].size());
  for (std::size_t i = 1; i < results.size(); ++i) {
    EXPECT_EQ(results[i][0], std::to_string(kResultsSchemaVersion));
    const double v = std::stod(results[i][11]);
    EXPECT_EQ(v, m.rows[i - 1].value);
  }
  const auto summary = ParseCsv(ReadTextFile(dir.Path("summary.csv")));
  ASSERT_EQ(summary.size(), 1 + 2 * 2 * 6u);
  for (const auto& row : summary) EXPECT_EQ(row.size(), summary[0].size());
  const auto manifest = nlohmann::json::parse(ReadTextFile(dir.Path("manifest.json")));
  EXPECT_EQ(manifest.at("kind"), "planted-sweep");
  EXPECT_EQ(manifest.at("rows").size(), m.rows.size());

  for (std::size_t i = 0; i < m.rows.size(); i += 5) {
    const ReplayOutcome o = Replay(dir.Path("manifest.json"), i);
    EXPECT_TRUE(o.identical) << "row " << i;
    EXPECT_EQ(o.replayed.value, m.rows[i].value);
  }
  EXPECT_THROW(Replay(dir.Path("manifest.json"), m.rows.size()), Error);
}

// The active budget is set from the cell's realized |Q|; the count it
// reaches is within N * |S| of it.
TEST(Harness, ActiveBudgetParity) {
  SweepConfig c = SmallSweep();
  c.planted.n0 = 8;
  c.methods = {"4K-AL", "4K-AL-act"};
  c.p_grid = {0.05, 0.2};
  c.trials = 3;
  const RunManifest m = PlantedSweep(c);
  const std::uint64_t n = 32;
  for (std::size_t i = 0; i + 1 < m.rows.size(); i += 2) {
    const ResultRow& passive = m.rows[i];
    const ResultRow& active = m.rows[i + 1];
    ASSERT_EQ(active.method, "4K-AL-act");
    ASSERT_TRUE(active.ok()) << active.status;
    EXPECT_EQ(active.budget, std::max<std::uint64_t>(passive.comparisons, 1));
    // References are whole, so the spend lands on the nearest multiple of the
    // per-reference cost, minus cache hits between references.
    const std::uint64_t s = active.landmarks;
    const std::uint64_t per_ref = s * (n - 1) - Choose2(s);
    const std::uint64_t refs = active.references;
    const auto wanted = std::clamp<std::uint64_t>(
        std::llround(double(active.budget) / double(per_ref)), 1, Choose2(n));
    EXPECT_EQ(refs, wanted);
    EXPECT_LE(active.comparisons, refs * per_ref);
    EXPECT_GE(active.comparisons + refs + Choose2(refs), refs * per_ref);
    if (wanted > 1 && wanted < Choose2(n)) {
      EXPECT_LE(std::abs(double(refs * per_ref) - double(active.budget)),
                per_ref / 2.0 + 0.5);
    }
  }
}

TEST(Harness, NoiselessOrdinalAndFourAlRecover) {
  SweepConfig c;
  c.planted = {.n0 = 4, .levels = 3, .mu = 0.8, .sigma = 0.0};
  c.delta_grid = {0.1};
  c.p_grid = {1.0};
  c.methods = {"SL", "CL", "4-AL", "4-AL-I2"};
  const RunManifest m = PlantedSweep(c);
  for (const ResultRow& r : m.rows) EXPECT_EQ(r.value, 1.0) << r.method;
}

TEST(Harness, FailuresAreRecordedPerRow) {
  SweepConfig c = SmallSweep();
  c.methods = {"SL", "4K-AL-act", "CL"};
  c.delta_grid = {0.1};
  c.p_grid = {0.1};
  c.trials = 1;
  c.active_q = 1e-300;  // no landmarks can be drawn
  const RunManifest m = PlantedSweep(c);
  ASSERT_EQ(m.rows.size(), 3u);
  EXPECT_TRUE(m.rows[0].ok());
  EXPECT_EQ(m.rows[1].status.rfind("error: ", 0), 0u) << m.rows[1].status;
  EXPECT_TRUE(m.rows[2].ok());
  EXPECT_FALSE(m.all_ok());
}

TEST(Harness, OneHotFeaturesCostNothing) {
  TempDir dir("onehot");
  DatasetConfig c;
  c.path = dir.File("x.csv", "1,0,0,0\n0,1,0,0\n0,0,1,0\n0,0,0,1\n");
  c.p_grid = {1.0};
  RunManifest m = DatasetRun(c);
  ASSERT_EQ(m.rows.size(), 4u);
  for (const ResultRow& r : m.rows) {
    EXPECT_TRUE(r.ok()) << r.status;
    EXPECT_EQ(r.metric, "dasgupta");
    EXPECT_EQ(r.value, 0.0);
  }
}

TEST(Harness, DuplicateRowsMergeFirst) {
  const std::vector<std::vector<double>> x = {
      {1, 0, 0}, {1, 0, 0}, {0.6, 0.8, 0}, {0, 1, 0.3}, {0, 0.2, 1}};
  auto w = std::make_shared<const SimilarityMatrix>(CosineSimilarityMatrix(x));
  const QuadrupletSet qs = SamplePassive(*w, 1.0, 0);
  auto holds_pair_first = [](const Dendrogram& d) {
    for (const MergeStep& m : d.merges()) {
      const auto members = d.Members(m.merged);
      if (std::count(members.begin(), members.end(), 0) &&
          std::count(members.begin(), members.end(), 1)) {
        return members.size() == 2;
      }
    }
    return false;
  };
  ActiveOracle a(w);
  EXPECT_TRUE(holds_pair_first(SingleLinkage(a, 5).dendrogram));
  ActiveOracle b(w);
  EXPECT_TRUE(holds_pair_first(CompleteLinkage(b, 5).dendrogram));
  EXPECT_TRUE(holds_pair_first(AverageLinkageOnKernel(PassiveKernel(qs))));
  EXPECT_TRUE(holds_pair_first(FourAl(qs, Partition::Singletons(5))));
}

TEST(Harness, ComparisonFilesEmitDendrograms) {
  TempDir dir("triplets");
  DatasetConfig c;
  c.input = DatasetInput::kTriplets;
  c.path = dir.File("t.csv", "i,j,k\n0,1,2\n3,2,1\n1,0,3\n2,3,0\n");
  RunManifest m = DatasetRun(c);
  ASSERT_EQ(m.rows.size(), 2u);
  for (const ResultRow& r : m.rows) {
    EXPECT_TRUE(r.ok()) << r.status;
    EXPECT_EQ(r.metric, "none");
    ASSERT_TRUE(r.tree.has_value());
    EXPECT_EQ(r.comparisons, 4u);
  }
  WriteRunOutputs(m, dir.Path("out"));
  EXPECT_TRUE(fs::exists(dir.Path("out/dendrograms")));
  DatasetConfig bad = c;
  bad.methods = {"SL"};
  EXPECT_THROW(bad.Validate(), Error);
  bad.methods = {"4-AL-I2"};
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(Harness, TripletPassThrough) {
  TempDir dir("passthrough");
  const auto path = dir.File("t.csv", "i,j,k\n2,1,3\n0,1,2\n");
  const TripletFile tf = ReadTripletsCsv(path);
  EXPECT_EQ(IngestTriplets(tf.n_items, tf.triplets).ToQuadruplets(),
            (std::vector<Quadruplet>{{{0, 1}, {0, 2}}, {{1, 2}, {2, 3}}}));
}

TEST(Harness, KernelDump) {
  TempDir dir("dump");
  // A single comparison between disjoint pairs shares no item, so every
  // kernel entry stays zero.
  KernelDumpConfig empty;
  empty.quadruplets_path = dir.File("q4.csv", "i,j,k,l\n0,1,2,3\n");
  const auto rows = ParseCsv(KernelDump(empty));
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      EXPECT_EQ(rows[i][j], i - 1 == j ? "" : "0");
    }
  }

  KernelDumpConfig planted;
  planted.planted = PlantedConfig{.n0 = 2, .levels = 2, .sigma = 0.0};
  planted.p = 1.0;
  const std::string text = KernelDump(planted);
  // sigma = 0 and p = 1 leave nothing to the seeds.
  const PlantedInstance inst = GeneratePlanted(*planted.planted);
  const QuadrupletSet qs = SamplePassive(inst.similarities, 1.0, planted.seed);
  const auto brute = testing::NaivePassiveKernel(8, qs.ToQuadruplets());
  const auto parsed = ParseCsv(text);
  for (Index i = 0; i < 8; ++i) {
    for (Index j = 0; j < 8; ++j) {
      if (i != j) EXPECT_EQ(std::stoll(parsed[i + 1][j]), brute[i * 8 + j]);
    }
  }

  KernelDumpConfig active = planted;
  active.active = true;
  active.references = 3;
  EXPECT_NE(KernelDump(active).find("# queries_used,"), std::string::npos);
}

}  // namespace
}  // namespace ordhc
