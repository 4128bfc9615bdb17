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


// Exercises the shared library through its C header only.

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "ordhc/ordhc.h"

namespace {

#define ASSERT_OK(expr) ASSERT_EQ((expr), ORDHC_OK) << ordhc_last_error()

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STRNE(ordhc_version(), "");
  EXPECT_STREQ(ordhc_status_string(ORDHC_OK), "ok");
  EXPECT_STRNE(ordhc_status_string(ORDHC_ERR_FORMAT), "");
}

TEST(CApi, NullPointersAndErrorsReported) {
  EXPECT_EQ(ordhc_planted_generate(nullptr, nullptr, nullptr),
            ORDHC_ERR_NULL_POINTER);
  ordhc_planted_config bad{0, 1, 0.8, 0.1, 0.1, 0};
  ordhc_similarity* w = nullptr;
  EXPECT_EQ(ordhc_planted_generate(&bad, &w, nullptr),
            ORDHC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(w, nullptr);
  EXPECT_STRNE(ordhc_last_error(), "");
  double v = 0;
  EXPECT_EQ(ordhc_beta_expected(1, 0.1, 0, &v), ORDHC_ERR_INVALID_ARGUMENT);
  ASSERT_OK(ordhc_beta_expected(0, 0.1, 0.1, &v));
  EXPECT_EQ(v, 0.0);
  ordhc_similarity_free(nullptr);
  ordhc_dendrogram_free(nullptr);
}

TEST(CApi, NoiselessPipeline) {
  const ordhc_planted_config cfg{4, 2, 0.8, 0.1, 0.0, 1};
  ordhc_similarity* w = nullptr;
  ordhc_hierarchy* truth = nullptr;
  ASSERT_OK(ordhc_planted_generate(&cfg, &w, &truth));
  int32_t n = 0;
  ASSERT_OK(ordhc_similarity_size(w, &n));
  ASSERT_EQ(n, 16);
  double w01 = 0;
  ASSERT_OK(ordhc_similarity_get(w, 0, 1, &w01));
  EXPECT_DOUBLE_EQ(w01, 0.8);
  EXPECT_EQ(ordhc_similarity_get(w, 2, 2, &w01), ORDHC_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ordhc_similarity_get(w, 0, 16, &w01), ORDHC_ERR_OUT_OF_RANGE);

  ordhc_oracle* oracle = nullptr;
  ASSERT_OK(ordhc_oracle_create(w, &oracle));
  int res = -1;
  ASSERT_OK(ordhc_oracle_compare(oracle, 0, 1, 0, 15, &res));
  EXPECT_EQ(res, 1);
  EXPECT_EQ(ordhc_oracle_compare(oracle, 0, 1, 1, 0, &res),
            ORDHC_ERR_INVALID_ARGUMENT);
  ordhc_dendrogram* sl = nullptr;
  ASSERT_OK(ordhc_single_linkage(oracle, &sl));
  uint64_t queries = 0;
  ASSERT_OK(ordhc_oracle_query_count(oracle, &queries));
  EXPECT_GE(queries, 119u);
  double aari = 0;
  ASSERT_OK(ordhc_aari(truth, sl, &aari));
  EXPECT_EQ(aari, 1.0);

  ordhc_comparisons* q = nullptr;
  ASSERT_OK(ordhc_comparisons_sample(w, 1.0, 3, &q));
  uint64_t count = 0;
  ASSERT_OK(ordhc_comparisons_count(q, &count));
  EXPECT_EQ(count, 120u * 119u / 2);
  int orient = 0;
  ASSERT_OK(ordhc_comparisons_orientation(q, 0, 1, 0, 15, &orient));
  EXPECT_EQ(orient, 1);

  ordhc_dendrogram* four = nullptr;
  ASSERT_OK(ordhc_four_al(q, nullptr, 1, &four));
  ASSERT_OK(ordhc_aari(truth, four, &aari));
  EXPECT_EQ(aari, 1.0);

  std::vector<int32_t> labels(16);
  for (int i = 0; i < 16; ++i) labels[i] = i / 2;
  ordhc_dendrogram* seeded = nullptr;
  ASSERT_OK(ordhc_four_al(q, labels.data(), 0, &seeded));
  std::vector<int32_t> cut(16);
  ASSERT_OK(ordhc_dendrogram_cut(seeded, 4, cut.data()));
  for (int i = 0; i < 16; ++i) EXPECT_EQ(cut[i], i / 4);

  ordhc_kernel* k = nullptr;
  ASSERT_OK(ordhc_passive_kernel(q, 2, &k));
  int64_t kv = 0;
  ASSERT_OK(ordhc_kernel_get(k, 0, 1, &kv));
  int64_t kv_t = 0;
  ASSERT_OK(ordhc_kernel_get(k, 1, 0, &kv_t));
  EXPECT_EQ(kv, kv_t);
  ordhc_dendrogram* kal = nullptr;
  ASSERT_OK(ordhc_kernel_average_linkage(k, &kal));
  int32_t leaves = 0;
  ASSERT_OK(ordhc_dendrogram_leaves(kal, &leaves));
  EXPECT_EQ(leaves, 16);
  std::vector<int32_t> left(15), right(15);
  ASSERT_OK(ordhc_dendrogram_merges(kal, left.data(), right.data(), 15));
  EXPECT_EQ(ordhc_dendrogram_merges(kal, left.data(), right.data(), 3),
            ORDHC_ERR_OUT_OF_RANGE);

  ordhc_kernel* ak = nullptr;
  uint64_t used = 0;
  ASSERT_OK(ordhc_active_kernel(oracle, 1.0, 2, 5, 0, &ak, &used));
  EXPECT_GT(used, 0u);

  double cost = 0;
  ASSERT_OK(ordhc_dasgupta_cost(w, sl, &cost));
  EXPECT_GT(cost, 0.0);

  for (ordhc_dendrogram* d : {sl, four, seeded, kal}) ordhc_dendrogram_free(d);
  ordhc_kernel_free(k);
  ordhc_kernel_free(ak);
  ordhc_comparisons_free(q);
  ordhc_oracle_free(oracle);
  ordhc_similarity_free(w);
  ordhc_hierarchy_free(truth);
}

TEST(CApi, MatrixCosineTripletsAndAri) {
  const double values[9] = {0, 0.9, 0.1, 0.9, 0, 0.5, 0.1, 0.5, 0};
  ordhc_similarity* w = nullptr;
  ASSERT_OK(ordhc_similarity_from_matrix(3, values, &w));
  ordhc_similarity_free(w);
  const double asym[4] = {0, 1, 2, 0};
  EXPECT_NE(ordhc_similarity_from_matrix(2, asym, &w), ORDHC_OK);

  const double feats[6] = {1, 0, 0, 1, 1, 1};
  ASSERT_OK(ordhc_similarity_cosine(feats, 3, 2, &w));
  double v = 1;
  ASSERT_OK(ordhc_similarity_get(w, 0, 1, &v));
  EXPECT_NEAR(v, 0.0, 1e-15);
  ordhc_similarity_free(w);
  const double zero[4] = {1, 0, 0, 0};
  EXPECT_EQ(ordhc_similarity_cosine(zero, 2, 2, &w), ORDHC_ERR_INVALID_ARGUMENT);

  const int32_t trip[6] = {0, 1, 2, 0, 2, 1};
  ordhc_comparisons* q = nullptr;
  ASSERT_OK(ordhc_comparisons_from_triplets(3, trip, 2, &q));
  uint64_t count = 9;
  ASSERT_OK(ordhc_comparisons_count(q, &count));
  EXPECT_EQ(count, 0u);
  ordhc_comparisons_free(q);
  const int32_t quad[4] = {1, 0, 2, 3};
  ASSERT_OK(ordhc_comparisons_from_quadruplets(4, quad, 1, &q));
  int orient = 0;
  ASSERT_OK(ordhc_comparisons_orientation(q, 2, 3, 0, 1, &orient));
  EXPECT_EQ(orient, -1);
  ordhc_comparisons_free(q);

  const int32_t a[4] = {0, 0, 1, 1};
  const int32_t b[4] = {1, 1, 0, 0};
  double ari = 0;
  ASSERT_OK(ordhc_ari(a, b, 4, &ari));
  EXPECT_EQ(ari, 1.0);
}

TEST(CApi, HarnessRoundTrip) {
  namespace fs = std::filesystem;
  const fs::path out = fs::temp_directory_path() / "ordhc_capi_sweep";
  fs::remove_all(out);
  const char* config = R"({
    "planted": {"n0": 4, "levels": 2, "mu": 0.8, "sigma": 0.1},
    "delta_grid": [0.2], "p_grid": [0.3],
    "methods": ["SL", "4K-AL", "4K-AL-act", "4-AL-I2"],
    "trials": 2, "master_seed": 9, "plots": false})";
  ordhc_run_summary summary{};
  ASSERT_OK(ordhc_planted_sweep(config, out.string().c_str(), &summary));
  EXPECT_EQ(summary.rows, 8u);
  EXPECT_EQ(summary.failed, 0u);
  EXPECT_TRUE(fs::exists(out / "results.csv"));
  const std::string manifest = (out / "manifest.json").string();
  for (uint64_t row = 0; row < 8; ++row) {
    int identical = 0;
    char* report = nullptr;
    ASSERT_OK(ordhc_replay(manifest.c_str(), row, &identical, &report));
    EXPECT_EQ(identical, 1);
    ASSERT_NE(report, nullptr);
    ordhc_string_free(report);
  }
  int identical = 0;
  EXPECT_EQ(ordhc_replay(manifest.c_str(), 8, &identical, nullptr),
            ORDHC_ERR_OUT_OF_RANGE);

  EXPECT_EQ(ordhc_planted_sweep("{not json", out.string().c_str(), nullptr),
            ORDHC_ERR_FORMAT);
  const char* failing = R"({
    "planted": {"n0": 4, "levels": 2}, "delta_grid": [0.2], "p_grid": [0.3],
    "methods": ["SL", "4K-AL-act"], "active_q": 1e-300, "plots": false})";
  ASSERT_EQ(ordhc_planted_sweep(failing, out.string().c_str(), &summary),
            ORDHC_ERR_INCOMPLETE);
  EXPECT_EQ(summary.failed, 1u);

  char* csv = nullptr;
  ASSERT_OK(ordhc_kernel_dump(
      R"({"mode": "passive",
          "source": {"planted": {"n0": 2, "levels": 1, "sigma": 0}},
          "p": 1})",
      &csv));
  EXPECT_EQ(std::string(csv).rfind("n,4\n", 0), 0u);
  ordhc_string_free(csv);
  fs::remove_all(out);
}

}  // namespace
