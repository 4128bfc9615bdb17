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


#include "ordhc/ordhc.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "json.hpp"

#include "core/csv_io.hpp"
#include "core/evaluation.hpp"
#include "core/harness.hpp"
#include "core/ordinal_linkage.hpp"
#include "core/quadruplet_kernel.hpp"
#include "core/quadruplet_linkage.hpp"

struct ordhc_similarity {
  std::shared_ptr<const ordhc::SimilarityMatrix> w;
};
struct ordhc_hierarchy {
  ordhc::GroundTruthHierarchy truth;
};
struct ordhc_comparisons {
  ordhc::QuadrupletSet q;
};
struct ordhc_oracle {
  ordhc::ActiveOracle oracle;
};
struct ordhc_kernel {
  ordhc::KernelMatrix k;
};
struct ordhc_dendrogram {
  ordhc::Dendrogram d;
};

namespace {

thread_local std::string g_last_error;

ordhc_status FromCode(ordhc::ErrorCode code) {
  switch (code) {
    case ordhc::ErrorCode::kInvalidArgument: return ORDHC_ERR_INVALID_ARGUMENT;
    case ordhc::ErrorCode::kOutOfRange: return ORDHC_ERR_OUT_OF_RANGE;
    case ordhc::ErrorCode::kFormat: return ORDHC_ERR_FORMAT;
    case ordhc::ErrorCode::kIo: return ORDHC_ERR_IO;
    case ordhc::ErrorCode::kContractViolation: return ORDHC_ERR_CONTRACT;
    case ordhc::ErrorCode::kInternal: return ORDHC_ERR_INTERNAL;
  }
  return ORDHC_ERR_INTERNAL;
}

// Runs `body`, translating exceptions into status codes.
template <typename F>
ordhc_status Call(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const ordhc::Error& e) {
    g_last_error = e.what();
    return FromCode(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return ORDHC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ORDHC_ERR_INTERNAL;
  }
}

ordhc_status NullArgument(const char* name) {
  g_last_error = std::string(name) + " must not be NULL";
  return ORDHC_ERR_NULL_POINTER;
}

#define ORDHC_REQUIRE_NOT_NULL(p) \
  do {                            \
    if ((p) == nullptr) return NullArgument(#p); \
  } while (0)

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ordhc::PlantedConfig ToPlanted(const ordhc_planted_config& c) {
  ordhc::PlantedConfig p;
  p.n0 = c.n0;
  p.levels = c.levels;
  p.mu = c.mu;
  p.delta = c.delta;
  p.sigma = c.sigma;
  p.seed = c.seed;
  return p;
}

nlohmann::json ParseJson(const char* text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    ordhc::Fail(ordhc::ErrorCode::kFormat, std::string("config: ") + e.what());
  }
}

ordhc_status Finish(ordhc::RunManifest& manifest, const char* out_dir,
                    ordhc_run_summary* summary) {
  ordhc::WriteRunOutputs(manifest, out_dir);
  std::uint64_t failed = 0;
  for (const ordhc::ResultRow& r : manifest.rows) failed += r.ok() ? 0 : 1;
  if (summary != nullptr) {
    summary->rows = manifest.rows.size();
    summary->failed = failed;
    summary->wall_seconds = manifest.wall_seconds;
  }
  if (failed != 0) {
    for (const ordhc::ResultRow& r : manifest.rows) {
      if (!r.ok()) {
        g_last_error = std::to_string(failed) + " rows failed; first: " +
                       r.method + " trial " + std::to_string(r.trial) + ": " +
                       r.status;
        break;
      }
    }
    return ORDHC_ERR_INCOMPLETE;
  }
  return ORDHC_OK;
}

}  // namespace

extern "C" {

const char* ordhc_version(void) { return "0.1.0"; }

const char* ordhc_status_string(ordhc_status status) {
  switch (status) {
    case ORDHC_OK: return "ok";
    case ORDHC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ORDHC_ERR_OUT_OF_RANGE: return "out of range";
    case ORDHC_ERR_FORMAT: return "format error";
    case ORDHC_ERR_IO: return "i/o error";
    case ORDHC_ERR_CONTRACT: return "contract violation";
    case ORDHC_ERR_INTERNAL: return "internal error";
    case ORDHC_ERR_NULL_POINTER: return "null pointer";
    case ORDHC_ERR_INCOMPLETE: return "incomplete run";
  }
  return "unknown status";
}

const char* ordhc_last_error(void) { return g_last_error.c_str(); }

// ---- data ---------------------------------------------------------------

ordhc_status ordhc_planted_generate(const ordhc_planted_config* config,
                                    ordhc_similarity** similarities,
                                    ordhc_hierarchy** truth) {
  ORDHC_REQUIRE_NOT_NULL(config);
  return Call([&] {
    ordhc::PlantedInstance inst = ordhc::GeneratePlanted(ToPlanted(*config));
    std::unique_ptr<ordhc_hierarchy> h;
    if (truth != nullptr) h.reset(new ordhc_hierarchy{inst.truth});
    if (similarities != nullptr) {
      *similarities = new ordhc_similarity{
          std::make_shared<const ordhc::SimilarityMatrix>(
              std::move(inst.similarities))};
    }
    if (truth != nullptr) *truth = h.release();
    return ORDHC_OK;
  });
}

ordhc_status ordhc_hierarchy_create(int32_t levels, int32_t n0,
                                    ordhc_hierarchy** out) {
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    *out = new ordhc_hierarchy{ordhc::GroundTruthHierarchy(levels, n0)};
    return ORDHC_OK;
  });
}

void ordhc_hierarchy_free(ordhc_hierarchy* h) { delete h; }

ordhc_status ordhc_similarity_from_matrix(int32_t n, const double* values,
                                          ordhc_similarity** out) {
  ORDHC_REQUIRE_NOT_NULL(out);
  if (n > 0) ORDHC_REQUIRE_NOT_NULL(values);
  return Call([&] {
    ordhc::Require(n >= 0, ordhc::ErrorCode::kInvalidArgument,
                   "matrix size must be >= 0");
    auto w = std::make_shared<ordhc::SimilarityMatrix>(n);
    for (int32_t i = 0; i < n; ++i) {
      for (int32_t j = i + 1; j < n; ++j) {
        const double a = values[static_cast<std::size_t>(i) * n + j];
        const double b = values[static_cast<std::size_t>(j) * n + i];
        if (!(a == b)) {
          ordhc::Fail(ordhc::ErrorCode::kInvalidArgument,
                      "similarity matrix is not symmetric at (" +
                          std::to_string(i) + "," + std::to_string(j) + ")");
        }
        w->Set(i, j, a);
      }
    }
    *out = new ordhc_similarity{std::move(w)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_similarity_cosine(const double* features, int32_t n,
                                     int32_t dim, ordhc_similarity** out) {
  ORDHC_REQUIRE_NOT_NULL(out);
  if (n > 0 && dim > 0) ORDHC_REQUIRE_NOT_NULL(features);
  return Call([&] {
    ordhc::Require(n >= 0 && dim >= 0, ordhc::ErrorCode::kInvalidArgument,
                   "feature dimensions must be >= 0");
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(n));
    for (int32_t i = 0; i < n; ++i) {
      rows[i].assign(features + static_cast<std::size_t>(i) * dim,
                     features + static_cast<std::size_t>(i + 1) * dim);
    }
    *out = new ordhc_similarity{std::make_shared<const ordhc::SimilarityMatrix>(
        ordhc::CosineSimilarityMatrix(rows))};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_similarity_size(const ordhc_similarity* w, int32_t* n) {
  ORDHC_REQUIRE_NOT_NULL(w);
  ORDHC_REQUIRE_NOT_NULL(n);
  *n = w->w->size();
  return ORDHC_OK;
}

ordhc_status ordhc_similarity_get(const ordhc_similarity* w, int32_t i,
                                  int32_t j, double* value) {
  ORDHC_REQUIRE_NOT_NULL(w);
  ORDHC_REQUIRE_NOT_NULL(value);
  return Call([&] {
    *value = w->w->At(i, j);
    return ORDHC_OK;
  });
}

void ordhc_similarity_free(ordhc_similarity* w) { delete w; }

// ---- comparisons ----------------------------------------------------------

ordhc_status ordhc_comparisons_sample(const ordhc_similarity* w, double p,
                                      uint64_t seed, ordhc_comparisons** out) {
  ORDHC_REQUIRE_NOT_NULL(w);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    *out = new ordhc_comparisons{ordhc::SamplePassive(*w->w, p, seed)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_comparisons_from_quadruplets(int32_t n, const int32_t* ijkl,
                                                size_t count,
                                                ordhc_comparisons** out) {
  ORDHC_REQUIRE_NOT_NULL(out);
  if (count > 0) ORDHC_REQUIRE_NOT_NULL(ijkl);
  return Call([&] {
    std::vector<ordhc::Quadruplet> quads;
    quads.reserve(count);
    for (size_t r = 0; r < count; ++r) {
      const int32_t* v = ijkl + 4 * r;
      quads.push_back({ordhc::MakePair(v[0], v[1]), ordhc::MakePair(v[2], v[3])});
    }
    *out = new ordhc_comparisons{ordhc::QuadrupletSet::FromQuadruplets(n, quads)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_comparisons_from_triplets(int32_t n, const int32_t* ijk,
                                             size_t count,
                                             ordhc_comparisons** out) {
  ORDHC_REQUIRE_NOT_NULL(out);
  if (count > 0) ORDHC_REQUIRE_NOT_NULL(ijk);
  return Call([&] {
    std::vector<ordhc::Triplet> triplets;
    triplets.reserve(count);
    for (size_t r = 0; r < count; ++r) {
      triplets.push_back({ijk[3 * r], ijk[3 * r + 1], ijk[3 * r + 2]});
    }
    *out = new ordhc_comparisons{ordhc::IngestTriplets(n, triplets)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_comparisons_count(const ordhc_comparisons* q,
                                     uint64_t* count) {
  ORDHC_REQUIRE_NOT_NULL(q);
  ORDHC_REQUIRE_NOT_NULL(count);
  *count = q->q.size();
  return ORDHC_OK;
}

ordhc_status ordhc_comparisons_orientation(const ordhc_comparisons* q,
                                           int32_t i, int32_t j, int32_t k,
                                           int32_t l, int* orientation) {
  ORDHC_REQUIRE_NOT_NULL(q);
  ORDHC_REQUIRE_NOT_NULL(orientation);
  return Call([&] {
    const ordhc::PairId a = ordhc::MakePair(i, j);
    const ordhc::PairId b = ordhc::MakePair(k, l);
    const ordhc::Index n = q->q.n_items();
    ordhc::Require(a.a >= 0 && b.a >= 0 && a.b < n && b.b < n,
                   ordhc::ErrorCode::kOutOfRange, "item index out of range");
    *orientation = q->q.Orientation(a, b);
    return ORDHC_OK;
  });
}

void ordhc_comparisons_free(ordhc_comparisons* q) { delete q; }

ordhc_status ordhc_oracle_create(const ordhc_similarity* w,
                                 ordhc_oracle** out) {
  ORDHC_REQUIRE_NOT_NULL(w);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    *out = new ordhc_oracle{ordhc::ActiveOracle(w->w)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_oracle_compare(ordhc_oracle* o, int32_t i, int32_t j,
                                  int32_t k, int32_t l, int* result) {
  ORDHC_REQUIRE_NOT_NULL(o);
  ORDHC_REQUIRE_NOT_NULL(result);
  return Call([&] {
    const ordhc::PairId a = ordhc::MakePair(i, j);
    const ordhc::PairId b = ordhc::MakePair(k, l);
    const ordhc::Index n = o->oracle.n_items();
    ordhc::Require(a.a >= 0 && b.a >= 0 && a.b < n && b.b < n,
                   ordhc::ErrorCode::kOutOfRange, "item index out of range");
    *result = o->oracle.Compare(a, b) ? 1 : 0;
    return ORDHC_OK;
  });
}

ordhc_status ordhc_oracle_query_count(const ordhc_oracle* o, uint64_t* count) {
  ORDHC_REQUIRE_NOT_NULL(o);
  ORDHC_REQUIRE_NOT_NULL(count);
  *count = o->oracle.query_count();
  return ORDHC_OK;
}

void ordhc_oracle_free(ordhc_oracle* o) { delete o; }

// ---- clustering ------------------------------------------------------------

ordhc_status ordhc_single_linkage(ordhc_oracle* o, ordhc_dendrogram** out) {
  ORDHC_REQUIRE_NOT_NULL(o);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    *out = new ordhc_dendrogram{
        ordhc::SingleLinkage(o->oracle, o->oracle.n_items()).dendrogram};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_complete_linkage(ordhc_oracle* o, ordhc_dendrogram** out) {
  ORDHC_REQUIRE_NOT_NULL(o);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    *out = new ordhc_dendrogram{
        ordhc::CompleteLinkage(o->oracle, o->oracle.n_items()).dendrogram};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_passive_kernel(const ordhc_comparisons* q, int threads,
                                  ordhc_kernel** out) {
  ORDHC_REQUIRE_NOT_NULL(q);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    *out = new ordhc_kernel{ordhc::PassiveKernel(q->q, threads)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_active_kernel(ordhc_oracle* o, double q, int32_t references,
                                 uint64_t seed, uint64_t budget,
                                 ordhc_kernel** out, uint64_t* queries_used) {
  ORDHC_REQUIRE_NOT_NULL(o);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    ordhc::ActiveKernelConfig config;
    config.q = q;
    config.num_references = references;
    config.seed = seed;
    config.query_budget = budget;
    ordhc::ActiveKernelResult r =
        ordhc::ActiveKernel(o->oracle, o->oracle.n_items(), config);
    if (queries_used != nullptr) *queries_used = r.queries_used;
    *out = new ordhc_kernel{std::move(r.kernel)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_kernel_size(const ordhc_kernel* k, int32_t* n) {
  ORDHC_REQUIRE_NOT_NULL(k);
  ORDHC_REQUIRE_NOT_NULL(n);
  *n = k->k.size();
  return ORDHC_OK;
}

ordhc_status ordhc_kernel_get(const ordhc_kernel* k, int32_t i, int32_t j,
                              int64_t* value) {
  ORDHC_REQUIRE_NOT_NULL(k);
  ORDHC_REQUIRE_NOT_NULL(value);
  if (i < 0 || j < 0 || i >= k->k.size() || j >= k->k.size() || i == j) {
    g_last_error = "kernel entry (" + std::to_string(i) + "," +
                   std::to_string(j) + ") is not an off-diagonal entry";
    return ORDHC_ERR_OUT_OF_RANGE;
  }
  *value = k->k(i, j);
  return ORDHC_OK;
}

ordhc_status ordhc_kernel_average_linkage(const ordhc_kernel* k,
                                          ordhc_dendrogram** out) {
  ORDHC_REQUIRE_NOT_NULL(k);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    *out = new ordhc_dendrogram{ordhc::AverageLinkageOnKernel(k->k)};
    return ORDHC_OK;
  });
}

void ordhc_kernel_free(ordhc_kernel* k) { delete k; }

ordhc_status ordhc_four_al(const ordhc_comparisons* q,
                           const int32_t* initial_labels, int verify,
                           ordhc_dendrogram** out) {
  ORDHC_REQUIRE_NOT_NULL(q);
  ORDHC_REQUIRE_NOT_NULL(out);
  return Call([&] {
    const ordhc::Index n = q->q.n_items();
    ordhc::Partition initial;
    if (initial_labels == nullptr) {
      initial = ordhc::Partition::Singletons(n);
    } else {
      for (ordhc::Index i = 0; i < n; ++i) {
        ordhc::Require(initial_labels[i] >= 0, ordhc::ErrorCode::kInvalidArgument,
                       "initial labels must cover every item");
      }
      initial = ordhc::Partition::FromLabels(
          std::span<const ordhc::Index>(initial_labels, static_cast<std::size_t>(n)));
    }
    ordhc::FourAlOptions options;
    options.verify_merge_consistency = verify != 0;
    *out = new ordhc_dendrogram{ordhc::FourAl(q->q, initial, options)};
    return ORDHC_OK;
  });
}

ordhc_status ordhc_dendrogram_leaves(const ordhc_dendrogram* d, int32_t* n) {
  ORDHC_REQUIRE_NOT_NULL(d);
  ORDHC_REQUIRE_NOT_NULL(n);
  *n = d->d.n_leaves();
  return ORDHC_OK;
}

ordhc_status ordhc_dendrogram_merges(const ordhc_dendrogram* d, int32_t* left,
                                     int32_t* right, size_t capacity) {
  ORDHC_REQUIRE_NOT_NULL(d);
  ORDHC_REQUIRE_NOT_NULL(left);
  ORDHC_REQUIRE_NOT_NULL(right);
  const auto& merges = d->d.merges();
  if (capacity < merges.size()) {
    g_last_error = "need room for " + std::to_string(merges.size()) + " merges";
    return ORDHC_ERR_OUT_OF_RANGE;
  }
  for (std::size_t t = 0; t < merges.size(); ++t) {
    left[t] = merges[t].left;
    right[t] = merges[t].right;
  }
  return ORDHC_OK;
}

ordhc_status ordhc_dendrogram_cut(const ordhc_dendrogram* d, int32_t k,
                                  int32_t* labels) {
  ORDHC_REQUIRE_NOT_NULL(d);
  ORDHC_REQUIRE_NOT_NULL(labels);
  return Call([&] {
    const std::vector<ordhc::Index> cut = d->d.CutLabels(k);
    std::copy(cut.begin(), cut.end(), labels);
    return ORDHC_OK;
  });
}

void ordhc_dendrogram_free(ordhc_dendrogram* d) { delete d; }

// ---- evaluation ------------------------------------------------------------

ordhc_status ordhc_ari(const int32_t* labels_a, const int32_t* labels_b,
                       size_t n, double* value) {
  ORDHC_REQUIRE_NOT_NULL(value);
  if (n > 0) {
    ORDHC_REQUIRE_NOT_NULL(labels_a);
    ORDHC_REQUIRE_NOT_NULL(labels_b);
  }
  return Call([&] {
    *value = ordhc::Ari(std::span<const ordhc::Index>(labels_a, n),
                        std::span<const ordhc::Index>(labels_b, n));
    return ORDHC_OK;
  });
}

ordhc_status ordhc_aari(const ordhc_hierarchy* truth, const ordhc_dendrogram* d,
                        double* value) {
  ORDHC_REQUIRE_NOT_NULL(truth);
  ORDHC_REQUIRE_NOT_NULL(d);
  ORDHC_REQUIRE_NOT_NULL(value);
  return Call([&] {
    *value = ordhc::Aari(truth->truth, d->d);
    return ORDHC_OK;
  });
}

ordhc_status ordhc_dasgupta_cost(const ordhc_similarity* w,
                                 const ordhc_dendrogram* d, double* value) {
  ORDHC_REQUIRE_NOT_NULL(w);
  ORDHC_REQUIRE_NOT_NULL(d);
  ORDHC_REQUIRE_NOT_NULL(value);
  return Call([&] {
    *value = ordhc::DasguptaCost(*w->w, d->d);
    return ORDHC_OK;
  });
}

ordhc_status ordhc_beta_expected(double ell, double delta, double sigma,
                                 double* value) {
  ORDHC_REQUIRE_NOT_NULL(value);
  return Call([&] {
    *value = ordhc::BetaExpected(ell, delta, sigma);
    return ORDHC_OK;
  });
}

// ---- experiment harness -----------------------------------------------------

ordhc_status ordhc_planted_sweep(const char* config_json, const char* out_dir,
                                 ordhc_run_summary* summary) {
  ORDHC_REQUIRE_NOT_NULL(config_json);
  ORDHC_REQUIRE_NOT_NULL(out_dir);
  return Call([&] {
    const ordhc::SweepConfig config =
        ordhc::SweepConfig::FromJson(ParseJson(config_json));
    ordhc::RunManifest manifest = ordhc::PlantedSweep(config);
    return Finish(manifest, out_dir, summary);
  });
}

ordhc_status ordhc_dataset_run(const char* config_json, const char* out_dir,
                               ordhc_run_summary* summary) {
  ORDHC_REQUIRE_NOT_NULL(config_json);
  ORDHC_REQUIRE_NOT_NULL(out_dir);
  return Call([&] {
    const ordhc::DatasetConfig config =
        ordhc::DatasetConfig::FromJson(ParseJson(config_json));
    ordhc::RunManifest manifest = ordhc::DatasetRun(config);
    return Finish(manifest, out_dir, summary);
  });
}

ordhc_status ordhc_kernel_dump(const char* config_json, char** csv) {
  ORDHC_REQUIRE_NOT_NULL(config_json);
  ORDHC_REQUIRE_NOT_NULL(csv);
  return Call([&] {
    const ordhc::KernelDumpConfig config =
        ordhc::KernelDumpConfig::FromJson(ParseJson(config_json));
    *csv = CopyString(ordhc::KernelDump(config));
    return ORDHC_OK;
  });
}

ordhc_status ordhc_replay(const char* manifest_path, uint64_t row,
                          int* identical, char** report) {
  ORDHC_REQUIRE_NOT_NULL(manifest_path);
  ORDHC_REQUIRE_NOT_NULL(identical);
  return Call([&] {
    const ordhc::ReplayOutcome r =
        ordhc::Replay(manifest_path, static_cast<std::size_t>(row));
    *identical = r.identical ? 1 : 0;
    if (report != nullptr) {
      const nlohmann::json j = {{"identical", r.identical},
                                {"recorded", r.recorded.ToJson()},
                                {"replayed", r.replayed.ToJson()}};
      *report = CopyString(j.dump(2));
    }
    return ORDHC_OK;
  });
}

void ordhc_string_free(char* s) { std::free(s); }

}  // extern "C"
