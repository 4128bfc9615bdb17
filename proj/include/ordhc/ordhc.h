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


/* C interface to the ordhc library: comparison-based hierarchical
 * clustering. Objects are opaque handles released with the matching
 * *_free function. Every fallible call returns an ordhc_status; on failure
 * ordhc_last_error() describes the problem for the calling thread.
 *
 * Item indices are 0-based. A "pair" argument (i, j) needs i != j. */

#ifndef ORDHC_ORDHC_H_
#define ORDHC_ORDHC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ORDHC_API __declspec(dllexport)
#elif defined(ORDHC_BUILDING_LIBRARY)
#define ORDHC_API __attribute__((visibility("default")))
#else
#define ORDHC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ordhc_status {
  ORDHC_OK = 0,
  ORDHC_ERR_INVALID_ARGUMENT = 1,
  ORDHC_ERR_OUT_OF_RANGE = 2,
  ORDHC_ERR_FORMAT = 3,
  ORDHC_ERR_IO = 4,
  ORDHC_ERR_CONTRACT = 5,
  ORDHC_ERR_INTERNAL = 6,
  ORDHC_ERR_NULL_POINTER = 7,
  /* A sweep finished but some rows failed; outputs were still written. */
  ORDHC_ERR_INCOMPLETE = 8
} ordhc_status;

ORDHC_API const char* ordhc_version(void);
ORDHC_API const char* ordhc_status_string(ordhc_status status);
/* Message of the last failed call on this thread; "" if none. */
ORDHC_API const char* ordhc_last_error(void);

typedef struct ordhc_similarity ordhc_similarity;
typedef struct ordhc_hierarchy ordhc_hierarchy;
typedef struct ordhc_comparisons ordhc_comparisons;
typedef struct ordhc_oracle ordhc_oracle;
typedef struct ordhc_kernel ordhc_kernel;
typedef struct ordhc_dendrogram ordhc_dendrogram;

/* ---- data ---------------------------------------------------------------- */

typedef struct ordhc_planted_config {
  int32_t n0;     /* items per pure cluster */
  int32_t levels; /* N = n0 * 2^levels */
  double mu;
  double delta;
  double sigma;
  uint64_t seed;
} ordhc_planted_config;

/* Either output may be NULL when not wanted. */
ORDHC_API ordhc_status ordhc_planted_generate(const ordhc_planted_config* config,
                                              ordhc_similarity** similarities,
                                              ordhc_hierarchy** truth);
ORDHC_API ordhc_status ordhc_hierarchy_create(int32_t levels, int32_t n0,
                                              ordhc_hierarchy** out);
ORDHC_API void ordhc_hierarchy_free(ordhc_hierarchy* h);

/* `values` is n*n row-major; the diagonal is ignored and the matrix must be
 * symmetric. */
ORDHC_API ordhc_status ordhc_similarity_from_matrix(int32_t n,
                                                    const double* values,
                                                    ordhc_similarity** out);
/* `features` is n*dim row-major; rows must have non-zero norm. */
ORDHC_API ordhc_status ordhc_similarity_cosine(const double* features,
                                               int32_t n, int32_t dim,
                                               ordhc_similarity** out);
ORDHC_API ordhc_status ordhc_similarity_size(const ordhc_similarity* w,
                                             int32_t* n);
ORDHC_API ordhc_status ordhc_similarity_get(const ordhc_similarity* w,
                                            int32_t i, int32_t j,
                                            double* value);
ORDHC_API void ordhc_similarity_free(ordhc_similarity* w);

/* ---- comparisons ----------------------------------------------------------- */

/* Keeps each pair-of-pairs independently with probability p. */
ORDHC_API ordhc_status ordhc_comparisons_sample(const ordhc_similarity* w,
                                                double p, uint64_t seed,
                                                ordhc_comparisons** out);
/* `ijkl` holds count rows of 4 indices: pair (i,j) beat pair (k,l). */
ORDHC_API ordhc_status ordhc_comparisons_from_quadruplets(
    int32_t n, const int32_t* ijkl, size_t count, ordhc_comparisons** out);
/* `ijk` holds count rows of 3 indices: i is closer to j than to k. */
ORDHC_API ordhc_status ordhc_comparisons_from_triplets(int32_t n,
                                                       const int32_t* ijk,
                                                       size_t count,
                                                       ordhc_comparisons** out);
ORDHC_API ordhc_status ordhc_comparisons_count(const ordhc_comparisons* q,
                                               uint64_t* count);
/* +1 if (i,j) beat (k,l) was observed, -1 for the reverse, 0 otherwise. */
ORDHC_API ordhc_status ordhc_comparisons_orientation(const ordhc_comparisons* q,
                                                     int32_t i, int32_t j,
                                                     int32_t k, int32_t l,
                                                     int* orientation);
ORDHC_API void ordhc_comparisons_free(ordhc_comparisons* q);

/* Active oracle over hidden similarities; counts distinct queries. */
ORDHC_API ordhc_status ordhc_oracle_create(const ordhc_similarity* w,
                                           ordhc_oracle** out);
/* *result = 1 iff w_ij > w_kl (ties go to the smaller pair). */
ORDHC_API ordhc_status ordhc_oracle_compare(ordhc_oracle* o, int32_t i,
                                            int32_t j, int32_t k, int32_t l,
                                            int* result);
ORDHC_API ordhc_status ordhc_oracle_query_count(const ordhc_oracle* o,
                                                uint64_t* count);
ORDHC_API void ordhc_oracle_free(ordhc_oracle* o);

/* ---- clustering ------------------------------------------------------------ */

ORDHC_API ordhc_status ordhc_single_linkage(ordhc_oracle* o,
                                            ordhc_dendrogram** out);
ORDHC_API ordhc_status ordhc_complete_linkage(ordhc_oracle* o,
                                              ordhc_dendrogram** out);

ORDHC_API ordhc_status ordhc_passive_kernel(const ordhc_comparisons* q,
                                            int threads, ordhc_kernel** out);
/* With budget > 0 the reference count follows from the budget and
 * `references` is ignored. `queries_used` may be NULL. */
ORDHC_API ordhc_status ordhc_active_kernel(ordhc_oracle* o, double q,
                                           int32_t references, uint64_t seed,
                                           uint64_t budget, ordhc_kernel** out,
                                           uint64_t* queries_used);
ORDHC_API ordhc_status ordhc_kernel_size(const ordhc_kernel* k, int32_t* n);
ORDHC_API ordhc_status ordhc_kernel_get(const ordhc_kernel* k, int32_t i,
                                        int32_t j, int64_t* value);
ORDHC_API ordhc_status ordhc_kernel_average_linkage(const ordhc_kernel* k,
                                                    ordhc_dendrogram** out);
ORDHC_API void ordhc_kernel_free(ordhc_kernel* k);

/* 4-AL. `initial_labels` (n entries, NULL for singletons) assigns every item
 * an initial cluster label. A non-zero `verify` checks the merge identity of
 * the preference counts after every merge. */
ORDHC_API ordhc_status ordhc_four_al(const ordhc_comparisons* q,
                                     const int32_t* initial_labels, int verify,
                                     ordhc_dendrogram** out);

ORDHC_API ordhc_status ordhc_dendrogram_leaves(const ordhc_dendrogram* d,
                                               int32_t* n);
/* Writes the n-1 merges; node ids below n are leaves and merge t creates node
 * n+t. `capacity` is the length of each array. */
ORDHC_API ordhc_status ordhc_dendrogram_merges(const ordhc_dendrogram* d,
                                               int32_t* left, int32_t* right,
                                               size_t capacity);
/* Labels (n entries) of the partition with k clusters. */
ORDHC_API ordhc_status ordhc_dendrogram_cut(const ordhc_dendrogram* d,
                                            int32_t k, int32_t* labels);
ORDHC_API void ordhc_dendrogram_free(ordhc_dendrogram* d);

/* ---- evaluation ------------------------------------------------------------ */

ORDHC_API ordhc_status ordhc_ari(const int32_t* labels_a,
                                 const int32_t* labels_b, size_t n,
                                 double* value);
ORDHC_API ordhc_status ordhc_aari(const ordhc_hierarchy* truth,
                                  const ordhc_dendrogram* d, double* value);
ORDHC_API ordhc_status ordhc_dasgupta_cost(const ordhc_similarity* w,
                                           const ordhc_dendrogram* d,
                                           double* value);
ORDHC_API ordhc_status ordhc_beta_expected(double ell, double delta,
                                           double sigma, double* value);

/* ---- experiment harness ------------------------------------------------------ */

typedef struct ordhc_run_summary {
  uint64_t rows;
  uint64_t failed;
  double wall_seconds;
} ordhc_run_summary;

/* Run a sweep or dataset run described by a JSON config and write
 * results.csv, summary.csv, manifest.json and plots into out_dir. Returns
 * ORDHC_ERR_INCOMPLETE when some rows failed. `summary` may be NULL. */
ORDHC_API ordhc_status ordhc_planted_sweep(const char* config_json,
                                           const char* out_dir,
                                           ordhc_run_summary* summary);
ORDHC_API ordhc_status ordhc_dataset_run(const char* config_json,
                                         const char* out_dir,
                                         ordhc_run_summary* summary);
/* *csv receives a string to release with ordhc_string_free. */
ORDHC_API ordhc_status ordhc_kernel_dump(const char* config_json, char** csv);
/* Recomputes one manifest row. *identical is 1 when value, comparison count
 * and seeds match bit for bit. *report (may be NULL) receives JSON with the
 * recorded and replayed rows. */
ORDHC_API ordhc_status ordhc_replay(const char* manifest_path, uint64_t row,
                                    int* identical, char** report);
ORDHC_API void ordhc_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* ORDHC_ORDHC_H_ */
