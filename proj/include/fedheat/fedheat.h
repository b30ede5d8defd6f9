// Copyright 2026 The FedHeat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the fedheat library.
 *
 * Every function returns an fh_status. On failure, fh_last_error() returns a
 * message for the calling thread. Objects are opaque and owned by the caller,
 * who releases them with the matching *_free function. Borrowed pointers stay
 * valid until their owner is freed. */
#ifndef FEDHEAT_FEDHEAT_H_
#define FEDHEAT_FEDHEAT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(FEDHEAT_BUILDING_LIBRARY)
#define FH_API __declspec(dllexport)
#else
#define FH_API __declspec(dllimport)
#endif
#else
#define FH_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fh_status {
  FH_OK = 0,
  FH_ERR_INVALID_INPUT = 1,
  FH_ERR_SHAPE = 2,
  FH_ERR_INVALID_CONFIG = 3,
  FH_ERR_IO = 4,
  FH_ERR_NUMERICAL = 5,
  FH_ERR_VALIDATION = 6,
  FH_ERR_PROTOCOL = 7,
  FH_ERR_NULL_ARGUMENT = 8,
  FH_ERR_INTERNAL = 9
} fh_status;

typedef struct fh_config fh_config;
typedef struct fh_report fh_report;
typedef struct fh_dataset fh_dataset;
typedef struct fh_model fh_model;

FH_API const char* fh_version(void);
FH_API const char* fh_last_error(void);
FH_API const char* fh_status_name(fh_status status);
/* Process exit code for a status: 0 ok, 1 input or config problem,
 * 2 numerical or protocol failure. */
FH_API int fh_status_exit_code(fh_status status);

/* ---- experiment configuration ---- */

/* YAML config file, or a report.jsonl from an earlier run. */
FH_API fh_status fh_config_load(const char* path, fh_config** out);
/* Relative paths in the text resolve against base_dir (may be NULL). */
FH_API fh_status fh_config_parse(const char* yaml_text, const char* base_dir,
                                 fh_config** out);
FH_API fh_status fh_config_set_seed(fh_config* config, uint64_t seed);
FH_API fh_status fh_config_set_output(fh_config* config, const char* dir);
/* Canonical YAML echo, borrowed from the config. */
FH_API fh_status fh_config_canonical(fh_config* config, const char** text);
FH_API void fh_config_free(fh_config* config);

/* command: generate, cluster, fedrun, ablate or evaluate. Artifacts go to
 * the configured output directory. */
FH_API fh_status fh_run(const fh_config* config, const char* command, fh_report** out);
/* 0 unless the command finished but its checks failed (generate). */
FH_API int fh_report_exit_code(const fh_report* report);
FH_API const char* fh_report_summary(const fh_report* report);
FH_API double fh_report_wall_clock(const fh_report* report);
FH_API size_t fh_report_metric_count(const fh_report* report);
FH_API const char* fh_report_metric_name(const fh_report* report, size_t index);
/* FH_ERR_INVALID_INPUT when the metric is absent. stddev may be NULL. */
FH_API fh_status fh_report_metric(const fh_report* report, const char* name, double* mean,
                                  double* stddev);
FH_API void fh_report_free(fh_report* report);

/* ---- datasets ---- */

FH_API fh_status fh_dataset_create(fh_dataset** out);
/* Copies a row-major rows x cols view. All views must share rows. */
FH_API fh_status fh_dataset_add_view(fh_dataset* data, const double* values, size_t rows,
                                     size_t cols);
FH_API fh_status fh_dataset_set_labels(fh_dataset* data, const int* labels, size_t n);
FH_API fh_status fh_dataset_read(const char* dir, fh_dataset** out);
FH_API fh_status fh_dataset_write(const fh_dataset* data, const char* dir, uint64_t seed);
/* The default two-view, four-cluster synthetic benchmark. */
FH_API fh_status fh_dataset_generate(size_t n_per_cluster, uint64_t seed, fh_dataset** out);
FH_API size_t fh_dataset_samples(const fh_dataset* data);
FH_API size_t fh_dataset_view_count(const fh_dataset* data);
FH_API size_t fh_dataset_view_dim(const fh_dataset* data, size_t view);
/* Borrowed row-major storage of one view. */
FH_API fh_status fh_dataset_view(const fh_dataset* data, size_t view, const double** values);
/* Borrowed labels; FH_ERR_INVALID_INPUT when the dataset has none. */
FH_API fh_status fh_dataset_labels(const fh_dataset* data, const int** labels);
FH_API void fh_dataset_free(fh_dataset* data);

/* ---- centralized clustering ---- */

enum { FH_INIT_KMEANSPP = 0, FH_INIT_RANDOM = 1 };
enum { FH_HKC_MINMAX = 0, FH_HKC_MEANDEV = 1 };
enum { FH_DISTANCE_HEAT_KERNEL = 0, FH_DISTANCE_SQUARED_EUCLIDEAN = 1 };

typedef struct fh_cluster_params {
  int clusters;
  double m;
  double alpha;
  double epsilon;
  int max_iterations;
  uint64_t seed;
  int init;
  int hkc;
  int distance;
  int restarts;
} fh_cluster_params;

FH_API void fh_cluster_params_default(fh_cluster_params* params);
FH_API fh_status fh_cluster_fit(const fh_dataset* data, const fh_cluster_params* params,
                                fh_model** out);
FH_API int fh_model_iterations(const fh_model* model);
FH_API int fh_model_converged(const fh_model* model);
FH_API double fh_model_objective(const fh_model* model);
/* Borrowed n x c row-major memberships. */
FH_API fh_status fh_model_memberships(const fh_model* model, const double** values,
                                      size_t* rows, size_t* cols);
/* Borrowed c x d_h row-major centers of one view. */
FH_API fh_status fh_model_centers(const fh_model* model, size_t view, const double** values,
                                  size_t* rows, size_t* cols);
/* Copies up to capacity entries; count receives the full length. */
FH_API fh_status fh_model_weights(const fh_model* model, double* out, size_t capacity,
                                  size_t* count);
FH_API fh_status fh_model_labels(const fh_model* model, int* out, size_t capacity,
                                 size_t* count);
FH_API fh_status fh_model_objective_history(const fh_model* model, double* out,
                                            size_t capacity, size_t* count);
FH_API void fh_model_free(fh_model* model);

/* ---- metrics ---- */

FH_API fh_status fh_metric_accuracy(const int* pred, const int* truth, size_t n, double* out);
FH_API fh_status fh_metric_nmi(const int* pred, const int* truth, size_t n, double* out);
FH_API fh_status fh_metric_ari(const int* pred, const int* truth, size_t n, double* out);

#ifdef __cplusplus
}
#endif

#endif /* FEDHEAT_FEDHEAT_H_ */
