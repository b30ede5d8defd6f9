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

#include "fedheat/fedheat.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "fedheat/error.hpp"
#include "fedheat/experiment.hpp"
#include "fedheat/hkmvfc.hpp"
#include "fedheat/metrics.hpp"
#include "fedheat/synthgen.hpp"

struct fh_config {
  fedheat::ExperimentConfig config;
  std::string canonical;
};

struct fh_report {
  fedheat::RunReport report;
  std::vector<std::string> names;
};

struct fh_dataset {
  fedheat::MultiViewDataset data;
};

struct fh_model {
  fedheat::ClusterModel model;
  std::vector<int> labels;
};

namespace {

thread_local std::string last_error;

fh_status StatusOf(fedheat::ErrorCode code) {
  using fedheat::ErrorCode;
  switch (code) {
    case ErrorCode::kInvalidInput: return FH_ERR_INVALID_INPUT;
    case ErrorCode::kShape: return FH_ERR_SHAPE;
    case ErrorCode::kInvalidConfig: return FH_ERR_INVALID_CONFIG;
    case ErrorCode::kIo: return FH_ERR_IO;
    case ErrorCode::kNumerical: return FH_ERR_NUMERICAL;
    case ErrorCode::kValidation: return FH_ERR_VALIDATION;
    case ErrorCode::kProtocol: return FH_ERR_PROTOCOL;
  }
  return FH_ERR_INTERNAL;
}

template <typename Fn>
fh_status Guard(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return FH_OK;
  } catch (const fedheat::Error& e) {
    last_error = e.what();
    return StatusOf(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return FH_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return FH_ERR_INTERNAL;
  }
}

fh_status NullArgument(const char* what) {
  last_error = std::string("null argument: ") + what;
  return FH_ERR_NULL_ARGUMENT;
}

#define FH_REQUIRE_ARG(p) \
  if ((p) == nullptr) return NullArgument(#p)

template <typename T>
fh_status CopyOut(const std::vector<T>& src, T* out, std::size_t capacity, std::size_t* count) {
  if (count != nullptr) *count = src.size();
  if (out != nullptr) std::memcpy(out, src.data(), sizeof(T) * std::min(capacity, src.size()));
  return FH_OK;
}

fh_status Metric(const int* pred, const int* truth, std::size_t n, double* out,
                 double (*fn)(std::span<const int>, std::span<const int>)) {
  FH_REQUIRE_ARG(pred);
  FH_REQUIRE_ARG(truth);
  FH_REQUIRE_ARG(out);
  return Guard([&] { *out = fn({pred, n}, {truth, n}); });
}

}  // namespace

extern "C" {

const char* fh_version(void) { return FEDHEAT_VERSION; }

const char* fh_last_error(void) { return last_error.c_str(); }

const char* fh_status_name(fh_status status) {
  switch (status) {
    case FH_OK: return "ok";
    case FH_ERR_INVALID_INPUT: return "invalid input";
    case FH_ERR_SHAPE: return "shape mismatch";
    case FH_ERR_INVALID_CONFIG: return "invalid config";
    case FH_ERR_IO: return "i/o error";
    case FH_ERR_NUMERICAL: return "numerical failure";
    case FH_ERR_VALIDATION: return "validation failed";
    case FH_ERR_PROTOCOL: return "protocol failure";
    case FH_ERR_NULL_ARGUMENT: return "null argument";
    case FH_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

int fh_status_exit_code(fh_status status) {
  switch (status) {
    case FH_OK: return 0;
    case FH_ERR_NUMERICAL:
    case FH_ERR_PROTOCOL:
    case FH_ERR_INTERNAL: return 2;
    default: return 1;
  }
}

fh_status fh_config_load(const char* path, fh_config** out) {
  FH_REQUIRE_ARG(path);
  FH_REQUIRE_ARG(out);
  return Guard([&] { *out = new fh_config{fedheat::ParseConfigFile(path), {}}; });
}

fh_status fh_config_parse(const char* yaml_text, const char* base_dir, fh_config** out) {
  FH_REQUIRE_ARG(yaml_text);
  FH_REQUIRE_ARG(out);
  return Guard([&] {
    const std::filesystem::path base =
        base_dir ? std::filesystem::path(base_dir) : std::filesystem::current_path();
    *out = new fh_config{fedheat::ParseConfigText(yaml_text, "<config>", base), {}};
  });
}

fh_status fh_config_set_seed(fh_config* config, uint64_t seed) {
  FH_REQUIRE_ARG(config);
  config->config.seed = seed;
  return FH_OK;
}

fh_status fh_config_set_output(fh_config* config, const char* dir) {
  FH_REQUIRE_ARG(config);
  FH_REQUIRE_ARG(dir);
  config->config.output = dir;
  return FH_OK;
}

fh_status fh_config_canonical(fh_config* config, const char** text) {
  FH_REQUIRE_ARG(config);
  FH_REQUIRE_ARG(text);
  return Guard([&] {
    config->canonical = fedheat::CanonicalConfig(config->config);
    *text = config->canonical.c_str();
  });
}

void fh_config_free(fh_config* config) { delete config; }

fh_status fh_run(const fh_config* config, const char* command, fh_report** out) {
  FH_REQUIRE_ARG(config);
  FH_REQUIRE_ARG(command);
  FH_REQUIRE_ARG(out);
  return Guard([&] {
    auto report = std::make_unique<fh_report>();
    report->report = fedheat::RunExperiment(fedheat::ParseRunKind(command), config->config);
    for (const auto& [name, value] : report->report.metrics) report->names.push_back(name);
    *out = report.release();
  });
}

int fh_report_exit_code(const fh_report* report) {
  return report ? report->report.exit_code : 1;
}

const char* fh_report_summary(const fh_report* report) {
  return report ? report->report.summary.c_str() : "";
}

double fh_report_wall_clock(const fh_report* report) {
  return report ? report->report.wall_clock_seconds : 0.0;
}

size_t fh_report_metric_count(const fh_report* report) {
  return report ? report->names.size() : 0;
}

const char* fh_report_metric_name(const fh_report* report, size_t index) {
  if (report == nullptr || index >= report->names.size()) return nullptr;
  return report->names[index].c_str();
}

fh_status fh_report_metric(const fh_report* report, const char* name, double* mean,
                           double* stddev) {
  FH_REQUIRE_ARG(report);
  FH_REQUIRE_ARG(name);
  FH_REQUIRE_ARG(mean);
  auto it = report->report.metrics.find(name);
  if (it == report->report.metrics.end()) {
    last_error = std::string("no metric named ") + name;
    return FH_ERR_INVALID_INPUT;
  }
  *mean = it->second;
  if (stddev != nullptr) *stddev = report->report.metric_std.at(name);
  return FH_OK;
}

void fh_report_free(fh_report* report) { delete report; }

fh_status fh_dataset_create(fh_dataset** out) {
  FH_REQUIRE_ARG(out);
  return Guard([&] { *out = new fh_dataset{}; });
}

fh_status fh_dataset_add_view(fh_dataset* data, const double* values, size_t rows,
                              size_t cols) {
  FH_REQUIRE_ARG(data);
  FH_REQUIRE_ARG(values);
  return Guard([&] {
    fedheat::Require(rows > 0 && cols > 0, fedheat::ErrorCode::kShape, "empty view");
    fedheat::Require(data->data.views.empty() || data->data.samples() == rows,
                     fedheat::ErrorCode::kShape, "views must share the sample count");
    fedheat::Matrix m(rows, cols);
    std::memcpy(m.values().data(), values, sizeof(double) * rows * cols);
    data->data.views.push_back(std::move(m));
  });
}

fh_status fh_dataset_set_labels(fh_dataset* data, const int* labels, size_t n) {
  FH_REQUIRE_ARG(data);
  FH_REQUIRE_ARG(labels);
  return Guard([&] {
    fedheat::Require(data->data.views.empty() || data->data.samples() == n,
                     fedheat::ErrorCode::kShape, "label count does not match the samples");
    data->data.labels = std::vector<int>(labels, labels + n);
  });
}

fh_status fh_dataset_read(const char* dir, fh_dataset** out) {
  FH_REQUIRE_ARG(dir);
  FH_REQUIRE_ARG(out);
  return Guard([&] { *out = new fh_dataset{fedheat::ReadDataset(dir)}; });
}

fh_status fh_dataset_write(const fh_dataset* data, const char* dir, uint64_t seed) {
  FH_REQUIRE_ARG(data);
  FH_REQUIRE_ARG(dir);
  return Guard([&] { fedheat::WriteDataset(dir, data->data, seed, "external"); });
}

fh_status fh_dataset_generate(size_t n_per_cluster, uint64_t seed, fh_dataset** out) {
  FH_REQUIRE_ARG(out);
  return Guard([&] {
    *out = new fh_dataset{
        fedheat::AssembleBenchmark(fedheat::DefaultBenchmark(n_per_cluster, seed))};
  });
}

size_t fh_dataset_samples(const fh_dataset* data) { return data ? data->data.samples() : 0; }

size_t fh_dataset_view_count(const fh_dataset* data) {
  return data ? data->data.view_count() : 0;
}

size_t fh_dataset_view_dim(const fh_dataset* data, size_t view) {
  if (data == nullptr || view >= data->data.view_count()) return 0;
  return data->data.views[view].cols();
}

fh_status fh_dataset_view(const fh_dataset* data, size_t view, const double** values) {
  FH_REQUIRE_ARG(data);
  FH_REQUIRE_ARG(values);
  if (view >= data->data.view_count()) {
    last_error = "view index out of range";
    return FH_ERR_INVALID_INPUT;
  }
  *values = data->data.views[view].values().data();
  return FH_OK;
}

fh_status fh_dataset_labels(const fh_dataset* data, const int** labels) {
  FH_REQUIRE_ARG(data);
  FH_REQUIRE_ARG(labels);
  if (!data->data.labels) {
    last_error = "dataset has no labels";
    return FH_ERR_INVALID_INPUT;
  }
  *labels = data->data.labels->data();
  return FH_OK;
}

void fh_dataset_free(fh_dataset* data) { delete data; }

void fh_cluster_params_default(fh_cluster_params* params) {
  if (params == nullptr) return;
  const fedheat::ClusterConfig d;
  params->clusters = d.clusters;
  params->m = d.fuzzifier;
  params->alpha = d.view_exponent;
  params->epsilon = d.epsilon;
  params->max_iterations = d.max_iterations;
  params->seed = d.seed;
  params->init = FH_INIT_KMEANSPP;
  params->hkc = FH_HKC_MINMAX;
  params->distance = FH_DISTANCE_HEAT_KERNEL;
  params->restarts = d.restarts;
}

fh_status fh_cluster_fit(const fh_dataset* data, const fh_cluster_params* params,
                         fh_model** out) {
  FH_REQUIRE_ARG(data);
  FH_REQUIRE_ARG(params);
  FH_REQUIRE_ARG(out);
  return Guard([&] {
    using fedheat::ErrorCode;
    fedheat::Require(params->init == FH_INIT_KMEANSPP || params->init == FH_INIT_RANDOM,
                     ErrorCode::kInvalidConfig, "unknown init method");
    fedheat::Require(params->hkc == FH_HKC_MINMAX || params->hkc == FH_HKC_MEANDEV,
                     ErrorCode::kInvalidConfig, "unknown hkc estimator");
    fedheat::Require(params->distance == FH_DISTANCE_HEAT_KERNEL ||
                         params->distance == FH_DISTANCE_SQUARED_EUCLIDEAN,
                     ErrorCode::kInvalidConfig, "unknown distance");
    fedheat::ClusterConfig c;
    c.clusters = params->clusters;
    c.fuzzifier = params->m;
    c.view_exponent = params->alpha;
    c.epsilon = params->epsilon;
    c.max_iterations = params->max_iterations;
    c.seed = params->seed;
    c.init = params->init == FH_INIT_RANDOM ? fedheat::InitMethod::kRandom
                                            : fedheat::InitMethod::kKMeansPlusPlus;
    c.hkc = params->hkc == FH_HKC_MEANDEV ? fedheat::HkcEstimator::kMeanDeviation
                                          : fedheat::HkcEstimator::kMinMax;
    c.distance = params->distance == FH_DISTANCE_SQUARED_EUCLIDEAN
                     ? fedheat::DistanceKind::kSquaredEuclidean
                     : fedheat::DistanceKind::kHeatKernel;
    c.restarts = params->restarts;
    auto model = std::make_unique<fh_model>();
    model->model = fedheat::Fit(data->data, c);
    model->labels = model->model.HardLabels();
    *out = model.release();
  });
}

int fh_model_iterations(const fh_model* model) { return model ? model->model.iterations : 0; }

int fh_model_converged(const fh_model* model) {
  return model && model->model.converged ? 1 : 0;
}

double fh_model_objective(const fh_model* model) {
  if (model == nullptr || model->model.objective_history.empty()) return 0.0;
  return model->model.objective_history.back();
}

fh_status fh_model_memberships(const fh_model* model, const double** values, size_t* rows,
                               size_t* cols) {
  FH_REQUIRE_ARG(model);
  FH_REQUIRE_ARG(values);
  const auto& u = model->model.memberships;
  *values = u.values().data();
  if (rows) *rows = u.rows();
  if (cols) *cols = u.cols();
  return FH_OK;
}

fh_status fh_model_centers(const fh_model* model, size_t view, const double** values,
                           size_t* rows, size_t* cols) {
  FH_REQUIRE_ARG(model);
  FH_REQUIRE_ARG(values);
  if (view >= model->model.centers.size()) {
    last_error = "view index out of range";
    return FH_ERR_INVALID_INPUT;
  }
  const auto& a = model->model.centers[view];
  *values = a.values().data();
  if (rows) *rows = a.rows();
  if (cols) *cols = a.cols();
  return FH_OK;
}

fh_status fh_model_weights(const fh_model* model, double* out, size_t capacity,
                           size_t* count) {
  FH_REQUIRE_ARG(model);
  return CopyOut(model->model.weights, out, capacity, count);
}

fh_status fh_model_labels(const fh_model* model, int* out, size_t capacity, size_t* count) {
  FH_REQUIRE_ARG(model);
  return CopyOut(model->labels, out, capacity, count);
}

fh_status fh_model_objective_history(const fh_model* model, double* out, size_t capacity,
                                     size_t* count) {
  FH_REQUIRE_ARG(model);
  return CopyOut(model->model.objective_history, out, capacity, count);
}

void fh_model_free(fh_model* model) { delete model; }

fh_status fh_metric_accuracy(const int* pred, const int* truth, size_t n, double* out) {
  return Metric(pred, truth, n, out, &fedheat::AccuracyMatched);
}

fh_status fh_metric_nmi(const int* pred, const int* truth, size_t n, double* out) {
  return Metric(pred, truth, n, out, &fedheat::Nmi);
}

fh_status fh_metric_ari(const int* pred, const int* truth, size_t n, double* out) {
  return Metric(pred, truth, n, out, &fedheat::Ari);
}

}  // extern "C"
