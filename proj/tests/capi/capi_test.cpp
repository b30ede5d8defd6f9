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

// Exercises the shared library through its C interface only.

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"
#include "fedheat/fedheat.h"

namespace {

std::filesystem::path Scratch(const char* tag) {
  auto p = std::filesystem::temp_directory_path() / (std::string("fedheat_capi_") + tag);
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("status helpers") {
  CHECK(std::strlen(fh_version()) > 0);
  CHECK(std::string(fh_status_name(FH_OK)) != std::string(fh_status_name(FH_ERR_IO)));
  CHECK(fh_status_exit_code(FH_OK) == 0);
  CHECK(fh_status_exit_code(FH_ERR_INVALID_CONFIG) == 1);
  CHECK(fh_status_exit_code(FH_ERR_IO) == 1);
  CHECK(fh_status_exit_code(FH_ERR_NUMERICAL) == 2);
  CHECK(fh_status_exit_code(FH_ERR_PROTOCOL) == 2);
}

TEST_CASE("null arguments are reported, not dereferenced") {
  CHECK(fh_config_parse(nullptr, nullptr, nullptr) == FH_ERR_NULL_ARGUMENT);
  CHECK(std::strlen(fh_last_error()) > 0);
  CHECK(fh_cluster_fit(nullptr, nullptr, nullptr) == FH_ERR_NULL_ARGUMENT);
  double v = 0;
  CHECK(fh_metric_accuracy(nullptr, nullptr, 3, &v) == FH_ERR_NULL_ARGUMENT);
  fh_config_free(nullptr);
  fh_report_free(nullptr);
  fh_dataset_free(nullptr);
  fh_model_free(nullptr);
}

TEST_CASE("config errors") {
  fh_config* cfg = nullptr;
  CHECK(fh_config_parse("cluster:\n  m: 0.5\n", nullptr, &cfg) == FH_ERR_INVALID_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(fh_last_error()).find(":2:") != std::string::npos);
  CHECK(fh_config_load("/nonexistent/run.yaml", &cfg) == FH_ERR_IO);

  REQUIRE(fh_config_parse("experiment: {seed: 4}\n", nullptr, &cfg) == FH_OK);
  const char* text = nullptr;
  REQUIRE(fh_config_canonical(cfg, &text) == FH_OK);
  CHECK(std::string(text).find("seed: 4") != std::string::npos);
  CHECK(fh_run(cfg, "train", nullptr) != FH_OK);
  fh_config_free(cfg);
}

TEST_CASE("datasets") {
  fh_dataset* d = nullptr;
  REQUIRE(fh_dataset_create(&d) == FH_OK);
  const double a[] = {0, 0, 0, 1, 5, 5, 5, 6};
  const double b[] = {1, 1, 2, 2};
  CHECK(fh_dataset_add_view(d, a, 4, 2) == FH_OK);
  CHECK(fh_dataset_add_view(d, b, 3, 1) == FH_ERR_SHAPE);
  CHECK(fh_dataset_add_view(d, b, 4, 1) == FH_OK);
  const int labels[] = {0, 0, 1, 1};
  const int* got = nullptr;
  CHECK(fh_dataset_labels(d, &got) == FH_ERR_INVALID_INPUT);
  CHECK(fh_dataset_set_labels(d, labels, 3) == FH_ERR_SHAPE);
  CHECK(fh_dataset_set_labels(d, labels, 4) == FH_OK);
  CHECK(fh_dataset_samples(d) == 4);
  CHECK(fh_dataset_view_count(d) == 2);
  CHECK(fh_dataset_view_dim(d, 0) == 2);
  const double* view = nullptr;
  REQUIRE(fh_dataset_view(d, 0, &view) == FH_OK);
  CHECK(view[3] == 1.0);
  CHECK(fh_dataset_view(d, 2, &view) != FH_OK);

  auto dir = Scratch("dataset");
  REQUIRE(fh_dataset_write(d, dir.c_str(), 1) == FH_OK);
  fh_dataset* back = nullptr;
  REQUIRE(fh_dataset_read(dir.c_str(), &back) == FH_OK);
  REQUIRE(fh_dataset_labels(back, &got) == FH_OK);
  CHECK(got[2] == 1);
  fh_dataset_free(back);
  fh_dataset_free(d);
  std::filesystem::remove_all(dir);
  CHECK(fh_dataset_read(dir.c_str(), &back) == FH_ERR_IO);
}

TEST_CASE("clustering the synthetic benchmark") {
  fh_dataset* d = nullptr;
  REQUIRE(fh_dataset_generate(100, 42, &d) == FH_OK);
  CHECK(fh_dataset_samples(d) == 400);

  fh_cluster_params p;
  fh_cluster_params_default(&p);
  CHECK(p.clusters == 4);
  CHECK(p.m == 2.0);
  CHECK(p.alpha == 5.0);
  p.seed = 3;
  fh_model* model = nullptr;
  REQUIRE(fh_cluster_fit(d, &p, &model) == FH_OK);
  CHECK(fh_model_iterations(model) >= 1);

  const double* u = nullptr;
  size_t rows = 0, cols = 0;
  REQUIRE(fh_model_memberships(model, &u, &rows, &cols) == FH_OK);
  CHECK(rows == 400);
  CHECK(cols == 4);
  for (size_t i = 0; i < rows; ++i) {
    double s = 0;
    for (size_t k = 0; k < cols; ++k) s += u[i * cols + k];
    CHECK(s == doctest::Approx(1.0));
  }
  const double* centers = nullptr;
  REQUIRE(fh_model_centers(model, 1, &centers, &rows, &cols) == FH_OK);
  CHECK(rows == 4);
  CHECK(cols == 2);

  double w[2];
  size_t count = 0;
  REQUIRE(fh_model_weights(model, w, 2, &count) == FH_OK);
  CHECK(count == 2);
  CHECK(w[0] + w[1] == doctest::Approx(1.0));
  CHECK(fh_model_weights(model, nullptr, 0, &count) == FH_OK);
  CHECK(count == 2);

  std::vector<int> pred(400);
  REQUIRE(fh_model_labels(model, pred.data(), pred.size(), &count) == FH_OK);
  const int* truth = nullptr;
  REQUIRE(fh_dataset_labels(d, &truth) == FH_OK);
  double acc = 0, nmi = 0, ari = 0;
  REQUIRE(fh_metric_accuracy(pred.data(), truth, 400, &acc) == FH_OK);
  REQUIRE(fh_metric_nmi(pred.data(), truth, 400, &nmi) == FH_OK);
  REQUIRE(fh_metric_ari(pred.data(), truth, 400, &ari) == FH_OK);
  CHECK(acc > 0.9);
  CHECK(nmi > 0.8);
  CHECK(ari > 0.8);

  std::vector<double> history(200);
  REQUIRE(fh_model_objective_history(model, history.data(), history.size(), &count) == FH_OK);
  CHECK(count == static_cast<size_t>(fh_model_iterations(model)));
  CHECK(history[count - 1] == fh_model_objective(model));
  CHECK(history[count - 1] <= history[0]);

  p.m = 1.0;
  fh_model* bad = nullptr;
  CHECK(fh_cluster_fit(d, &p, &bad) == FH_ERR_INVALID_CONFIG);
  CHECK(bad == nullptr);
  fh_model_free(model);
  fh_dataset_free(d);
}

TEST_CASE("running a command") {
  fh_config* cfg = nullptr;
  REQUIRE(fh_config_parse("data: {n_per_cluster: 40}\ncluster: {max_iterations: 30}\n", nullptr,
                          &cfg) == FH_OK);
  auto dir = Scratch("run");
  REQUIRE(fh_config_set_output(cfg, dir.c_str()) == FH_OK);
  REQUIRE(fh_config_set_seed(cfg, 5) == FH_OK);
  fh_report* report = nullptr;
  REQUIRE(fh_run(cfg, "cluster", &report) == FH_OK);
  CHECK(fh_report_exit_code(report) == 0);
  CHECK(std::string(fh_report_summary(report)).find("accuracy") != std::string::npos);
  CHECK(fh_report_wall_clock(report) > 0.0);
  CHECK(fh_report_metric_count(report) >= 3);
  bool saw_nmi = false;
  for (size_t i = 0; i < fh_report_metric_count(report); ++i) {
    saw_nmi |= std::string(fh_report_metric_name(report, i)) == "nmi";
  }
  CHECK(saw_nmi);
  double mean = 0, sd = -1;
  CHECK(fh_report_metric(report, "accuracy", &mean, &sd) == FH_OK);
  CHECK(mean > 0.9);
  CHECK(sd == 0.0);
  CHECK(fh_report_metric(report, "accuracy", &mean, nullptr) == FH_OK);
  CHECK(fh_report_metric(report, "bogus", &mean, nullptr) == FH_ERR_INVALID_INPUT);
  CHECK(std::filesystem::exists(dir / "report.jsonl"));
  fh_report_free(report);

  fh_config* again = nullptr;
  REQUIRE(fh_config_load((dir / "report.jsonl").c_str(), &again) == FH_OK);
  const char* a = nullptr;
  const char* b = nullptr;
  fh_config_canonical(cfg, &a);
  fh_config_canonical(again, &b);
  CHECK(std::string(a) == std::string(b));
  fh_config_free(again);
  fh_config_free(cfg);
  std::filesystem::remove_all(dir);
}
