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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "fedheat/error.hpp"
#include "fedheat/experiment.hpp"
#include "test_util.hpp"

using namespace fedheat;
using fedheat::testing::TempDir;
namespace fs = std::filesystem;

namespace {

ExperimentConfig Parse(const std::string& text, const fs::path& base = ".") {
  return ParseConfigText(text, "test.yaml", base);
}

std::string ErrorOf(const std::string& text) {
  try {
    Parse(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInvalidConfig);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

ExperimentConfig Small(const fs::path& out) {
  ExperimentConfig c = Parse(R"(
experiment: {seed: 3}
data: {n_per_cluster: 40}
cluster: {max_iterations: 40}
federation: {rounds: 4, local_iterations: 3}
)");
  c.output = out;
  return c;
}

}  // namespace

TEST_CASE("config defaults") {
  ExperimentConfig c = Parse("");
  CHECK(c.seed == 42);
  CHECK(c.repetitions == 1);
  CHECK(c.data.source == DataSource::kSynthetic);
  CHECK(c.data.n_per_cluster == 250);
  CHECK(c.cluster.fuzzifier == 2.0);
  CHECK(c.cluster.view_exponent == 5.0);
  CHECK(c.cluster.epsilon == 1e-6);
  CHECK(c.cluster.max_iterations == 100);
  CHECK(c.federation.rounds == 10);
  CHECK(c.federation.local_iterations == 50);
  CHECK(c.federation.gamma == 0.5);
  CHECK(c.privacy.epsilon_total == 1.0);
  CHECK(c.privacy.delta == 1e-5);
  CHECK_FALSE(c.privacy.enabled);
  CHECK(c.certify);
}

TEST_CASE("config values") {
  ExperimentConfig c = Parse(R"(
experiment:
  seed: 9
  repetitions: 3
data:
  subset: [2, 3]
  shapes:
    circle: {center: [1, 1], noise: 0.05, radius: 0.7}
cluster:
  m: 1.5
  hkc: meandev
  restarts: 4
federation:
  fractions: [0.5, 0.3, 0.2]
  aggregation: median
privacy:
  enabled: true
  epsilon_total: 2
  sensitivity_scaling: inverse_n
)");
  CHECK(c.seed == 9);
  CHECK(c.repetitions == 3);
  CHECK(c.data.subset == std::vector<int>{2, 3});
  const ShapeSpec& circle = c.data.shapes.at("circle");
  CHECK(std::get<CircleParams>(circle.params).radius == 0.7);
  CHECK(circle.center[0] == 1.0);
  CHECK(circle.noise_sigma == 0.05);
  CHECK(c.cluster.fuzzifier == 1.5);
  CHECK(c.cluster.hkc == HkcEstimator::kMeanDeviation);
  CHECK(c.cluster.restarts == 4);
  CHECK(c.fractions == std::vector<double>{0.5, 0.3, 0.2});
  CHECK(c.federation.aggregation == Aggregation::kMedian);
  CHECK(c.privacy.enabled);
  CHECK(c.privacy.epsilon_total == 2.0);
  CHECK(c.privacy.sensitivity_scaling == SensitivityScaling::kInverseSampleCount);
}

TEST_CASE("config errors carry a location") {
  std::string e = ErrorOf("cluster:\n  m: 1\n");
  CHECK(e.find("test.yaml:2") != std::string::npos);
  CHECK(e.find("m must be > 1") != std::string::npos);

  e = ErrorOf("cluster:\n  alpha: 5\n  mm: 2\n");
  CHECK(e.find("test.yaml:3") != std::string::npos);
  CHECK(e.find("cluster.mm") != std::string::npos);

  e = ErrorOf("data:\n  shapes:\n    circle: {radius: -1}\n");
  CHECK(e.find("test.yaml:") != std::string::npos);
  CHECK(e.find("radius") != std::string::npos);

  CHECK(ErrorOf("cluster: {init: sideways}").find("init") != std::string::npos);
  CHECK(ErrorOf("cluster: {clusters: two}").find("clusters") != std::string::npos);
  CHECK(ErrorOf("federation: {fractions: [0.5, 0.6]}").find("fractions") != std::string::npos);
  CHECK(ErrorOf("privacy: {fixed_point_scale: 1000}").find("power of two") != std::string::npos);
  CHECK(ErrorOf("experiment: [1, 2").find("test.yaml") != std::string::npos);
  CHECK(ErrorOf("surprise: 1").find("surprise") != std::string::npos);
}

TEST_CASE("canonical config round trip") {
  ExperimentConfig c = Parse(R"(
experiment: {seed: 11}
data: {n_per_cluster: 60, subset: [0, 2]}
cluster: {alpha: 2.5, restarts: 3, distance: squared_euclidean}
federation: {rounds: 7, aggregation: fedavg}
privacy: {enabled: true, delta: 1.0e-6}
)");
  const std::string text = CanonicalConfig(c);
  ExperimentConfig back = Parse(text);
  CHECK(CanonicalConfig(back) == text);
  CHECK(back.seed == 11);
  CHECK(back.cluster.view_exponent == 2.5);
  CHECK(back.cluster.distance == DistanceKind::kSquaredEuclidean);
  CHECK(back.privacy.delta == 1e-6);
  CHECK(back.data.subset == std::vector<int>{0, 2});
}

TEST_CASE("relative data paths resolve against the config file") {
  TempDir tmp("paths");
  fs::create_directories(tmp.path() / "cfg");
  WriteFile(tmp.path() / "cfg" / "run.yaml", "data:\n  source: directory\n  path: ../set\n");
  ExperimentConfig c = ParseConfigFile(tmp.path() / "cfg" / "run.yaml");
  CHECK(fs::weakly_canonical(c.data.path) == fs::weakly_canonical(tmp.path() / "set"));
  try {
    ParseConfigFile(tmp.path() / "absent.yaml");
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kIo);
  }
}

TEST_CASE("generate is deterministic") {
  TempDir tmp("generate");
  ExperimentConfig c = Small(tmp.path() / "a");
  RunReport r = RunExperiment(RunKind::kGenerate, c);
  CHECK(r.exit_code == 0);
  c.output = tmp.path() / "b";
  RunExperiment(RunKind::kGenerate, c);
  for (const char* f : {"meta", "view_1.csv", "view_2.csv", "labels.csv", "validation_report.txt",
                        "report.jsonl"}) {
    CHECK(ReadFile(tmp.path() / "a" / f) == ReadFile(tmp.path() / "b" / f));
  }
  CHECK(ReadDataset(tmp.path() / "a").samples() == 160);

  c.data.n_per_cluster = 2500;
  c.output = tmp.path() / "full";
  CHECK(RunExperiment(RunKind::kGenerate, c).exit_code == 0);
  MultiViewDataset full = ReadDataset(tmp.path() / "full");
  CHECK(full.samples() == 10000);
  CHECK(full.views[0].rows() == full.views[1].rows());
}

TEST_CASE("cluster command") {
  TempDir tmp("cluster");
  ExperimentConfig c = Small(tmp.path() / "run");
  RunReport r = RunExperiment(RunKind::kCluster, c);
  CHECK(r.exit_code == 0);
  CHECK(r.metrics.at("accuracy") > 0.9);
  CHECK(r.metrics.count("silhouette") == 1);
  for (const char* f : {"objective.csv", "view_weights.csv", "predictions.csv", "memberships.csv",
                        "labels.csv", "report.jsonl", "timing.jsonl", "summary.txt"}) {
    CHECK(fs::exists(tmp.path() / "run" / f));
  }
  CHECK(ReadLabels(tmp.path() / "run" / "predictions.csv").size() == 160);

  // Re-running from the report reproduces it.
  ExperimentConfig again = ParseConfigFile(tmp.path() / "run" / "report.jsonl");
  again.output = tmp.path() / "rerun";
  RunExperiment(RunKind::kCluster, again);
  CHECK(ReadFile(tmp.path() / "run" / "report.jsonl") ==
        ReadFile(tmp.path() / "rerun" / "report.jsonl"));
  CHECK(ReadFile(tmp.path() / "run" / "memberships.csv") ==
        ReadFile(tmp.path() / "rerun" / "memberships.csv"));
}

TEST_CASE("unlabeled data only gets internal indices") {
  TempDir tmp("unlabeled");
  MultiViewDataset d = AssembleBenchmark(DefaultBenchmark(30, 5));
  d.labels.reset();
  WriteDataset(tmp.path() / "set", d, 5, "test");
  const std::string source = "data: {source: directory, path: " + (tmp.path() / "set").string() + "}\n";
  ExperimentConfig c = Parse(source + "cluster: {clusters: 4}\n");
  c.output = tmp.path() / "run";
  RunReport r = RunExperiment(RunKind::kCluster, c);
  CHECK(r.metrics.count("accuracy") == 0);
  CHECK(r.metrics.count("nmi") == 0);
  CHECK(r.metrics.count("ari") == 0);
  CHECK(r.metrics.count("silhouette") == 1);
  CHECK(r.metrics.count("calinski_harabasz") == 1);

  // Neither the config nor the data declares a cluster count.
  d.clusters = 0;
  WriteDataset(tmp.path() / "bare", d, 5, "test");
  ExperimentConfig unknown =
      Parse("data: {source: directory, path: " + (tmp.path() / "bare").string() + "}\n");
  unknown.output = tmp.path() / "run2";
  CHECK_THROWS_AS(RunExperiment(RunKind::kCluster, unknown), Error);
}

TEST_CASE("evaluate command") {
  TempDir tmp("evaluate");
  ExperimentConfig c = Small(tmp.path() / "cluster");
  RunReport clustered = RunExperiment(RunKind::kCluster, c);

  ExperimentConfig e = Parse("");
  e.evaluate.predictions = tmp.path() / "cluster" / "predictions.csv";
  e.evaluate.labels = tmp.path() / "cluster" / "labels.csv";
  e.output = tmp.path() / "eval";
  RunReport r = RunExperiment(RunKind::kEvaluate, e);
  for (const char* m : {"accuracy", "nmi", "ari"}) {
    CHECK(r.metrics.at(m) == doctest::Approx(clustered.metrics.at(m)).epsilon(1e-12));
  }
  CHECK(r.metrics.count("silhouette") == 0);

  e.evaluate.predictions = e.evaluate.labels;
  e.output = tmp.path() / "same";
  r = RunExperiment(RunKind::kEvaluate, e);
  CHECK(r.metrics.at("accuracy") == 1.0);
  CHECK(r.metrics.at("ari") == doctest::Approx(1.0));

  WriteLabels(tmp.path() / "short.csv", std::vector<int>{0, 1, 2});
  e.evaluate.predictions = tmp.path() / "short.csv";
  e.output = tmp.path() / "bad";
  try {
    RunExperiment(RunKind::kEvaluate, e);
    FAIL("expected a shape error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kShape);
  }
}

TEST_CASE("ablate command") {
  TempDir tmp("ablate");
  ExperimentConfig c = Small(tmp.path() / "run");
  c.data.subset = {2, 3};
  RunReport r = RunExperiment(RunKind::kAblate, c);
  CHECK(r.exit_code == 0);
  auto rows = Lines(ReadFile(tmp.path() / "run" / "ablation.csv"));
  REQUIRE(rows.size() == 4);
  CHECK(rows[1].rfind("baseline,", 0) == 0);
  CHECK(rows[2].rfind("hkc_minmax,", 0) == 0);
  CHECK(rows[3].rfind("hkc_meandev,", 0) == 0);
}

TEST_CASE("fedrun command") {
  TempDir tmp("fedrun");
  ExperimentConfig c = Small(tmp.path() / "run");
  c.data.n_per_cluster = 100;
  RunReport r = RunExperiment(RunKind::kFedRun, c);
  CHECK(r.exit_code == 0);
  CHECK(r.metrics.at("accuracy") > 0.8);
  CHECK(fs::exists(tmp.path() / "run" / "client_0"));
  CHECK(fs::exists(tmp.path() / "run" / "client_1"));

  auto rows = Lines(ReadFile(tmp.path() / "run" / "payload.csv"));
  REQUIRE(rows.size() >= 2);
  const std::size_t per_client = PayloadBytes({4, {2, 2}, true});
  std::size_t cumulative = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::istringstream in(rows[i]);
    std::string round, bytes, total, naive;
    std::getline(in, round, ',');
    std::getline(in, bytes, ',');
    std::getline(in, total, ',');
    std::getline(in, naive, ',');
    CHECK(std::stoul(bytes) == 2 * per_client);
    cumulative += 2 * per_client;
    CHECK(std::stoul(total) == cumulative);
    CHECK(std::stoul(naive) == 8 * 400 * 4);
  }

  c.output = tmp.path() / "again";
  RunExperiment(RunKind::kFedRun, c);
  CHECK(ReadFile(tmp.path() / "run" / "report.jsonl") ==
        ReadFile(tmp.path() / "again" / "report.jsonl"));
  CHECK(ReadFile(tmp.path() / "run" / "global_view_weights.csv") ==
        ReadFile(tmp.path() / "again" / "global_view_weights.csv"));
}

TEST_CASE("run kinds") {
  for (RunKind k : {RunKind::kGenerate, RunKind::kCluster, RunKind::kFedRun, RunKind::kEvaluate,
                    RunKind::kAblate}) {
    CHECK(ParseRunKind(RunKindName(k)) == k);
  }
  CHECK_THROWS_AS(ParseRunKind("train"), Error);
}
