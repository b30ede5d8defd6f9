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

#ifndef FEDHEAT_EXPERIMENT_HPP_
#define FEDHEAT_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "fedheat/federation.hpp"
#include "fedheat/hkmvfc.hpp"
#include "fedheat/privacy.hpp"
#include "fedheat/synthgen.hpp"

namespace fedheat {

enum class RunKind { kGenerate, kCluster, kFedRun, kEvaluate, kAblate };

const char* RunKindName(RunKind kind);
RunKind ParseRunKind(const std::string& name);

enum class DataSource { kSynthetic, kDirectory, kIris };

struct DataSpec {
  DataSource source = DataSource::kSynthetic;
  std::filesystem::path path;  // dataset directory, or the Iris CSV
  std::size_t n_per_cluster = 250;
  std::vector<int> subset;  // benchmark clusters to keep; empty keeps all
  // Shape overrides keyed by shape name, applied on top of the defaults.
  std::map<std::string, ShapeSpec> shapes;
  double shape_tolerance = 0.1;
  double ks_alpha = 0.05;
};

struct EvaluateSpec {
  std::filesystem::path predictions;
  std::filesystem::path labels;
  std::filesystem::path dataset;  // optional, enables internal indices
};

struct ExperimentConfig {
  std::uint64_t seed = 42;
  int repetitions = 1;
  std::filesystem::path output = "fedheat_out";
  DataSpec data;
  bool clusters_given = false;  // otherwise taken from the data
  ClusterConfig cluster;
  FedConfig federation;  // its cluster and privacy members are filled at run time
  std::vector<double> fractions;  // empty: 0.85/0.15, or 0.6/0.4 for Iris
  bool certify = true;
  CertificationThresholds certification;
  PrivacyConfig privacy;
  EvaluateSpec evaluate;

  // Throws kInvalidConfig.
  void Validate() const;
};

// Parses a YAML config file. Relative paths resolve against the file's
// directory. A report.jsonl written by a previous run is accepted too; its
// embedded config is used. Errors carry file:line prefixes.
ExperimentConfig ParseConfigFile(const std::filesystem::path& path);
ExperimentConfig ParseConfigText(const std::string& text, const std::string& origin,
                                 const std::filesystem::path& base_dir);

// Every resolved setting except the output directory, as YAML that
// ParseConfigText accepts.
std::string CanonicalConfig(const ExperimentConfig& config);

struct RunReport {
  RunKind kind = RunKind::kCluster;
  int exit_code = 0;
  std::filesystem::path output;
  std::map<std::string, double> metrics;  // means over repetitions
  std::map<std::string, double> metric_std;
  double wall_clock_seconds = 0.0;
  std::string summary;
  std::vector<std::string> diagnostics;
};

// Runs one command and writes its artifacts below config.output.
RunReport RunExperiment(RunKind kind, const ExperimentConfig& config);

// Loads the configured data for repetition seed `seed`.
MultiViewDataset LoadConfiguredData(const ExperimentConfig& config, std::uint64_t seed);

// The benchmark spec the config describes, before subsetting.
BenchmarkSpec ConfiguredBenchmark(const ExperimentConfig& config, std::uint64_t seed);

}  // namespace fedheat

#endif  // FEDHEAT_EXPERIMENT_HPP_
