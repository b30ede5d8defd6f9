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

#include "fedheat/experiment.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "fedheat/error.hpp"
#include "fedheat/logging.hpp"
#include "fedheat/metrics.hpp"

namespace fedheat {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::uint64_t RepetitionSeed(const ExperimentConfig& c, int r) {
  return c.seed + static_cast<std::uint64_t>(r);
}

fs::path RepetitionDir(const ExperimentConfig& c, int r) {
  return c.repetitions == 1 ? c.output : c.output / ("rep_" + std::to_string(r));
}

int ResolveClusters(const ExperimentConfig& c, const MultiViewDataset& data) {
  if (c.clusters_given) return c.cluster.clusters;
  if (data.clusters > 0) return data.clusters;
  if (data.labels) {
    return static_cast<int>(std::set<int>(data.labels->begin(), data.labels->end()).size());
  }
  Fail(ErrorCode::kInvalidConfig,
       "cluster.clusters is required when the data declares no cluster count");
}

// Line-oriented report: one JSON object per line.
class ReportWriter {
 public:
  ReportWriter(RunKind kind, const ExperimentConfig& c) {
    Add({{"record", "header"},
         {"tool", "fedheat"},
         {"version", FEDHEAT_VERSION},
         {"command", RunKindName(kind)},
         {"seed", c.seed}});
    Add({{"record", "config"}, {"text", CanonicalConfig(c)}});
  }

  void Add(json record) { lines_.push_back(record.dump()); }

  void Write(const fs::path& path) const {
    std::string text;
    for (const auto& line : lines_) text += line + "\n";
    WriteFile(path, text);
  }

 private:
  std::vector<std::string> lines_;
};

json MetricsJson(const MetricReport& m) {
  json values = json::object();
  json missing = json::object();
  auto put = [&](const char* name, const MetricValue& v) {
    if (v.value) {
      values[name] = *v.value;
    } else {
      missing[name] = v.reason;
    }
  };
  put("accuracy", m.accuracy);
  put("nmi", m.nmi);
  put("ari", m.ari);
  put("silhouette", m.silhouette);
  put("calinski_harabasz", m.calinski_harabasz);
  put("view_consensus", m.view_consensus);
  put("cross_view_stability_artifact", m.cross_view_stability_artifact);
  return {{"values", values}, {"unavailable", missing}};
}

// Per-metric mean and sample standard deviation over repetitions.
class MetricSummary {
 public:
  void Add(const std::string& name, double value) { samples_[name].push_back(value); }
  void Add(const json& values) {
    for (auto it = values.begin(); it != values.end(); ++it) Add(it.key(), it.value().get<double>());
  }

  void Fill(RunReport& report) const {
    for (const auto& [name, v] : samples_) {
      const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
      double ss = 0.0;
      for (double x : v) ss += (x - mean) * (x - mean);
      report.metrics[name] = mean;
      report.metric_std[name] = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
    }
  }

  static json Json(const RunReport& report) {
    json out = json::object();
    for (const auto& [name, mean] : report.metrics) {
      out[name] = {{"mean", mean}, {"std", report.metric_std.at(name)}};
    }
    return out;
  }

 private:
  std::map<std::string, std::vector<double>> samples_;
};

std::string SummaryText(const std::string& title, const RunReport& report,
                        const std::vector<std::string>& extra) {
  std::ostringstream out;
  out << title << "\n";
  for (const auto& [name, mean] : report.metrics) {
    out << "  " << name << ": " << FormatDouble(mean);
    const double sd = report.metric_std.at(name);
    if (sd > 0.0) out << " +/- " << FormatDouble(sd);
    out << "\n";
  }
  for (const auto& line : extra) out << line << "\n";
  return out.str();
}

void WriteObjective(const fs::path& path, const std::vector<double>& objective) {
  std::string text = "iteration,objective\n";
  for (std::size_t t = 0; t < objective.size(); ++t) {
    text += std::to_string(t + 1) + "," + FormatDouble(objective[t]) + "\n";
  }
  WriteFile(path, text);
}

void WriteWeights(const fs::path& path, const std::vector<double>& weights) {
  std::string text = "view,weight\n";
  for (std::size_t h = 0; h < weights.size(); ++h) {
    text += std::to_string(h + 1) + "," + FormatDouble(weights[h]) + "\n";
  }
  WriteFile(path, text);
}

void WriteModelFiles(const fs::path& dir, const MultiViewDataset& data, const Matrix& memberships,
                     const std::vector<int>& labels, const std::vector<double>& objective,
                     const std::vector<double>& weights) {
  fs::create_directories(dir);
  WriteObjective(dir / "objective.csv", objective);
  WriteWeights(dir / "view_weights.csv", weights);
  WriteLabels(dir / "predictions.csv", labels);
  WriteCsvMatrix(dir / "memberships.csv", memberships);
  if (data.labels) WriteLabels(dir / "labels.csv", *data.labels);
}

std::vector<std::vector<int>> ViewLabels(const MultiViewDataset& data,
                                         std::span<const Matrix> centers,
                                         std::span<const HeatKernelCoeffs> coeffs,
                                         DistanceKind kind) {
  return PerViewLabels(DistanceTensor(data, centers, coeffs, kind));
}

// ---- generate ----

RunReport CmdGenerate(const ExperimentConfig& c, ReportWriter& report) {
  Require(c.data.source == DataSource::kSynthetic, ErrorCode::kInvalidConfig,
          "generate needs data.source: synthetic");
  RunReport out;
  const BenchmarkSpec spec = ConfiguredBenchmark(c, c.seed);
  const MultiViewDataset data = AssembleBenchmark(spec);
  WriteDataset(c.output, data, c.seed, kGeneratorVersion);
  const ValidationReport v =
      ValidateGenerated(data, spec, c.data.shape_tolerance, c.data.ks_alpha);
  WriteFile(c.output / "validation_report.txt", v.ToText());
  out.exit_code = v.passed ? 0 : 1;
  out.metrics = {{"samples", static_cast<double>(data.samples())},
                 {"ks_p_value", v.ks_p_value},
                 {"ks_statistic", v.ks_statistic},
                 {"cross_view_correlation", v.cross_view_correlation},
                 {"validation_passed", v.passed ? 1.0 : 0.0}};
  for (const auto& [k, val] : out.metrics) out.metric_std[k] = 0.0;
  json clusters = json::array();
  for (const auto& cv : v.clusters) {
    clusters.push_back({{"view", cv.view + 1},
                        {"cluster", cv.cluster},
                        {"shape", ShapeName(cv.kind)},
                        {"count", cv.count},
                        {"count_ok", cv.count_ok},
                        {"hausdorff", cv.hausdorff},
                        {"hausdorff_limit", cv.hausdorff_limit},
                        {"noiseless_hausdorff", cv.noiseless_hausdorff}});
  }
  report.Add({{"record", "validation"},
              {"passed", v.passed},
              {"ks_p_value", v.ks_p_value},
              {"ks_statistic", v.ks_statistic},
              {"ks_samples", v.ks_samples},
              {"cross_view_correlation", v.cross_view_correlation},
              {"clusters", clusters}});
  if (!v.passed) {
    out.diagnostics.push_back("generated data failed validation; see validation_report.txt");
  }
  out.summary = SummaryText("generate: " + std::to_string(data.samples()) + " rows per view, " +
                                std::to_string(data.view_count()) + " views, validation " +
                                (v.passed ? "passed" : "FAILED"),
                            out, {});
  return out;
}

// ---- cluster ----

RunReport CmdCluster(const ExperimentConfig& c, ReportWriter& report, json& timing) {
  RunReport out;
  MetricSummary summary;
  std::vector<std::string> extra;
  for (int r = 0; r < c.repetitions; ++r) {
    const std::uint64_t seed = RepetitionSeed(c, r);
    const MultiViewDataset data = LoadConfiguredData(c, seed);
    ClusterConfig cc = c.cluster;
    cc.clusters = ResolveClusters(c, data);
    cc.seed = seed;
    const auto start = Clock::now();
    const ClusterModel model = Fit(data, cc);
    const double elapsed = Seconds(start);
    timing.push_back({{"repetition", r}, {"seed", seed}, {"wall_clock_seconds", elapsed}});
    out.wall_clock_seconds += elapsed;

    const std::vector<int> labels = model.HardLabels();
    std::vector<HeatKernelCoeffs> coeffs;
    if (cc.distance == DistanceKind::kHeatKernel) coeffs = ComputeAllHkc(data, cc.hkc, cc.hkc_eps);
    const MetricReport metrics = EvaluateClustering(
        data, labels, ViewLabels(data, model.centers, coeffs, cc.distance), cc.clusters);
    const json mj = MetricsJson(metrics);
    summary.Add(mj["values"]);
    summary.Add("objective", model.objective_history.back());
    summary.Add("iterations", model.iterations);
    for (std::size_t h = 0; h < model.weights.size(); ++h) {
      summary.Add("weight_view_" + std::to_string(h + 1), model.weights[h]);
    }
    WriteModelFiles(RepetitionDir(c, r), data, model.memberships, labels,
                    model.objective_history, model.weights);
    report.Add({{"record", "run"},
                {"repetition", r},
                {"seed", seed},
                {"clusters", cc.clusters},
                {"metrics", mj["values"]},
                {"unavailable", mj["unavailable"]},
                {"iterations", model.iterations},
                {"converged", model.converged},
                {"objective", model.objective_history},
                {"weights", model.weights},
                {"selected_restart", model.selected_restart},
                {"restart_objectives", model.restart_objectives},
                {"diagnostics", model.diagnostics}});
    for (const auto& d : model.diagnostics) out.diagnostics.push_back(d);
    for (const auto& [name, reason] : mj["unavailable"].items()) {
      extra.push_back("  " + name + ": n/a (" + reason.get<std::string>() + ")");
    }
  }
  summary.Fill(out);
  std::set<std::string> unique(extra.begin(), extra.end());
  out.summary = SummaryText("cluster: " + std::to_string(c.repetitions) + " repetition(s)", out,
                            {unique.begin(), unique.end()});
  return out;
}

// ---- fedrun ----

std::vector<double> Fractions(const ExperimentConfig& c) {
  if (!c.fractions.empty()) return c.fractions;
  if (c.data.source == DataSource::kIris) return {0.6, 0.4};
  return {0.85, 0.15};
}

void WriteRoundFiles(const fs::path& dir, const FederationResult& result, std::size_t n,
                     int clusters) {
  std::string rounds = "round";
  for (std::size_t l = 0; l < result.clients.size(); ++l) {
    rounds += ",objective_client_" + std::to_string(l);
  }
  for (std::size_t l = 0; l < result.clients.size(); ++l) {
    rounds += ",weight_client_" + std::to_string(l);
  }
  rounds += ",payload_bytes,epsilon_t,center_shift,weight_shift,converged\n";
  std::string payload = "round,payload_bytes,cumulative_bytes,membership_share_bytes\n";
  std::size_t cumulative = 0;
  const std::size_t naive = 8 * n * static_cast<std::size_t>(clusters);
  for (const auto& log : result.rounds) {
    rounds += std::to_string(log.round);
    for (double j : log.client_objectives) rounds += "," + FormatDouble(j);
    for (double w : log.client_weights) rounds += "," + FormatDouble(w);
    rounds += "," + std::to_string(log.payload_bytes) + "," + FormatDouble(log.epsilon_t) + "," +
              FormatDouble(log.center_shift) + "," + FormatDouble(log.weight_shift) + "," +
              (log.converged ? "1" : "0") + "\n";
    cumulative += log.payload_bytes;
    payload += std::to_string(log.round) + "," + std::to_string(log.payload_bytes) + "," +
               std::to_string(cumulative) + "," + std::to_string(naive) + "\n";
  }
  WriteFile(dir / "rounds.csv", rounds);
  WriteFile(dir / "payload.csv", payload);
}

RunReport CmdFedRun(const ExperimentConfig& c, ReportWriter& report, json& timing) {
  RunReport out;
  MetricSummary summary;
  std::vector<std::string> extra;
  for (int r = 0; r < c.repetitions; ++r) {
    const std::uint64_t seed = RepetitionSeed(c, r);
    const MultiViewDataset data = LoadConfiguredData(c, seed);
    const int clusters = ResolveClusters(c, data);
    const FederatedSplit split = PartitionFederated(data, Fractions(c), seed);
    std::vector<MultiViewDataset> parts = ApplySplit(data, split);

    json cert = nullptr;
    if (c.certify) {
      CertificationReport cr = PrepareAndValidate(parts, clusters, c.certification);
      parts = std::move(cr.datasets);
      std::size_t imputed = std::accumulate(cr.imputed_entries.begin(),
                                            cr.imputed_entries.end(), std::size_t{0});
      std::size_t outliers = 0;
      for (const auto& o : cr.outliers) outliers += o.size();
      cert = {{"eta", cr.eta},
              {"eta_global", cr.eta_global},
              {"xi_global", cr.xi_global},
              {"imputed_entries", imputed},
              {"outliers", outliers}};
      summary.Add("eta_global", cr.eta_global);
      summary.Add("xi_global", cr.xi_global);
    }

    FedConfig fed = c.federation;
    fed.cluster = c.cluster;
    fed.cluster.clusters = clusters;
    fed.cluster.seed = seed;
    fed.privacy = c.privacy;
    const auto start = Clock::now();
    const FederationResult result = RunFederation(parts, fed);
    const double elapsed = Seconds(start);
    timing.push_back({{"repetition", r}, {"seed", seed}, {"wall_clock_seconds", elapsed}});
    out.wall_clock_seconds += elapsed;

    const fs::path dir = RepetitionDir(c, r);
    fs::create_directories(dir);
    std::vector<int> pooled(data.samples(), 0);
    std::vector<std::vector<int>> pooled_views(data.view_count(),
                                               std::vector<int>(data.samples(), 0));
    double acc = 0.0, nmi = 0.0, ari = 0.0;
    bool truth = data.labels.has_value();
    json clients = json::array();
    for (std::size_t l = 0; l < result.clients.size(); ++l) {
      const ClientState& cs = result.clients[l];
      const std::vector<int> labels = HardLabels(cs.model.memberships);
      const auto views = ViewLabels(cs.data, cs.model.centers, cs.coeffs, fed.cluster.distance);
      for (std::size_t i = 0; i < labels.size(); ++i) {
        pooled[split.clients[l][i]] = labels[i];
        for (std::size_t h = 0; h < views.size(); ++h) {
          pooled_views[h][split.clients[l][i]] = views[h][i];
        }
      }
      const MetricReport m = EvaluateClustering(cs.data, labels, views, clusters);
      const json mj = MetricsJson(m);
      const double share = static_cast<double>(labels.size()) / static_cast<double>(data.samples());
      if (truth) {
        acc += share * m.accuracy.value.value_or(0.0);
        nmi += share * m.nmi.value.value_or(0.0);
        ari += share * m.ari.value.value_or(0.0);
      }
      WriteModelFiles(dir / ("client_" + std::to_string(l)), cs.data, cs.model.memberships,
                      labels, cs.objective_history, cs.model.weights);
      clients.push_back({{"client", l},
                         {"samples", labels.size()},
                         {"metrics", mj["values"]},
                         {"unavailable", mj["unavailable"]},
                         {"gamma", cs.gamma},
                         {"rho", cs.rho},
                         {"objective", cs.objective_history},
                         {"weights", cs.model.weights},
                         {"diagnostics", cs.diagnostics}});
      for (const auto& d : cs.diagnostics) out.diagnostics.push_back(d);
    }
    if (truth) {
      summary.Add("accuracy", acc);
      summary.Add("nmi", nmi);
      summary.Add("ari", ari);
    }
    // Pooled view: every sample labelled by its own client's personalized model.
    const MetricReport pooled_metrics = EvaluateClustering(data, pooled, pooled_views, clusters);
    const json pj = MetricsJson(pooled_metrics);
    for (const auto& [name, v] : pj["values"].items()) summary.Add("pooled_" + name, v.get<double>());
    for (const auto& [name, reason] : pj["unavailable"].items()) {
      extra.push_back("  pooled_" + name + ": n/a (" + reason.get<std::string>() + ")");
    }
    std::size_t total_bytes = 0;
    for (const auto& log : result.rounds) total_bytes += log.payload_bytes;
    summary.Add("rounds", static_cast<double>(result.rounds.size()));
    summary.Add("payload_bytes_total", static_cast<double>(total_bytes));
    for (std::size_t h = 0; h < result.global.weights.size(); ++h) {
      summary.Add("global_weight_view_" + std::to_string(h + 1), result.global.weights[h]);
    }

    WriteRoundFiles(dir, result, data.samples(), clusters);
    WriteWeights(dir / "global_view_weights.csv", result.global.weights);
    for (std::size_t h = 0; h < result.global.centers.size(); ++h) {
      WriteCsvMatrix(dir / ("global_centers_view_" + std::to_string(h + 1) + ".csv"),
                     result.global.centers[h]);
    }
    WriteLabels(dir / "predictions.csv", pooled);
    if (data.labels) WriteLabels(dir / "labels.csv", *data.labels);

    for (const auto& log : result.rounds) {
      report.Add({{"record", "round"},
                  {"repetition", r},
                  {"round", log.round},
                  {"client_objectives", log.client_objectives},
                  {"client_weights", log.client_weights},
                  {"gamma", log.gamma},
                  {"payload_bytes", log.payload_bytes},
                  {"epsilon_t", log.epsilon_t},
                  {"center_shift", log.center_shift},
                  {"weight_shift", log.weight_shift},
                  {"converged", log.converged}});
    }
    json run_metrics = json::object();
    if (truth) run_metrics = {{"accuracy", acc}, {"nmi", nmi}, {"ari", ari}};
    report.Add({{"record", "run"},
                {"repetition", r},
                {"seed", seed},
                {"clusters", clusters},
                {"client_samples", [&] {
                   std::vector<std::size_t> n;
                   for (const auto& idx : split.clients) n.push_back(idx.size());
                   return n;
                 }()},
                {"certification", cert},
                {"metrics", run_metrics},
                {"pooled_metrics", pj["values"]},
                {"convergence_round", result.convergence_round},
                {"global_weights", result.global.weights},
                {"clients", clients},
                {"diagnostics", result.diagnostics}});
    for (const auto& d : result.diagnostics) out.diagnostics.push_back(d);
  }
  summary.Fill(out);
  std::set<std::string> unique(extra.begin(), extra.end());
  out.summary = SummaryText("fedrun: " + std::to_string(c.repetitions) + " repetition(s), " +
                                std::to_string(Fractions(c).size()) + " clients",
                            out, {unique.begin(), unique.end()});
  return out;
}

// ---- ablate ----

struct AblationMethod {
  const char* name;
  DistanceKind distance;
  HkcEstimator hkc;
};

constexpr AblationMethod kAblationMethods[] = {
    {"baseline", DistanceKind::kSquaredEuclidean, HkcEstimator::kMinMax},
    {"hkc_minmax", DistanceKind::kHeatKernel, HkcEstimator::kMinMax},
    {"hkc_meandev", DistanceKind::kHeatKernel, HkcEstimator::kMeanDeviation},
};

RunReport CmdAblate(const ExperimentConfig& c, ReportWriter& report, json& timing) {
  RunReport out;
  MetricSummary summary;
  std::map<std::string, MetricSummary> per_method;
  std::map<std::string, double> runtime;
  for (int r = 0; r < c.repetitions; ++r) {
    const std::uint64_t seed = RepetitionSeed(c, r);
    const MultiViewDataset data = LoadConfiguredData(c, seed);
    Require(data.labels.has_value(), ErrorCode::kInvalidInput, "ablate needs labelled data");
    for (const auto& method : kAblationMethods) {
      ClusterConfig cc = c.cluster;
      cc.clusters = ResolveClusters(c, data);
      cc.seed = seed;
      cc.distance = method.distance;
      cc.hkc = method.hkc;
      const auto start = Clock::now();
      const ClusterModel model = Fit(data, cc);
      const double elapsed = Seconds(start);
      runtime[method.name] += elapsed / c.repetitions;
      timing.push_back({{"repetition", r},
                        {"seed", seed},
                        {"method", method.name},
                        {"wall_clock_seconds", elapsed}});
      out.wall_clock_seconds += elapsed;
      const std::vector<int> labels = model.HardLabels();
      const double acc = AccuracyMatched(labels, *data.labels);
      const double nmi = Nmi(labels, *data.labels);
      const double ari = Ari(labels, *data.labels);
      per_method[method.name].Add("accuracy", acc);
      per_method[method.name].Add("nmi", nmi);
      per_method[method.name].Add("ari", ari);
      summary.Add(std::string(method.name) + "_accuracy", acc);
      summary.Add(std::string(method.name) + "_nmi", nmi);
      summary.Add(std::string(method.name) + "_ari", ari);
      report.Add({{"record", "run"},
                  {"repetition", r},
                  {"seed", seed},
                  {"method", method.name},
                  {"metrics", {{"accuracy", acc}, {"nmi", nmi}, {"ari", ari}}},
                  {"iterations", model.iterations},
                  {"objective", model.objective_history},
                  {"weights", model.weights}});
    }
  }
  std::string table =
      "method,accuracy_mean,accuracy_std,nmi_mean,nmi_std,ari_mean,ari_std\n";
  for (const auto& method : kAblationMethods) {
    RunReport m;
    per_method[method.name].Fill(m);
    table += std::string(method.name);
    for (const char* key : {"accuracy", "nmi", "ari"}) {
      table += "," + FormatDouble(m.metrics[key]) + "," + FormatDouble(m.metric_std[key]);
    }
    table += "\n";
    // Wall clock stays out of ablation.csv so reruns compare bitwise.
    timing.push_back({{"method", method.name}, {"mean_wall_clock_seconds", runtime[method.name]}});
  }
  fs::create_directories(c.output);
  WriteFile(c.output / "ablation.csv", table);
  summary.Fill(out);
  out.summary = SummaryText("ablate: " + std::to_string(c.repetitions) + " repetition(s)", out, {});
  return out;
}

// ---- evaluate ----

RunReport CmdEvaluate(const ExperimentConfig& c, ReportWriter& report) {
  Require(!c.evaluate.predictions.empty() && !c.evaluate.labels.empty(),
          ErrorCode::kInvalidConfig, "evaluate needs evaluate.predictions and evaluate.labels");
  const std::vector<int> pred = ReadLabels(c.evaluate.predictions);
  const std::vector<int> truth = ReadLabels(c.evaluate.labels);
  Require(pred.size() == truth.size(), ErrorCode::kShape,
          "predictions have " + std::to_string(pred.size()) + " rows but labels have " +
              std::to_string(truth.size()));
  MultiViewDataset data;
  if (!c.evaluate.dataset.empty()) {
    data = ReadDataset(c.evaluate.dataset);
    Require(data.samples() == pred.size(), ErrorCode::kShape,
            "dataset row count does not match the predictions");
  } else {
    // Truth-based metrics only; a one-column zero view keeps shapes valid.
    data.views = {Matrix(pred.size(), 1)};
  }
  data.labels = truth;
  const int clusters = static_cast<int>(std::set<int>(pred.begin(), pred.end()).size());
  MetricReport m = EvaluateClustering(data, pred, {}, clusters);
  if (c.evaluate.dataset.empty()) {
    m.silhouette = {std::nullopt, "no dataset given"};
    m.calinski_harabasz = {std::nullopt, "no dataset given"};
  }
  const json mj = MetricsJson(m);
  RunReport out;
  MetricSummary summary;
  summary.Add(mj["values"]);
  summary.Fill(out);
  report.Add({{"record", "run"},
              {"repetition", 0},
              {"metrics", mj["values"]},
              {"unavailable", mj["unavailable"]},
              {"confusion", [&] {
                 std::set<int> classes(truth.begin(), truth.end());
                 classes.insert(pred.begin(), pred.end());
                 const Matrix cm = ConfusionMatrix(pred, truth, *classes.rbegin() + 1);
                 std::vector<std::vector<double>> rows;
                 for (std::size_t i = 0; i < cm.rows(); ++i) {
                   rows.emplace_back(cm.row(i).begin(), cm.row(i).end());
                 }
                 return rows;
               }()}});
  std::vector<std::string> extra;
  for (const auto& [name, reason] : mj["unavailable"].items()) {
    extra.push_back("  " + name + ": n/a (" + reason.get<std::string>() + ")");
  }
  out.summary = SummaryText("evaluate: " + std::to_string(pred.size()) + " samples", out, extra);
  return out;
}

}  // namespace

BenchmarkSpec ConfiguredBenchmark(const ExperimentConfig& config, std::uint64_t seed) {
  BenchmarkSpec spec = DefaultBenchmark(config.data.n_per_cluster, seed);
  for (auto& view : spec.views) {
    for (auto& shape : view) {
      auto it = config.data.shapes.find(ShapeName(shape.kind()));
      if (it != config.data.shapes.end()) shape = it->second;
    }
  }
  if (!config.data.subset.empty()) spec = SubsetClusters(spec, config.data.subset);
  return spec;
}

MultiViewDataset LoadConfiguredData(const ExperimentConfig& config, std::uint64_t seed) {
  switch (config.data.source) {
    case DataSource::kSynthetic:
      return AssembleBenchmark(ConfiguredBenchmark(config, seed));
    case DataSource::kDirectory: {
      Require(fs::is_directory(config.data.path), ErrorCode::kIo,
              "dataset directory not found: " + config.data.path.string());
      return ReadDataset(config.data.path);
    }
    case DataSource::kIris:
      return LoadIrisTwoView(seed, config.data.path.empty() ? DefaultIrisPath()
                                                            : config.data.path)
          .first;
  }
  Fail(ErrorCode::kInvalidConfig, "unknown data source");
}

RunReport RunExperiment(RunKind kind, const ExperimentConfig& config) {
  config.Validate();
  fs::create_directories(config.output);
  ReportWriter report(kind, config);
  json timing = json::array();
  const auto start = Clock::now();
  RunReport out;
  switch (kind) {
    case RunKind::kGenerate: out = CmdGenerate(config, report); break;
    case RunKind::kCluster: out = CmdCluster(config, report, timing); break;
    case RunKind::kFedRun: out = CmdFedRun(config, report, timing); break;
    case RunKind::kAblate: out = CmdAblate(config, report, timing); break;
    case RunKind::kEvaluate: out = CmdEvaluate(config, report); break;
  }
  out.kind = kind;
  out.output = config.output;
  const double total = Seconds(start);
  if (out.wall_clock_seconds == 0.0) out.wall_clock_seconds = total;
  report.Add({{"record", "summary"},
              {"exit_code", out.exit_code},
              {"metrics", MetricSummary::Json(out)}});
  report.Write(config.output / "report.jsonl");
  std::string timing_text;
  for (const auto& t : timing) timing_text += t.dump() + "\n";
  timing_text += json{{"total_wall_clock_seconds", total}}.dump() + "\n";
  WriteFile(config.output / "timing.jsonl", timing_text);
  WriteFile(config.output / "summary.txt", out.summary);
  logging::Info(std::string(RunKindName(kind)) + " finished in " + FormatDouble(total) + " s");
  return out;
}

}  // namespace fedheat
