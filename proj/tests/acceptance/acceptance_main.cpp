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

// Acceptance suite. Prints one PASS/FAIL line per criterion with the
// measured numbers, and exits non-zero when any criterion fails.
//
//   fedheat_acceptance [--configs DIR] [--work DIR] [--only N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fedheat/error.hpp"
#include "fedheat/experiment.hpp"
#include "fedheat/federation.hpp"
#include "fedheat/hkmvfc.hpp"
#include "fedheat/metrics.hpp"
#include "fedheat/privacy.hpp"
#include "fedheat/synthgen.hpp"

namespace fs = std::filesystem;
using namespace fedheat;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string Fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

class Suite {
 public:
  Suite(fs::path configs, fs::path work) : configs_(std::move(configs)), work_(std::move(work)) {}

  ExperimentConfig Config(const std::string& name, const std::string& out) const {
    ExperimentConfig c = ParseConfigFile(configs_ / (name + ".yaml"));
    c.output = work_ / out;
    return c;
  }

  // Cached so later criteria compare against the same runs.
  const RunReport& Run(RunKind kind, const std::string& name) {
    auto it = runs_.find(name);
    if (it == runs_.end()) it = runs_.emplace(name, RunExperiment(kind, Config(name, name))).first;
    return it->second;
  }

  const fs::path& work() const { return work_; }

 private:
  fs::path configs_, work_;
  std::map<std::string, RunReport> runs_;
};

// ---- 1 ----

Outcome DeskAccuracy(Suite& s) {
  const RunReport& r = s.Run(RunKind::kCluster, "desk_cluster");
  const double acc = r.metrics.at("accuracy"), nmi = r.metrics.at("nmi");
  const double per_run = r.wall_clock_seconds / 5.0;
  return {acc >= 0.95 && nmi >= 0.95 && r.wall_clock_seconds < 30.0,
          "accuracy " + Fmt(acc) + " nmi " + Fmt(nmi) + " over 5 seeds, " + Fmt(per_run, 2) +
              " s per run (threshold 0.95 / 0.95 / 30 s)"};
}

// ---- 2 ----

Outcome FederatedRetention(Suite& s) {
  const double central = s.Run(RunKind::kCluster, "desk_cluster").metrics.at("accuracy");
  const double fed = s.Run(RunKind::kFedRun, "desk_fedrun").metrics.at("accuracy");
  return {fed >= 0.98 * central && fed >= 0.95,
          "federated " + Fmt(fed) + " vs centralized " + Fmt(central) + " (ratio " +
              Fmt(fed / central) + ", need >= 0.98 and >= 0.95 absolute)"};
}

// ---- 3 ----

Outcome AblationOrdering(Suite& s) {
  s.Run(RunKind::kAblate, "ablate");
  std::map<std::string, double> nmi;
  std::istringstream in(ReadFile(s.work() / "ablate" / "ablation.csv"));
  std::string line;
  std::getline(in, line);
  std::vector<std::string> header;
  for (std::stringstream hs(line); std::getline(hs, line, ',');) header.push_back(line);
  const auto col = std::find(header.begin(), header.end(), "nmi_mean") - header.begin();
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    for (std::stringstream ls(line); std::getline(ls, line, ',');) cells.push_back(line);
    nmi[cells[0]] = ParseDouble(cells.at(col));
  }
  const double base = nmi.at("baseline"), minmax = nmi.at("hkc_minmax"),
               meandev = nmi.at("hkc_meandev");
  return {minmax >= base + 0.05 && meandev >= base + 0.05,
          "NMI baseline " + Fmt(base) + ", minmax " + Fmt(minmax) + ", meandev " + Fmt(meandev) +
              " (need both >= baseline + 0.05)"};
}

// ---- 4 ----

MultiViewDataset RandomData(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  MultiViewDataset d;
  for (std::size_t dim : {2u, 3u}) {
    Matrix v(n, dim);
    for (double& x : v.values()) x = u(rng);
    d.views.push_back(v);
  }
  return d;
}

std::vector<Matrix> RandomCenters(const MultiViewDataset& d, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<Matrix> out;
  for (const Matrix& v : d.views) {
    Matrix a(c, v.cols());
    for (double& x : a.values()) x = u(rng);
    out.push_back(a);
  }
  return out;
}

Matrix RandomStochastic(std::size_t n, std::size_t c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Matrix m(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0;
    for (std::size_t k = 0; k < c; ++k) s += m(i, k) = u(rng);
    for (std::size_t k = 0; k < c; ++k) m(i, k) /= s;
  }
  return m;
}

double Minimize01(const std::function<double(double)>& f) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    const double x1 = b - g * (b - a), x2 = a + g * (b - a);
    if (f(x1) < f(x2)) {
      b = x2;
    } else {
      a = x1;
    }
  }
  return 0.5 * (a + b);
}

Outcome ExactMinimizers(Suite&) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int violations = 0;
  double worst_rise = -1e300;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 5 + trial % 30, c = 2 + trial % 5;
    MultiViewDataset d = RandomData(n, rng);
    auto coeffs = ComputeAllHkc(d, trial % 2 ? HkcEstimator::kMinMax : HkcEstimator::kMeanDeviation);
    auto dist = DistanceTensor(d, RandomCenters(d, c, rng), coeffs);
    Matrix u = RandomStochastic(n, c, rng);
    const double v0 = unit(rng);
    const std::vector<double> v{v0, 1.0 - v0};
    const double m = 1.1 + 2.9 * unit(rng), alpha = 1.1 + 5.0 * unit(rng);
    const double j0 = Objective(dist, u, v, m, alpha);
    const double ju = Objective(dist, UpdateMemberships(dist, v, m, alpha), v, m, alpha);
    const double jv = Objective(dist, u, UpdateViewWeights(dist, u, m, alpha), m, alpha);
    worst_rise = std::max({worst_rise, ju - j0, jv - j0});
    violations += (ju > j0 + 1e-12) + (jv > j0 + 1e-12);
  }

  double worst_gap = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 9;  // one sample makes every delta zero
    MultiViewDataset d = RandomData(n, rng);
    auto coeffs = ComputeAllHkc(d, HkcEstimator::kMinMax);
    auto dist = DistanceTensor(d, RandomCenters(d, 2, rng), coeffs);
    const double q = unit(rng);
    const std::vector<double> v{q, 1.0 - q};
    Matrix u = UpdateMemberships(dist, v, 2.0, 2.0);
    for (std::size_t i = 0; i < n; ++i) {
      auto f = [&](double x) {
        double s = 0.0;
        for (int h = 0; h < 2; ++h) {
          s += v[h] * v[h] * (x * x * dist[h](i, 0) + (1 - x) * (1 - x) * dist[h](i, 1));
        }
        return s;
      };
      const double p = Minimize01(f);
      // A sample with zero distance to both centers has a flat objective;
      // any membership minimizes it, so compare values there.
      const bool flat = dist[0](i, 0) + dist[0](i, 1) + dist[1](i, 0) + dist[1](i, 1) == 0.0;
      worst_gap = std::max(worst_gap, flat ? std::abs(f(u(i, 0)) - f(p)) : std::abs(u(i, 0) - p));
    }
    Matrix um = RandomStochastic(n, 2, rng);
    auto w = UpdateViewWeights(dist, um, 2.0, 2.0);
    auto cost = ViewCosts(dist, um, 2.0);
    const double best =
        Minimize01([&](double x) { return x * x * cost[0] + (1 - x) * (1 - x) * cost[1]; });
    worst_gap = std::max(worst_gap, std::abs(w[0] - best));
  }
  return {violations == 0 && worst_gap <= 1e-6,
          std::to_string(violations) + " increases in 200 updates (largest change " +
              Sci(worst_rise) + "), closed form vs numerical gap " +
              Sci(worst_gap) + " (need <= 1e-6)"};
}

// ---- 5 ----

Outcome SingleClientReduction(Suite&) {
  constexpr int kIterations = 20;
  MultiViewDataset data = AssembleBenchmark(DefaultBenchmark(250, 1));
  ClusterConfig cc;
  cc.seed = 1;
  cc.epsilon = 1e-300;
  cc.max_iterations = kIterations;
  cc.record_trace = true;
  ClusterModel central = Fit(data, cc);

  FedConfig fc;
  fc.cluster = cc;
  fc.rounds = kIterations;
  fc.local_iterations = 1;
  fc.gamma = fc.rho = 1.0;
  fc.personalization = Personalization::kStatic;
  fc.epsilon_conv = 0.0;
  const std::vector<MultiViewDataset> one{data};

  // Step the protocol by hand to see the client state after every round.
  auto [global, clients] = InitFederation(one, fc);
  int matched = 0;
  for (int t = 0; t < kIterations && t < static_cast<int>(central.trace.size()); ++t) {
    ClientStats stats = ClientRound(clients[0], global, 1, fc);
    const std::vector<double> w{1.0};
    global = AggregateWeighted(std::span<const ClientStats>(&stats, 1), w);
    if (!(clients[0].model == central.trace[t])) break;
    ++matched;
  }
  FederationResult run = RunFederation(one, fc);
  int objective_matches = 0;
  for (std::size_t t = 0; t < run.rounds.size() && t < central.objective_history.size(); ++t) {
    if (run.rounds[t].client_objectives[0] != central.objective_history[t]) break;
    ++objective_matches;
  }
  const bool final_same = run.clients[0].model.memberships == central.memberships &&
                          run.clients[0].model.centers == central.centers &&
                          run.clients[0].model.weights == central.weights;
  return {matched == kIterations && objective_matches == kIterations && final_same,
          std::to_string(matched) + "/" + std::to_string(kIterations) +
              " iterations bitwise equal (U, A, V, J); federated run J sequence " +
              std::to_string(objective_matches) + "/" + std::to_string(kIterations) +
              ", final model " + (final_same ? "identical" : "differs")};
}

// ---- 6 ----

Outcome SecureSumExactness(Suite&) {
  const std::uint64_t scale = std::uint64_t{1} << 20;
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-100.0, 100.0);
  int mismatches = 0, trials = 0;
  for (int m : {2, 3, 5}) {
    std::vector<int> ids(m);
    std::iota(ids.begin(), ids.end(), 0);
    for (int t = 0; t < 1000; ++t, ++trials) {
      std::vector<std::vector<double>> vectors(m, std::vector<double>(8));
      for (auto& v : vectors) {
        for (double& x : v) x = u(rng);
      }
      std::vector<std::int64_t> plain(8, 0);
      std::vector<MaskedShare> shares;
      for (int l = 0; l < m; ++l) {
        shares.push_back(MaskShare(l, vectors[l], ids, rng(), scale));
        for (std::size_t k = 0; k < 8; ++k) plain[k] += EncodeFixedPoint(vectors[l][k], scale);
      }
      // Shares must all come from one session for the masks to cancel.
      const std::uint64_t session = rng();
      shares.clear();
      for (int l = 0; l < m; ++l) shares.push_back(MaskShare(l, vectors[l], ids, session, scale));
      if (UnmaskSumFixed(shares, ids) != plain) ++mismatches;
    }
  }
  // Correlation between a share and the plaintext it hides.
  std::vector<double> x, y;
  const std::vector<int> pair{0, 1};
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 10000; ++t) {
    const std::vector<double> v{unit(rng)};
    x.push_back(v[0]);
    y.push_back(static_cast<double>(MaskShare(0, v, pair, rng(), scale).values[0]));
  }
  auto mean = [](const std::vector<double>& a) {
    return std::accumulate(a.begin(), a.end(), 0.0) / static_cast<double>(a.size());
  };
  const double mx = mean(x), my = mean(y);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const double corr = sxy / std::sqrt(sxx * syy);
  return {mismatches == 0 && std::abs(corr) < 0.05,
          std::to_string(mismatches) + " inexact sums in " + std::to_string(trials) +
              " trials (M in {2,3,5}), share/plaintext correlation " + Fmt(corr) +
              " (need |r| < 0.05)"};
}

// ---- 7 ----

Outcome DpAccounting(Suite& s) {
  constexpr std::size_t kDraws = 100000;
  const double sigma2 = CenterNoiseVariance(1.0, 1e-5, 1.0);
  const double closed = 2.0 * std::log(1.25 / 1e-5);
  std::mt19937_64 rng(7);
  const std::vector<Matrix> zero{Matrix(kDraws, 1)};
  const Matrix noise = DpNoiseCenters(zero, 1.0, 1e-5, 1.0, rng)[0];
  double mean = 0, var = 0;
  for (double v : noise.values()) mean += v;
  mean /= kDraws;
  for (double v : noise.values()) var += (v - mean) * (v - mean);
  var /= kDraws - 1;
  const bool variance_ok = std::abs(sigma2 - closed) < 1e-12 && std::abs(var / closed - 1) <= 0.05;

  const auto eps = BudgetSchedule(1.0, 4);
  const std::vector<double> expected{0.5, 0.3536, 0.2887, 0.25};
  bool schedule_ok = eps.size() == 4;
  for (std::size_t t = 0; schedule_ok && t < 4; ++t) {
    schedule_ok = std::abs(eps[t] - expected[t]) <= 1e-4;
  }

  const double fed = s.Run(RunKind::kFedRun, "desk_fedrun").metrics.at("accuracy");
  const double dp = s.Run(RunKind::kFedRun, "desk_fedrun_dp").metrics.at("accuracy");
  const double loss = 1.0 - dp / fed;
  const bool e2e_ok = loss <= 0.05;

  // Same run with sensitivity scaled by 1/n_l, reported for reference only.
  ExperimentConfig scaled = s.Config("desk_fedrun_dp", "desk_fedrun_dp_inverse_n");
  scaled.privacy.sensitivity_scaling = SensitivityScaling::kInverseSampleCount;
  const double dp_scaled = RunExperiment(RunKind::kFedRun, scaled).metrics.at("accuracy");

  return {variance_ok && schedule_ok && e2e_ok,
          "noise variance " + Fmt(var) + " vs 2 ln(1.25/delta) = " + Fmt(closed) + " (" +
              (variance_ok ? "ok" : "off") + "), schedule " + (schedule_ok ? "ok" : "off") +
              ", DP accuracy " + Fmt(dp) + " vs " + Fmt(fed) + " (relative loss " + Fmt(loss) +
              ", need <= 0.05; with sensitivity 1/n_l: " + Fmt(dp_scaled) + ")"};
}

// ---- 8 ----

Outcome CommunicationAccounting(Suite&) {
  MultiViewDataset data = AssembleBenchmark(DefaultBenchmark(250, 8));
  auto clients = ApplySplit(data, PartitionFederated(data, {0.85, 0.15}, 8));
  FedConfig fc;
  fc.rounds = 5;
  fc.local_iterations = 5;
  fc.epsilon_conv = 0.0;
  FederationResult r = RunFederation(clients, fc);
  // Per client: centers, view weights, and statistics (sizes, feature means
  // and view weights again), each entry an 8-byte double, plus the header.
  const std::size_t c = 4, centers = c * 2 + c * 2, s = 2;
  const std::size_t per_client = 8 * (centers + s + (c + centers + s)) + 32;
  bool exact = per_client == PayloadBytes({c, {2, 2}, true});
  for (const auto& log : r.rounds) exact = exact && log.payload_bytes == 2 * per_client;
  const double naive = 8.0 * static_cast<double>(data.samples()) * c;
  const double ratio = static_cast<double>(2 * per_client) / naive;
  return {exact && ratio <= 0.30,
          std::to_string(2 * per_client) + " bytes per round for M=2 (" +
              (exact ? "matches" : "does not match") + " the formula), " + Fmt(ratio * 100, 2) +
              "% of the " + Fmt(naive, 0) + "-byte membership share (need <= 30%)"};
}

// ---- 9 ----

Outcome GeneratorValidation(Suite&) {
  // Seeds 1..100 decide. Under a calibrated test the expected pass rate is
  // exactly 95%, so a longer run is printed alongside for reference.
  constexpr int kSeeds = 100, kReferenceSeeds = 1000;
  int ks_passes = 0, ks_reference = 0;
  bool counts_ok = true;
  double worst_noiseless = 0.0;
  for (int seed = 1; seed <= kReferenceSeeds; ++seed) {
    BenchmarkSpec spec = DefaultBenchmark(250, static_cast<std::uint64_t>(seed));
    ValidationReport v = ValidateGenerated(AssembleBenchmark(spec), spec);
    const bool ks_ok = v.ks_p_value >= 0.05;
    ks_reference += ks_ok;
    if (seed > kSeeds) continue;
    ks_passes += ks_ok;
    for (const auto& cv : v.clusters) {
      counts_ok = counts_ok && cv.count_ok && cv.count == 250;
      worst_noiseless = std::max(worst_noiseless, cv.noiseless_hausdorff);
    }
  }
  ShapeSpec heart = DefaultBenchmark(250, 1).views[1][3];
  auto p = HeartPoint(heart, std::numbers::pi / 2);
  const double heart_err = std::hypot(p[0] - 2.8, p[1] + 0.8);
  const double rate = static_cast<double>(ks_passes) / kSeeds;
  return {counts_ok && worst_noiseless <= 0.1 && rate >= 0.95 && heart_err < 1e-12,
          std::string("counts ") + (counts_ok ? "exact" : "wrong") + ", worst noiseless Hausdorff " +
              Fmt(worst_noiseless) + " (need <= 0.1), KS passes " + std::to_string(ks_passes) +
              "/" + std::to_string(kSeeds) + " seeds (need >= 95%; seeds 1-1000: " +
              std::to_string(ks_reference) + "/1000), heart(pi/2) = (" + Fmt(p[0]) + ", " +
              Fmt(p[1]) + ")"};
}

// ---- 10 ----

Outcome IrisScenario(Suite& s) {
  const RunReport& r = s.Run(RunKind::kFedRun, "iris_fedrun");
  const double ari = r.metrics.at("ari");
  return {ari >= 0.55, "ARI " + Fmt(ari) + " +- " + Fmt(r.metric_std.at("ari")) +
                           " over 5 seeds (pooled " + Fmt(r.metrics.at("pooled_ari")) +
                           "), need >= 0.55"};
}

// ---- 11 ----

std::vector<std::string> DiffTrees(const fs::path& a, const fs::path& b) {
  std::vector<std::string> diffs;
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(a)) {
    if (!e.is_regular_file() || e.path().filename() == "timing.jsonl") continue;
    const fs::path rel = fs::relative(e.path(), a);
    ++files;
    if (!fs::exists(b / rel) || ReadFile(e.path()) != ReadFile(b / rel)) {
      diffs.push_back(rel.string());
    }
  }
  if (files == 0) diffs.push_back("(no files)");
  return diffs;
}

Outcome Determinism(Suite& s) {
  // Small inputs for evaluate come from the cluster run.
  const fs::path base = s.work() / "determinism";
  fs::remove_all(base);
  std::vector<std::pair<RunKind, ExperimentConfig>> runs;
  runs.emplace_back(RunKind::kGenerate, s.Config("generate", "determinism/generate"));
  runs.emplace_back(RunKind::kCluster, s.Config("desk_cluster", "determinism/cluster"));
  runs.emplace_back(RunKind::kFedRun, s.Config("desk_fedrun_dp", "determinism/fedrun"));
  runs.emplace_back(RunKind::kFedRun, s.Config("iris_fedrun", "determinism/iris"));
  runs.emplace_back(RunKind::kAblate, s.Config("ablate", "determinism/ablate"));
  for (auto& [kind, c] : runs) {
    if (kind != RunKind::kGenerate) c.repetitions = 2;
  }
  ExperimentConfig eval;
  eval.evaluate.predictions = base / "cluster" / "rep_0" / "predictions.csv";
  eval.evaluate.labels = base / "cluster" / "rep_0" / "labels.csv";
  eval.evaluate.dataset = base / "generate";
  eval.output = base / "evaluate";

  std::vector<std::string> failures;
  auto check = [&](RunKind kind, const ExperimentConfig& c) {
    RunExperiment(kind, c);
    ExperimentConfig replay = ParseConfigFile(c.output / "report.jsonl");
    replay.output = c.output.string() + "_replay";
    RunExperiment(kind, replay);
    for (const auto& d : DiffTrees(c.output, replay.output)) {
      failures.push_back(c.output.filename().string() + "/" + d);
    }
  };
  for (const auto& [kind, c] : runs) check(kind, c);
  check(RunKind::kEvaluate, eval);
  std::string detail = "6 commands replayed from their reports";
  if (failures.empty()) return {true, detail + ", all outputs identical"};
  detail += ", differing:";
  for (const auto& f : failures) detail += " " + f;
  return {false, detail};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria for the fedheat library"};
  std::string configs = FEDHEAT_CONFIG_DIR;
  std::string work = (fs::temp_directory_path() / "fedheat_acceptance").string();
  int only = 0;
  app.add_option("--configs", configs, "Directory holding the experiment configs");
  app.add_option("--work", work, "Scratch directory for run outputs");
  app.add_option("--only", only, "Run a single criterion")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  fs::remove_all(work);
  fs::create_directories(work);
  Suite suite(configs, work);

  const std::vector<std::pair<const char*, Outcome (*)(Suite&)>> criteria{
      {"desk-scale accuracy", DeskAccuracy},
      {"federated retention", FederatedRetention},
      {"ablation ordering", AblationOrdering},
      {"exact-minimizer descent", ExactMinimizers},
      {"single-client reduction", SingleClientReduction},
      {"secure sum exactness", SecureSumExactness},
      {"DP accounting", DpAccounting},
      {"communication accounting", CommunicationAccounting},
      {"generator validation", GeneratorValidation},
      {"Iris scenario", IrisScenario},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && static_cast<int>(i) + 1 != only) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second(suite);
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, only ? std::size_t{1} : criteria.size());
  return failed == 0 ? 0 : 1;
}
