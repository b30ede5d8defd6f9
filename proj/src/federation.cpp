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

#include "fedheat/federation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fedheat/assignment.hpp"
#include "fedheat/error.hpp"
#include "fedheat/logging.hpp"

namespace fedheat {
namespace {

constexpr double kSimplexTolerance = 1e-12;

// Renormalize only when the sum is off, so exact inputs pass through
// untouched.
void RenormalizeIfNeeded(std::vector<double>& v) {
  double sum = std::accumulate(v.begin(), v.end(), 0.0);
  Require(sum > 0.0 && std::isfinite(sum), ErrorCode::kNumerical,
          "aggregated view weights are not normalizable");
  if (std::abs(sum - 1.0) > kSimplexTolerance) {
    for (double& x : v) x /= sum;
  }
}

bool IsIdentity(std::span<const int> perm) {
  for (std::size_t k = 0; k < perm.size(); ++k) {
    if (perm[k] != static_cast<int>(k)) return false;
  }
  return true;
}

void CheckAligned(std::span<const ClientStats> stats) {
  Require(!stats.empty(), ErrorCode::kProtocol, "aggregation needs at least one client");
  const ClientStats& ref = stats.front();
  for (const ClientStats& s : stats) {
    Require(s.centers.size() == ref.centers.size() &&
                s.views.size() == ref.views.size(),
            ErrorCode::kProtocol, "clients disagree on the number of views");
    for (std::size_t h = 0; h < ref.centers.size(); ++h) {
      Require(s.centers[h].rows() == ref.centers[h].rows(), ErrorCode::kProtocol,
              "clients disagree on the cluster count; aggregation across "
              "heterogeneous c is not supported");
      Require(s.centers[h].cols() == ref.centers[h].cols(), ErrorCode::kProtocol,
              "clients disagree on view dimensions");
    }
  }
}

void FeatureStats(const MultiViewDataset& data,
                  std::vector<std::vector<double>>& mean,
                  std::vector<std::vector<double>>& variance) {
  mean.clear();
  variance.clear();
  const double n = static_cast<double>(data.samples());
  for (const Matrix& x : data.views) {
    std::vector<double> mu(x.cols(), 0.0), var(x.cols(), 0.0);
    for (std::size_t j = 0; j < x.cols(); ++j) {
      for (std::size_t i = 0; i < x.rows(); ++i) mu[j] += x(i, j);
      mu[j] /= n;
      for (std::size_t i = 0; i < x.rows(); ++i) {
        double d = x(i, j) - mu[j];
        var[j] += d * d;
      }
      var[j] /= n;
    }
    mean.push_back(std::move(mu));
    variance.push_back(std::move(var));
  }
}

void ApplyPermutation(ModelState& model, std::span<const int> perm) {
  model.centers = PermuteCenters(model.centers, perm);
  if (!model.memberships.empty()) {
    model.memberships = PermuteMembershipColumns(model.memberships, perm);
  }
}

}  // namespace

void FedConfig::Validate() const {
  cluster.Validate();
  privacy.Validate();
  Require(rounds >= 1, ErrorCode::kInvalidConfig, "rounds must be >= 1");
  Require(local_iterations >= 1, ErrorCode::kInvalidConfig,
          "local_iterations must be >= 1");
  Require(epsilon_conv >= 0.0, ErrorCode::kInvalidConfig,
          "epsilon_conv must be >= 0");
  Require(gamma >= 0.0 && gamma <= 1.0 && rho >= 0.0 && rho <= 1.0,
          ErrorCode::kInvalidConfig, "gamma and rho must lie in [0, 1]");
  Require(!(privacy.secure_aggregation && aggregation == Aggregation::kMedian),
          ErrorCode::kInvalidConfig,
          "secure aggregation computes sums and cannot be combined with median");
}

std::vector<int> AlignClusters(std::span<const Matrix> local,
                               std::span<const Matrix> reference) {
  Require(local.size() == reference.size() && !local.empty(), ErrorCode::kShape,
          "alignment needs the same views on both sides");
  const std::size_t c = reference.front().rows();
  for (std::size_t h = 0; h < local.size(); ++h) {
    Require(local[h].rows() == c && reference[h].rows() == c, ErrorCode::kProtocol,
            "alignment unsupported: cluster counts differ");
    Require(local[h].cols() == reference[h].cols(), ErrorCode::kShape,
            "alignment view dimensions differ");
  }
  // cost(k, q): reference cluster k matched to local cluster q.
  Matrix cost(c, c);
  for (std::size_t k = 0; k < c; ++k) {
    for (std::size_t q = 0; q < c; ++q) {
      double s = 0.0;
      for (std::size_t h = 0; h < local.size(); ++h) {
        for (std::size_t j = 0; j < local[h].cols(); ++j) {
          double d = reference[h](k, j) - local[h](q, j);
          s += d * d;
        }
      }
      cost(k, q) = s;
    }
  }
  return SolveAssignment(cost);
}

std::vector<Matrix> PermuteCenters(std::span<const Matrix> centers,
                                   std::span<const int> perm) {
  std::vector<Matrix> out;
  out.reserve(centers.size());
  for (const Matrix& a : centers) {
    Require(a.rows() == perm.size(), ErrorCode::kShape, "permutation size mismatch");
    Matrix b(a.rows(), a.cols());
    for (std::size_t k = 0; k < perm.size(); ++k) {
      for (std::size_t j = 0; j < a.cols(); ++j) b(k, j) = a(perm[k], j);
    }
    out.push_back(std::move(b));
  }
  return out;
}

Matrix PermuteMembershipColumns(const Matrix& memberships,
                                std::span<const int> perm) {
  Require(memberships.cols() == perm.size(), ErrorCode::kShape,
          "permutation size mismatch");
  Matrix out(memberships.rows(), memberships.cols());
  for (std::size_t i = 0; i < memberships.rows(); ++i) {
    for (std::size_t k = 0; k < perm.size(); ++k) out(i, k) = memberships(i, perm[k]);
  }
  return out;
}

std::pair<GlobalModel, std::vector<ClientState>> InitFederation(
    const std::vector<MultiViewDataset>& datasets, const FedConfig& config) {
  config.Validate();
  Require(!datasets.empty(), ErrorCode::kInvalidInput, "federation needs >= 1 client");
  const std::vector<std::size_t> dims = datasets.front().dims();
  std::vector<ClientState> clients;
  clients.reserve(datasets.size());
  for (std::size_t l = 0; l < datasets.size(); ++l) {
    datasets[l].Validate();
    Require(datasets[l].dims() == dims, ErrorCode::kShape,
            "client " + std::to_string(l) + " has inconsistent view dimensions");
    ClientState st;
    st.client_id = static_cast<int>(l);
    st.data = datasets[l];
    st.clusters = config.cluster.clusters;
    st.gamma = config.gamma;
    st.rho = config.rho;
    Require(static_cast<std::size_t>(st.clusters) <= st.data.samples(),
            ErrorCode::kInvalidConfig,
            "client " + std::to_string(l) + " has fewer samples than clusters");
    if (config.cluster.distance == DistanceKind::kHeatKernel) {
      st.coeffs = ComputeAllHkc(st.data, config.cluster.hkc, config.cluster.hkc_eps);
    }
    ClusterConfig local = config.cluster;
    local.seed = config.cluster.seed + l;
    st.model.centers = InitCenters(st.data, local);
    st.model.weights.assign(dims.size(), 1.0 / static_cast<double>(dims.size()));
    clients.push_back(std::move(st));
  }

  GlobalModel global;
  global.weights.assign(dims.size(), 1.0 / static_cast<double>(dims.size()));
  double total = 0.0;
  for (const ClientState& c : clients) total += static_cast<double>(c.data.samples());
  for (std::size_t h = 0; h < dims.size(); ++h) {
    global.centers.emplace_back(static_cast<std::size_t>(config.cluster.clusters), dims[h]);
  }
  std::vector<ClientStats> stats;
  for (ClientState& c : clients) {
    std::vector<int> perm = AlignClusters(c.model.centers, clients.front().model.centers);
    if (!IsIdentity(perm)) ApplyPermutation(c.model, perm);
    const double w = static_cast<double>(c.data.samples()) / total;
    for (std::size_t h = 0; h < dims.size(); ++h) {
      std::vector<double>& g = global.centers[h].values();
      const std::vector<double>& a = c.model.centers[h].values();
      for (std::size_t e = 0; e < g.size(); ++e) g[e] += w * a[e];
    }
    ClientStats s;
    FeatureStats(c.data, s.feature_mean, s.feature_variance);
    stats.push_back(std::move(s));
  }
  AggregateFeatureStats(stats, global);
  return {std::move(global), std::move(clients)};
}

ClientStats ClientRound(ClientState& state, const GlobalModel& global,
                        int local_iterations, const FedConfig& config) {
  Require(local_iterations >= 0, ErrorCode::kInvalidInput,
          "local iterations must be >= 0");
  ModelState& model = state.model;
  std::vector<int> perm = AlignClusters(model.centers, global.centers);
  if (!IsIdentity(perm)) ApplyPermutation(model, perm);

  const double g = state.gamma, r = state.rho;
  for (std::size_t h = 0; h < model.centers.size(); ++h) {
    std::vector<double>& a = model.centers[h].values();
    const std::vector<double>& ag = global.centers[h].values();
    for (std::size_t e = 0; e < a.size(); ++e) a[e] = g * ag[e] + (1.0 - g) * a[e];
  }
  Require(global.weights.size() == model.weights.size(), ErrorCode::kShape,
          "global view weights do not match the client's views");
  for (std::size_t h = 0; h < model.weights.size(); ++h) {
    model.weights[h] = r * global.weights[h] + (1.0 - r) * model.weights[h];
  }
  RenormalizeIfNeeded(model.weights);

  ClientStats stats;
  stats.client_id = state.client_id;
  for (int e = 0; e < local_iterations; ++e) {
    AlternatingStep(state.data, state.coeffs, model, config.cluster, &state.diagnostics);
    state.objective_history.push_back(model.objective);
    if (config.cluster.record_trace) state.trace.push_back(model);
    if (e == 0) stats.objective_first = model.objective;
    stats.objective_last = model.objective;
  }

  // Keep the upload labelled like the broadcast model.
  perm = AlignClusters(model.centers, global.centers);
  if (!IsIdentity(perm)) ApplyPermutation(model, perm);

  Matrix u = model.memberships;
  if (u.empty()) {
    std::vector<Matrix> dist = DistanceTensor(state.data, model.centers, state.coeffs,
                                              config.cluster.distance);
    u = UpdateMemberships(dist, model.weights, config.cluster.fuzzifier,
                          config.cluster.view_exponent);
    stats.objective_first = stats.objective_last = Objective(
        dist, u, model.weights, config.cluster.fuzzifier, config.cluster.view_exponent);
  }
  const std::size_t n = u.rows(), c = u.cols();
  stats.quality.assign(c, 0.0);
  double max_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      stats.quality[k] += u(i, k);
      best = std::max(best, u(i, k));
    }
    max_sum += best;
  }
  for (double& q : stats.quality) q /= static_cast<double>(n);
  stats.quality_score = max_sum / static_cast<double>(n);
  stats.centers = model.centers;
  stats.views = model.weights;
  FeatureStats(state.data, stats.feature_mean, stats.feature_variance);
  stats.sample_count = n;
  return stats;
}

std::vector<double> ComputeClientWeights(std::span<const ClientStats> stats,
                                         ClientWeighting mode) {
  Require(!stats.empty(), ErrorCode::kProtocol, "no client statistics");
  std::vector<double> w(stats.size());
  double total = 0.0;
  for (std::size_t l = 0; l < stats.size(); ++l) {
    w[l] = mode == ClientWeighting::kBySamples
               ? static_cast<double>(stats[l].sample_count)
               : stats[l].quality_score;
    total += w[l];
  }
  Require(total > 0.0, ErrorCode::kNumerical, "client weights sum to zero");
  for (double& x : w) x /= total;
  return w;
}

GlobalModel AggregateWeighted(std::span<const ClientStats> stats,
                              std::span<const double> client_weights) {
  CheckAligned(stats);
  Require(client_weights.size() == stats.size(), ErrorCode::kProtocol,
          "one weight per client required");
  double sum = 0.0;
  for (double w : client_weights) {
    Require(w >= 0.0, ErrorCode::kProtocol, "client weights must be >= 0");
    sum += w;
  }
  Require(std::abs(sum - 1.0) < 1e-9, ErrorCode::kProtocol,
          "client weights must sum to 1");
  GlobalModel out;
  for (const Matrix& a : stats.front().centers) out.centers.emplace_back(a.rows(), a.cols());
  out.weights.assign(stats.front().views.size(), 0.0);
  for (std::size_t l = 0; l < stats.size(); ++l) {
    const double w = client_weights[l];
    for (std::size_t h = 0; h < out.centers.size(); ++h) {
      std::vector<double>& g = out.centers[h].values();
      const std::vector<double>& a = stats[l].centers[h].values();
      for (std::size_t e = 0; e < g.size(); ++e) g[e] += w * a[e];
    }
    for (std::size_t h = 0; h < out.weights.size(); ++h) {
      out.weights[h] += w * stats[l].views[h];
    }
  }
  RenormalizeIfNeeded(out.weights);
  return out;
}

GlobalModel AggregateMedian(std::span<const ClientStats> stats) {
  CheckAligned(stats);
  const std::size_t mid = (stats.size() - 1) / 2;
  std::vector<double> buf(stats.size());
  auto median = [&](auto get) {
    for (std::size_t l = 0; l < stats.size(); ++l) buf[l] = get(stats[l]);
    std::nth_element(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(mid), buf.end());
    return buf[mid];
  };
  GlobalModel out;
  for (std::size_t h = 0; h < stats.front().centers.size(); ++h) {
    Matrix m(stats.front().centers[h].rows(), stats.front().centers[h].cols());
    for (std::size_t e = 0; e < m.size(); ++e) {
      m.values()[e] = median([&](const ClientStats& s) { return s.centers[h].values()[e]; });
    }
    out.centers.push_back(std::move(m));
  }
  out.weights.resize(stats.front().views.size());
  for (std::size_t h = 0; h < out.weights.size(); ++h) {
    out.weights[h] = median([&](const ClientStats& s) { return s.views[h]; });
  }
  RenormalizeIfNeeded(out.weights);
  return out;
}

GlobalModel AggregateFedAvg(std::span<const ClientStats> stats) {
  Require(!stats.empty(), ErrorCode::kProtocol, "aggregation needs at least one client");
  std::vector<double> w(stats.size(), 1.0 / static_cast<double>(stats.size()));
  return AggregateWeighted(stats, w);
}

GlobalModel AggregateWeightedSecure(std::span<const ClientStats> stats,
                                    std::span<const double> client_weights,
                                    std::uint64_t session_seed,
                                    std::uint64_t scale) {
  CheckAligned(stats);
  Require(client_weights.size() == stats.size(), ErrorCode::kProtocol,
          "one weight per client required");
  std::vector<std::vector<double>> contributions;
  std::vector<int> ids;
  for (std::size_t l = 0; l < stats.size(); ++l) {
    std::vector<double> v;
    for (const Matrix& a : stats[l].centers) {
      for (double x : a.values()) v.push_back(client_weights[l] * x);
    }
    for (double x : stats[l].views) v.push_back(client_weights[l] * x);
    contributions.push_back(std::move(v));
    ids.push_back(stats[l].client_id);
  }
  std::vector<double> sum = SecureSum(contributions, ids, session_seed, scale);
  GlobalModel out;
  std::size_t pos = 0;
  for (const Matrix& a : stats.front().centers) {
    Matrix g(a.rows(), a.cols());
    for (double& x : g.values()) x = sum[pos++];
    out.centers.push_back(std::move(g));
  }
  for (std::size_t h = 0; h < stats.front().views.size(); ++h) {
    out.weights.push_back(std::max(0.0, sum[pos++]));
  }
  RenormalizeIfNeeded(out.weights);
  return out;
}

void AggregateFeatureStats(std::span<const ClientStats> stats, GlobalModel& global) {
  Require(!stats.empty(), ErrorCode::kProtocol, "no client statistics");
  global.feature_mean = stats.front().feature_mean;
  global.feature_variance = stats.front().feature_variance;
  const double m = static_cast<double>(stats.size());
  for (std::size_t h = 0; h < global.feature_mean.size(); ++h) {
    for (std::size_t j = 0; j < global.feature_mean[h].size(); ++j) {
      double mu = 0.0, var = 0.0;
      for (const ClientStats& s : stats) {
        mu += s.feature_mean.at(h).at(j);
        var += s.feature_variance.at(h).at(j);
      }
      global.feature_mean[h][j] = mu / m;
      global.feature_variance[h][j] = var / m;
    }
  }
}

bool CheckConvergence(const GlobalModel& prev, const GlobalModel& next, double eps) {
  Require(prev.centers.size() == next.centers.size() &&
              prev.weights.size() == next.weights.size(),
          ErrorCode::kShape, "models differ in shape");
  double a2 = 0.0;
  for (std::size_t h = 0; h < prev.centers.size(); ++h) {
    double f = FrobeniusDistance(prev.centers[h], next.centers[h]);
    a2 += f * f;
  }
  double v2 = 0.0;
  for (std::size_t h = 0; h < prev.weights.size(); ++h) {
    double d = prev.weights[h] - next.weights[h];
    v2 += d * d;
  }
  return std::sqrt(a2) < eps && std::sqrt(v2) < eps;
}

std::size_t PayloadBytes(const PayloadLayout& layout) {
  std::size_t center_values = 0;
  for (std::size_t d : layout.dims) center_values += layout.clusters * d;
  const std::size_t s = layout.dims.size();
  std::size_t doubles = center_values + s;
  if (layout.include_stats) doubles += layout.clusters + center_values + s;
  return 8 * doubles + kRoundHeaderBytes;
}

void PrivatizeStats(ClientStats& stats, const PrivacyConfig& privacy,
                    double eps_t, std::mt19937_64& rng) {
  if (!privacy.enabled) return;
  double sensitivity = privacy.sensitivity;
  if (privacy.sensitivity_scaling == SensitivityScaling::kInverseSampleCount) {
    sensitivity /= static_cast<double>(stats.sample_count);
  }
  stats.centers = DpNoiseCenters(stats.centers, eps_t, privacy.delta, sensitivity, rng);
  stats.views = DpNoiseViewWeights(stats.views, eps_t, privacy.delta,
                                   static_cast<double>(stats.sample_count), rng);
}

FederationResult RunFederation(const std::vector<MultiViewDataset>& datasets,
                               const FedConfig& config) {
  auto [global, clients] = InitFederation(datasets, config);
  FederationResult result;
  const PrivacyConfig& privacy = config.privacy;
  std::vector<double> schedule;
  if (privacy.enabled) {
    schedule = BudgetSchedule(privacy.epsilon_total, config.rounds, privacy.schedule);
  }
  std::vector<std::mt19937_64> noise_rngs;
  for (const ClientState& c : clients) {
    noise_rngs.emplace_back(DeriveSeed(config.cluster.seed, 0xd1ff, c.client_id));
  }
  PayloadLayout layout{static_cast<std::size_t>(config.cluster.clusters),
                       clients.front().data.dims(), true};

  for (int t = 0; t < config.rounds; ++t) {
    RoundLog log;
    log.round = t + 1;
    log.epsilon_t = privacy.enabled ? schedule[t] : 0.0;
    std::vector<ClientStats> stats;
    stats.reserve(clients.size());
    for (std::size_t l = 0; l < clients.size(); ++l) {
      ClientStats s = ClientRound(clients[l], global, config.local_iterations, config);
      PrivatizeStats(s, privacy, log.epsilon_t, noise_rngs[l]);
      log.client_objectives.push_back(s.objective_last);
      log.gamma.push_back(clients[l].gamma);
      log.payload_bytes += PayloadBytes(layout);
      stats.push_back(std::move(s));
    }
    std::sort(stats.begin(), stats.end(), [](const ClientStats& a, const ClientStats& b) {
      return a.client_id < b.client_id;
    });

    std::vector<double> w = ComputeClientWeights(stats, config.weighting);
    GlobalModel next;
    switch (config.aggregation) {
      case Aggregation::kWeighted:
      case Aggregation::kFedAvg: {
        if (config.aggregation == Aggregation::kFedAvg) {
          w.assign(stats.size(), 1.0 / static_cast<double>(stats.size()));
        }
        if (privacy.secure_aggregation) {
          next = AggregateWeightedSecure(stats, w,
                                         DeriveSeed(config.cluster.seed, 0x5ec, t),
                                         privacy.fixed_point_scale);
        } else {
          next = AggregateWeighted(stats, w);
        }
        break;
      }
      case Aggregation::kMedian:
        next = AggregateMedian(stats);
        break;
    }
    for (const Matrix& a : next.centers) {
      Require(AllFinite(a), ErrorCode::kNumerical, "aggregated centers are not finite");
    }
    AggregateFeatureStats(stats, next);
    next.round = t + 1;
    log.client_weights = w;

    if (config.personalization == Personalization::kAdaptive) {
      for (std::size_t l = 0; l < clients.size(); ++l) {
        const ClientStats& s = stats[l];
        ClientState& c = clients[l];
        const bool improved = s.objective_last < s.objective_first;
        const double step = improved ? -0.05 : 0.05;
        c.gamma = std::clamp(c.gamma + step, 0.1, 0.9);
        c.rho = std::clamp(c.rho + step, 0.1, 0.9);
      }
    }

    double a2 = 0.0;
    for (std::size_t h = 0; h < next.centers.size(); ++h) {
      double f = FrobeniusDistance(global.centers[h], next.centers[h]);
      a2 += f * f;
    }
    log.center_shift = std::sqrt(a2);
    double v2 = 0.0;
    for (std::size_t h = 0; h < next.weights.size(); ++h) {
      double d = global.weights[h] - next.weights[h];
      v2 += d * d;
    }
    log.weight_shift = std::sqrt(v2);
    log.converged = CheckConvergence(global, next, config.epsilon_conv);
    global = std::move(next);
    logging::Debug("round " + std::to_string(t + 1) + " shift=" +
                   FormatDouble(log.center_shift));
    result.rounds.push_back(std::move(log));
    if (result.rounds.back().converged) {
      result.convergence_round = t + 1;
      break;
    }
  }
  for (const ClientState& c : clients) {
    for (const std::string& d : c.diagnostics) {
      result.diagnostics.push_back("client " + std::to_string(c.client_id) + ": " + d);
    }
  }
  result.global = std::move(global);
  result.clients = std::move(clients);
  return result;
}

}  // namespace fedheat
