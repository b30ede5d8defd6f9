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

#ifndef FEDHEAT_FEDERATION_HPP_
#define FEDHEAT_FEDERATION_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "fedheat/dataset.hpp"
#include "fedheat/hkmvfc.hpp"
#include "fedheat/kernel.hpp"
#include "fedheat/matrix.hpp"
#include "fedheat/privacy.hpp"

namespace fedheat {

enum class Aggregation { kWeighted, kMedian, kFedAvg };
enum class ClientWeighting { kBySamples, kByQuality };
enum class Personalization { kAdaptive, kStatic };

struct FedConfig {
  int rounds = 10;            // T
  int local_iterations = 50;  // E
  Aggregation aggregation = Aggregation::kWeighted;
  ClientWeighting weighting = ClientWeighting::kBySamples;
  double epsilon_conv = 1e-6;  // 0 disables early stopping
  double gamma = 0.5;
  double rho = 0.5;
  Personalization personalization = Personalization::kAdaptive;
  ClusterConfig cluster;  // m, alpha, HKC estimator, seed, c
  PrivacyConfig privacy;

  void Validate() const;
};

struct ClientState {
  int client_id = 0;
  MultiViewDataset data;
  ModelState model;
  std::vector<HeatKernelCoeffs> coeffs;
  double gamma = 0.5;
  double rho = 0.5;
  int clusters = 0;
  std::vector<double> objective_history;  // every local iteration, all rounds
  std::vector<ModelState> trace;          // when cluster.record_trace is set
  std::vector<std::string> diagnostics;
};

// What a client uploads after a round.
struct ClientStats {
  int client_id = 0;
  std::vector<double> quality;  // per-cluster mean membership
  double quality_score = 0.0;   // mean over samples of the max membership
  std::vector<Matrix> centers;
  std::vector<double> views;
  std::vector<std::vector<double>> feature_mean;      // per view, per feature
  std::vector<std::vector<double>> feature_variance;  // population variance
  std::size_t sample_count = 0;
  double objective_first = 0.0;  // J after the first local iteration
  double objective_last = 0.0;   // J after the last local iteration
};

struct GlobalModel {
  std::vector<Matrix> centers;
  std::vector<double> weights;
  int round = 0;
  std::vector<std::vector<double>> feature_mean;
  std::vector<std::vector<double>> feature_variance;
};

// ---- data certification ----

struct CertificationThresholds {
  double eta_min = 0.95;
  double xi_min = 0.90;
  double imputation_limit = 0.05;  // impute only below this missing fraction
  double outlier_quantile = 0.999;
};

struct CertificationReport {
  std::vector<MultiViewDataset> datasets;  // imputed copies
  std::vector<std::vector<double>> eta;    // per client, per view
  double eta_global = 0.0;
  double xi_global = 1.0;
  std::vector<std::vector<std::size_t>> outliers;  // per client row indices
  std::vector<std::size_t> imputed_entries;        // per client
  bool certified = false;
  std::vector<std::string> issues;
};

// Computes every quality measure without throwing on a failed threshold.
// Missing entries are NaN. Shape problems still throw.
CertificationReport AssessFederation(const std::vector<MultiViewDataset>& raw,
                                     int clusters,
                                     const CertificationThresholds& thresholds = {});

// AssessFederation, then throws kValidation (listing the problems) unless the
// federation is certified.
CertificationReport PrepareAndValidate(const std::vector<MultiViewDataset>& raw,
                                       int clusters,
                                       const CertificationThresholds& thresholds = {});

// Mean over features of the cross-client correlation of per-feature quantile
// profiles, averaged over client pairs, minimum over views. 1 for one client.
double ConsistencyScore(const std::vector<MultiViewDataset>& datasets);

// ---- protocol pieces ----

// Client l draws its local initialization from seed + l. The starting global
// centers are the aligned, sample-weighted mean of those local seeds.
std::pair<GlobalModel, std::vector<ClientState>> InitFederation(
    const std::vector<MultiViewDataset>& datasets, const FedConfig& config);

// Permutation p such that local cluster p[k] is matched to reference cluster
// k, minimizing total squared distance over concatenated views.
std::vector<int> AlignClusters(std::span<const Matrix> local,
                               std::span<const Matrix> reference);

// Reorders clusters: result cluster k is input cluster perm[k].
std::vector<Matrix> PermuteCenters(std::span<const Matrix> centers,
                                   std::span<const int> perm);
Matrix PermuteMembershipColumns(const Matrix& memberships,
                                std::span<const int> perm);

// Aligns to the broadcast model, blends with gamma/rho, runs E local
// iterations and summarizes the result.
ClientStats ClientRound(ClientState& state, const GlobalModel& global,
                        int local_iterations, const FedConfig& config);

std::vector<double> ComputeClientWeights(std::span<const ClientStats> stats,
                                         ClientWeighting mode);

GlobalModel AggregateWeighted(std::span<const ClientStats> stats,
                              std::span<const double> client_weights);
// Elementwise median; lower median for an even client count.
GlobalModel AggregateMedian(std::span<const ClientStats> stats);
GlobalModel AggregateFedAvg(std::span<const ClientStats> stats);

// Weighted aggregation computed through the masked secure sum.
GlobalModel AggregateWeightedSecure(std::span<const ClientStats> stats,
                                    std::span<const double> client_weights,
                                    std::uint64_t session_seed,
                                    std::uint64_t scale);

// Unweighted mean of the client feature means and variances.
void AggregateFeatureStats(std::span<const ClientStats> stats, GlobalModel& global);

// ||A_next - A_prev||_F < eps and ||V_next - V_prev||_2 < eps.
bool CheckConvergence(const GlobalModel& prev, const GlobalModel& next, double eps);

struct PayloadLayout {
  std::size_t clusters = 0;
  std::vector<std::size_t> dims;
  bool include_stats = true;
};

inline constexpr std::size_t kRoundHeaderBytes = 32;

// 8 bytes per shared double plus a fixed round header:
//   centers 8*sum_h c*d_h, weights 8*s, stats 8*(c + sum_h c*d_h + s).
std::size_t PayloadBytes(const PayloadLayout& layout);

// Shares of the client's centers and weights with Gaussian noise added;
// unchanged when privacy is disabled.
void PrivatizeStats(ClientStats& stats, const PrivacyConfig& privacy,
                    double eps_t, std::mt19937_64& rng);

struct RoundLog {
  int round = 0;
  std::vector<double> client_objectives;  // J at the end of the round
  std::vector<double> client_weights;
  std::vector<double> gamma;
  std::size_t payload_bytes = 0;
  double epsilon_t = 0.0;  // 0 when privacy is off
  double center_shift = 0.0;
  double weight_shift = 0.0;
  bool converged = false;
};

struct FederationResult {
  GlobalModel global;
  std::vector<ClientState> clients;
  std::vector<RoundLog> rounds;
  int convergence_round = -1;  // -1 when all T rounds ran
  std::vector<std::string> diagnostics;
};

FederationResult RunFederation(const std::vector<MultiViewDataset>& datasets,
                               const FedConfig& config);

}  // namespace fedheat

#endif  // FEDHEAT_FEDERATION_HPP_
