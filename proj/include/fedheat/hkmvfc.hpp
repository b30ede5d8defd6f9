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

#ifndef FEDHEAT_HKMVFC_HPP_
#define FEDHEAT_HKMVFC_HPP_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "fedheat/dataset.hpp"
#include "fedheat/kernel.hpp"
#include "fedheat/matrix.hpp"

namespace fedheat {

enum class InitMethod { kKMeansPlusPlus, kRandom };

// kSquaredEuclidean turns the solver into a view-weighted multi-view FCM; it
// exists as the ablation baseline.
enum class DistanceKind { kHeatKernel, kSquaredEuclidean };

struct ClusterConfig {
  int clusters = 4;
  double fuzzifier = 2.0;      // m > 1
  double view_exponent = 5.0;  // alpha > 1
  double epsilon = 1e-6;       // stop when |J_t - J_{t-1}| < epsilon
  int max_iterations = 100;
  std::uint64_t seed = 42;
  InitMethod init = InitMethod::kKMeansPlusPlus;
  HkcEstimator hkc = HkcEstimator::kMinMax;
  double hkc_eps = 1e-12;
  bool recompute_hkc_per_iter = false;
  DistanceKind distance = DistanceKind::kHeatKernel;
  bool record_trace = false;
  // Independent starts; the run with the lowest final J is kept. Start 0
  // uses seed itself.
  int restarts = 1;

  // Throws kInvalidConfig.
  void Validate() const;
};

// Everything the alternating scheme iterates on.
struct ModelState {
  Matrix memberships;          // n x c
  std::vector<Matrix> centers;  // per view, c x d_h
  std::vector<double> weights;  // per view
  double objective = std::numeric_limits<double>::infinity();

  bool operator==(const ModelState&) const = default;
};

struct ClusterModel {
  Matrix memberships;
  std::vector<Matrix> centers;
  std::vector<double> weights;
  std::vector<double> objective_history;
  int iterations = 0;
  bool converged = false;
  std::vector<std::string> diagnostics;
  std::vector<ModelState> trace;  // filled when record_trace is set
  int selected_restart = 0;
  std::vector<double> restart_objectives;  // final J of every start

  std::vector<int> HardLabels() const;
};

// Row-wise argmax; the lowest index wins ties.
std::vector<int> HardLabels(const Matrix& memberships);

std::vector<HeatKernelCoeffs> ComputeAllHkc(const MultiViewDataset& data,
                                            HkcEstimator estimator,
                                            double eps = 1e-12);

// Per view, the n x c matrix of distances between samples and centers. With
// kHeatKernel entry (i,k) is Ked2(x_i, a_k, delta_i); coeffs may be empty for
// kSquaredEuclidean.
std::vector<Matrix> DistanceTensor(const MultiViewDataset& data,
                                   std::span<const Matrix> centers,
                                   std::span<const HeatKernelCoeffs> coeffs,
                                   DistanceKind kind = DistanceKind::kHeatKernel);

// Closed-form minimizer of J over memberships with centers and weights fixed.
Matrix UpdateMemberships(std::span<const Matrix> distances,
                         std::span<const double> weights, double m, double alpha);

// One fixed-point step of the center equation, evaluated at current_centers.
// A cluster whose weights sum to zero keeps its previous center and a note is
// appended to diagnostics.
std::vector<Matrix> UpdateCenters(const MultiViewDataset& data,
                                  const Matrix& memberships,
                                  std::span<const double> weights,
                                  std::span<const HeatKernelCoeffs> coeffs,
                                  std::span<const Matrix> current_centers,
                                  double m, double alpha,
                                  DistanceKind kind = DistanceKind::kHeatKernel,
                                  std::vector<std::string>* diagnostics = nullptr);

// Closed-form minimizer of J over view weights with memberships and centers
// fixed.
std::vector<double> UpdateViewWeights(std::span<const Matrix> distances,
                                      const Matrix& memberships, double m,
                                      double alpha);

// Per-view cost C_h = sum_i sum_k mu_ik^m d_ik^h.
std::vector<double> ViewCosts(std::span<const Matrix> distances,
                              const Matrix& memberships, double m);

double Objective(std::span<const Matrix> distances, const Matrix& memberships,
                 std::span<const double> weights, double m, double alpha);

double Objective(const MultiViewDataset& data, const ModelState& state,
                 std::span<const HeatKernelCoeffs> coeffs, double m,
                 double alpha, DistanceKind kind = DistanceKind::kHeatKernel);

// Shared sample indices chosen by greedy k-means++ (or uniformly for
// kRandom) on the concatenated views; returns one c x d_h matrix per view.
std::vector<Matrix> InitCenters(const MultiViewDataset& data,
                                const ClusterConfig& config);

// One iteration: memberships, then centers, then view weights, then J.
// Both the centralized and the federated solvers go through this function.
void AlternatingStep(const MultiViewDataset& data,
                     std::vector<HeatKernelCoeffs>& coeffs, ModelState& state,
                     const ClusterConfig& config,
                     std::vector<std::string>* diagnostics = nullptr);

// Seed used by start r of a multi-start fit.
std::uint64_t RestartSeed(std::uint64_t seed, int restart);

ClusterModel Fit(const MultiViewDataset& data, const ClusterConfig& config);

}  // namespace fedheat

#endif  // FEDHEAT_HKMVFC_HPP_
