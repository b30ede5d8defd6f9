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

#include "fedheat/hkmvfc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fedheat/error.hpp"
#include "fedheat/logging.hpp"

namespace fedheat {
namespace {

std::vector<double> PowWeights(std::span<const double> weights, double alpha) {
  std::vector<double> out(weights.size());
  for (std::size_t h = 0; h < weights.size(); ++h) {
    out[h] = std::pow(weights[h], alpha);
  }
  return out;
}

double SquaredDistance(std::span<const double> x, std::span<const double> a) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = x[j] - a[j];
    s += d * d;
  }
  return s;
}

void CheckDistances(std::span<const Matrix> distances, std::size_t weights) {
  Require(!distances.empty(), ErrorCode::kShape, "no views in distance tensor");
  Require(distances.size() == weights, ErrorCode::kShape,
          "view weight count does not match distance tensor");
  for (const Matrix& d : distances) {
    Require(d.rows() == distances[0].rows() && d.cols() == distances[0].cols(),
            ErrorCode::kShape, "distance matrices disagree in shape");
  }
}

}  // namespace

void ClusterConfig::Validate() const {
  Require(clusters >= 1, ErrorCode::kInvalidConfig, "clusters must be >= 1");
  Require(fuzzifier > 1.0 && std::isfinite(fuzzifier), ErrorCode::kInvalidConfig,
          "fuzzifier m must be > 1");
  Require(view_exponent > 1.0 && std::isfinite(view_exponent),
          ErrorCode::kInvalidConfig, "view exponent alpha must be > 1");
  Require(epsilon > 0.0, ErrorCode::kInvalidConfig, "epsilon must be > 0");
  Require(max_iterations >= 1, ErrorCode::kInvalidConfig,
          "max_iterations must be >= 1");
  Require(hkc_eps > 0.0, ErrorCode::kInvalidConfig, "hkc_eps must be > 0");
  Require(restarts >= 1, ErrorCode::kInvalidConfig, "restarts must be >= 1");
}

std::vector<int> HardLabels(const Matrix& memberships) {
  std::vector<int> labels(memberships.rows(), 0);
  for (std::size_t i = 0; i < memberships.rows(); ++i) {
    auto row = memberships.row(i);
    labels[i] = static_cast<int>(std::max_element(row.begin(), row.end()) -
                                 row.begin());
  }
  return labels;
}

std::vector<int> ClusterModel::HardLabels() const {
  return fedheat::HardLabels(memberships);
}

std::vector<HeatKernelCoeffs> ComputeAllHkc(const MultiViewDataset& data,
                                            HkcEstimator estimator, double eps) {
  std::vector<HeatKernelCoeffs> out;
  out.reserve(data.view_count());
  for (const Matrix& v : data.views) out.push_back(ComputeHkc(v, estimator, eps));
  return out;
}

std::vector<Matrix> DistanceTensor(const MultiViewDataset& data,
                                   std::span<const Matrix> centers,
                                   std::span<const HeatKernelCoeffs> coeffs,
                                   DistanceKind kind) {
  Require(centers.size() == data.view_count(), ErrorCode::kShape,
          "center views do not match dataset views");
  if (kind == DistanceKind::kHeatKernel) {
    Require(coeffs.size() == data.view_count(), ErrorCode::kShape,
            "coefficient views do not match dataset views");
  }
  std::vector<Matrix> out;
  out.reserve(data.view_count());
  for (std::size_t h = 0; h < data.view_count(); ++h) {
    const Matrix& x = data.views[h];
    const Matrix& a = centers[h];
    Require(a.cols() == x.cols(), ErrorCode::kShape,
            "center dimension differs from view dimension");
    Matrix d(x.rows(), a.rows());
    if (kind == DistanceKind::kHeatKernel) {
      const Matrix& delta = coeffs[h].delta;
      Require(delta.rows() == x.rows() && delta.cols() == x.cols(),
              ErrorCode::kShape, "coefficients differ in shape from view");
      for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t k = 0; k < a.rows(); ++k) {
          d(i, k) = Ked2(x.row(i), a.row(k), delta.row(i));
        }
      }
    } else {
      for (std::size_t i = 0; i < x.rows(); ++i) {
        for (std::size_t k = 0; k < a.rows(); ++k) {
          d(i, k) = SquaredDistance(x.row(i), a.row(k));
        }
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

Matrix UpdateMemberships(std::span<const Matrix> distances,
                         std::span<const double> weights, double m,
                         double alpha) {
  CheckDistances(distances, weights.size());
  const std::size_t n = distances[0].rows();
  const std::size_t c = distances[0].cols();
  const std::vector<double> vpow = PowWeights(weights, alpha);
  const double expo = 1.0 / (m - 1.0);
  Matrix u(n, c);
  std::vector<double> agg(c);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t zeros = 0;
    for (std::size_t k = 0; k < c; ++k) {
      double s = 0.0;
      for (std::size_t h = 0; h < distances.size(); ++h) {
        s += vpow[h] * distances[h](i, k);
      }
      agg[k] = s;
      if (s == 0.0) ++zeros;
    }
    if (zeros > 0) {
      // The sample sits on a center in every weighted view.
      for (std::size_t k = 0; k < c; ++k) {
        u(i, k) = agg[k] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
      }
      continue;
    }
    for (std::size_t k = 0; k < c; ++k) {
      double denom = 0.0;
      for (std::size_t q = 0; q < c; ++q) {
        denom += std::pow(agg[k] / agg[q], expo);
      }
      u(i, k) = 1.0 / denom;
    }
  }
  return u;
}

std::vector<Matrix> UpdateCenters(const MultiViewDataset& data,
                                  const Matrix& memberships,
                                  std::span<const double> weights,
                                  std::span<const HeatKernelCoeffs> coeffs,
                                  std::span<const Matrix> current_centers,
                                  double m, double alpha, DistanceKind kind,
                                  std::vector<std::string>* diagnostics) {
  const std::size_t n = data.samples();
  const std::size_t c = memberships.cols();
  Require(memberships.rows() == n, ErrorCode::kShape,
          "membership rows differ from sample count");
  Require(current_centers.size() == data.view_count() &&
              weights.size() == data.view_count(),
          ErrorCode::kShape, "centers or weights do not cover every view");
  if (kind == DistanceKind::kHeatKernel) {
    Require(coeffs.size() == data.view_count(), ErrorCode::kShape,
            "coefficient views do not match dataset views");
  }
  const std::vector<double> vpow = PowWeights(weights, alpha);
  Matrix um(n, c);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < c; ++k) um(i, k) = std::pow(memberships(i, k), m);
  }
  std::vector<Matrix> out;
  out.reserve(data.view_count());
  for (std::size_t h = 0; h < data.view_count(); ++h) {
    const Matrix& x = data.views[h];
    const Matrix& prev = current_centers[h];
    Require(prev.rows() == c && prev.cols() == x.cols(), ErrorCode::kShape,
            "current centers have the wrong shape");
    const std::size_t d = x.cols();
    Matrix next(c, d);
    std::vector<double> num(d);
    for (std::size_t k = 0; k < c; ++k) {
      std::fill(num.begin(), num.end(), 0.0);
      double den = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        double w = um(i, k) * vpow[h];
        if (kind == DistanceKind::kHeatKernel) {
          w *= std::exp(-KernelExponent(x.row(i), prev.row(k), coeffs[h].delta.row(i)));
        }
        den += w;
        for (std::size_t j = 0; j < d; ++j) num[j] += w * x(i, j);
      }
      if (den > 0.0 && std::isfinite(den)) {
        for (std::size_t j = 0; j < d; ++j) next(k, j) = num[j] / den;
      } else {
        for (std::size_t j = 0; j < d; ++j) next(k, j) = prev(k, j);
        std::string note = "degenerate cluster " + std::to_string(k) +
                           " in view " + std::to_string(h + 1) +
                           ": zero total weight, center kept";
        logging::Warn(note);
        if (diagnostics) diagnostics->push_back(std::move(note));
      }
    }
    out.push_back(std::move(next));
  }
  return out;
}

std::vector<double> ViewCosts(std::span<const Matrix> distances,
                              const Matrix& memberships, double m) {
  std::vector<double> cost(distances.size(), 0.0);
  for (std::size_t h = 0; h < distances.size(); ++h) {
    const Matrix& d = distances[h];
    Require(d.rows() == memberships.rows() && d.cols() == memberships.cols(),
            ErrorCode::kShape, "memberships differ in shape from distances");
    double s = 0.0;
    for (std::size_t i = 0; i < d.rows(); ++i) {
      for (std::size_t k = 0; k < d.cols(); ++k) {
        s += std::pow(memberships(i, k), m) * d(i, k);
      }
    }
    cost[h] = s;
  }
  return cost;
}

std::vector<double> UpdateViewWeights(std::span<const Matrix> distances,
                                      const Matrix& memberships, double m,
                                      double alpha) {
  CheckDistances(distances, distances.size());
  const std::vector<double> cost = ViewCosts(distances, memberships, m);
  const std::size_t s = cost.size();
  std::vector<double> v(s, 0.0);
  std::size_t zeros = std::count(cost.begin(), cost.end(), 0.0);
  if (zeros > 0) {
    for (std::size_t h = 0; h < s; ++h) {
      v[h] = cost[h] == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
    }
    return v;
  }
  const double expo = 1.0 / (alpha - 1.0);
  for (std::size_t h = 0; h < s; ++h) {
    double denom = 0.0;
    for (std::size_t q = 0; q < s; ++q) denom += std::pow(cost[h] / cost[q], expo);
    v[h] = 1.0 / denom;
  }
  return v;
}

double Objective(std::span<const Matrix> distances, const Matrix& memberships,
                 std::span<const double> weights, double m, double alpha) {
  CheckDistances(distances, weights.size());
  const std::vector<double> cost = ViewCosts(distances, memberships, m);
  double j = 0.0;
  for (std::size_t h = 0; h < cost.size(); ++h) {
    j += std::pow(weights[h], alpha) * cost[h];
  }
  return j;
}

double Objective(const MultiViewDataset& data, const ModelState& state,
                 std::span<const HeatKernelCoeffs> coeffs, double m,
                 double alpha, DistanceKind kind) {
  std::vector<Matrix> dist = DistanceTensor(data, state.centers, coeffs, kind);
  return Objective(dist, state.memberships, state.weights, m, alpha);
}

std::vector<Matrix> InitCenters(const MultiViewDataset& data,
                                const ClusterConfig& config) {
  const std::size_t n = data.samples();
  const std::size_t c = static_cast<std::size_t>(config.clusters);
  Require(c >= 1 && c <= n, ErrorCode::kInvalidConfig,
          "cluster count must lie in [1, n]");
  std::mt19937_64 rng(config.seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(c);

  if (config.init == InitMethod::kRandom) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t k = 0; k < c; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, n - 1);
      std::swap(idx[k], idx[pick(rng)]);
      chosen.push_back(idx[k]);
    }
  } else {
    const Matrix x = Concatenate(data);
    std::vector<char> taken(n, 0);
    auto take = [&](std::size_t i) {
      chosen.push_back(i);
      taken[i] = 1;
    };
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    take(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
    std::vector<double> nearest(n);
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = SquaredDistance(x.row(i), x.row(chosen[0]));
    }
    const int trials = 2 + static_cast<int>(std::floor(std::log(static_cast<double>(c))));
    std::vector<double> cumulative(n);
    while (chosen.size() < c) {
      std::partial_sum(nearest.begin(), nearest.end(), cumulative.begin());
      const double total = cumulative.back();
      std::size_t best = n;
      if (total <= 0.0) {
        // Every remaining sample duplicates a chosen one.
        std::vector<std::size_t> free;
        for (std::size_t i = 0; i < n; ++i) {
          if (!taken[i]) free.push_back(i);
        }
        best = free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
      } else {
        double best_potential = std::numeric_limits<double>::infinity();
        for (int t = 0; t < trials; ++t) {
          double r = unit(rng) * total;
          std::size_t cand = static_cast<std::size_t>(
              std::upper_bound(cumulative.begin(), cumulative.end(), r) -
              cumulative.begin());
          cand = std::min(cand, n - 1);
          double potential = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            potential += std::min(nearest[i], SquaredDistance(x.row(i), x.row(cand)));
          }
          if (potential < best_potential) {
            best_potential = potential;
            best = cand;
          }
        }
      }
      take(best);
      for (std::size_t i = 0; i < n; ++i) {
        nearest[i] = std::min(nearest[i], SquaredDistance(x.row(i), x.row(best)));
      }
    }
  }

  std::vector<Matrix> centers;
  for (const Matrix& v : data.views) centers.push_back(SelectRows(v, chosen));
  return centers;
}

void AlternatingStep(const MultiViewDataset& data,
                     std::vector<HeatKernelCoeffs>& coeffs, ModelState& state,
                     const ClusterConfig& config,
                     std::vector<std::string>* diagnostics) {
  const double m = config.fuzzifier;
  const double alpha = config.view_exponent;
  if (config.distance == DistanceKind::kHeatKernel &&
      (config.recompute_hkc_per_iter || coeffs.empty())) {
    coeffs = ComputeAllHkc(data, config.hkc, config.hkc_eps);
  }
  std::vector<Matrix> dist =
      DistanceTensor(data, state.centers, coeffs, config.distance);
  state.memberships = UpdateMemberships(dist, state.weights, m, alpha);
  state.centers = UpdateCenters(data, state.memberships, state.weights, coeffs,
                                state.centers, m, alpha, config.distance,
                                diagnostics);
  dist = DistanceTensor(data, state.centers, coeffs, config.distance);
  state.weights = UpdateViewWeights(dist, state.memberships, m, alpha);
  state.objective = Objective(dist, state.memberships, state.weights, m, alpha);
  Require(std::isfinite(state.objective), ErrorCode::kNumerical,
          "objective became non-finite");
}

namespace {

ClusterModel FitOnce(const MultiViewDataset& data, const ClusterConfig& config,
                     std::vector<HeatKernelCoeffs> coeffs) {
  ModelState state;
  state.centers = InitCenters(data, config);
  state.weights.assign(data.view_count(), 1.0 / static_cast<double>(data.view_count()));

  ClusterModel model;
  double previous = std::numeric_limits<double>::infinity();
  for (int t = 1; t <= config.max_iterations; ++t) {
    AlternatingStep(data, coeffs, state, config, &model.diagnostics);
    model.objective_history.push_back(state.objective);
    model.iterations = t;
    if (config.record_trace) model.trace.push_back(state);
    if (std::abs(state.objective - previous) < config.epsilon) {
      model.converged = true;
      break;
    }
    previous = state.objective;
  }
  model.memberships = std::move(state.memberships);
  model.centers = std::move(state.centers);
  model.weights = std::move(state.weights);
  return model;
}

}  // namespace

std::uint64_t RestartSeed(std::uint64_t seed, int restart) {
  return restart == 0 ? seed : DeriveSeed(seed, 0x5eed, static_cast<std::uint64_t>(restart));
}

ClusterModel Fit(const MultiViewDataset& data, const ClusterConfig& config) {
  config.Validate();
  data.Validate();
  Require(static_cast<std::size_t>(config.clusters) <= data.samples(),
          ErrorCode::kInvalidConfig, "more clusters than samples");
  std::vector<HeatKernelCoeffs> coeffs;
  if (config.distance == DistanceKind::kHeatKernel) {
    coeffs = ComputeAllHkc(data, config.hkc, config.hkc_eps);
  }
  ClusterModel best;
  std::vector<double> finals;
  for (int r = 0; r < config.restarts; ++r) {
    ClusterConfig start = config;
    start.seed = RestartSeed(config.seed, r);
    ClusterModel model = FitOnce(data, start, coeffs);
    const double j = model.objective_history.back();
    logging::Debug("start " + std::to_string(r) + ": " + std::to_string(model.iterations) +
                   " iterations, J=" + FormatDouble(j));
    finals.push_back(j);
    if (r == 0 || j < best.objective_history.back()) {
      best = std::move(model);
      best.selected_restart = r;
    }
  }
  best.restart_objectives = std::move(finals);
  return best;
}

}  // namespace fedheat
