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

#include "fedheat/privacy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "fedheat/dataset.hpp"
#include "fedheat/error.hpp"

namespace fedheat {
namespace {

void RequireBudget(double eps_t, double delta) {
  Require(eps_t > 0.0 && std::isfinite(eps_t), ErrorCode::kInvalidInput,
          "privacy budget eps_t must be positive");
  Require(delta > 0.0 && delta < 1.0, ErrorCode::kInvalidInput,
          "delta must lie in (0, 1)");
}

}  // namespace

void PrivacyConfig::Validate() const {
  Require(epsilon_total > 0.0 && std::isfinite(epsilon_total),
          ErrorCode::kInvalidConfig, "privacy epsilon_total must be > 0");
  Require(delta > 0.0 && delta < 1.0, ErrorCode::kInvalidConfig,
          "privacy delta must lie in (0, 1)");
  Require(sensitivity > 0.0 && std::isfinite(sensitivity),
          ErrorCode::kInvalidConfig, "privacy sensitivity must be > 0");
  Require(fixed_point_scale > 0 && std::has_single_bit(fixed_point_scale),
          ErrorCode::kInvalidConfig, "fixed_point_scale must be a power of two");
}

double CenterNoiseVariance(double eps_t, double delta, double sensitivity) {
  RequireBudget(eps_t, delta);
  return 2.0 * sensitivity * sensitivity * std::log(1.25 / delta) / (eps_t * eps_t);
}

double ViewWeightNoiseVariance(double eps_t, double delta, double n_client) {
  RequireBudget(eps_t, delta);
  Require(n_client > 0.0, ErrorCode::kInvalidInput, "n_client must be > 0");
  return 2.0 * std::log(1.25 / delta) / (eps_t * eps_t * n_client * n_client);
}

std::vector<Matrix> DpNoiseCenters(std::span<const Matrix> centers, double eps_t,
                                   double delta, double sensitivity,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> noise(
      0.0, std::sqrt(CenterNoiseVariance(eps_t, delta, sensitivity)));
  std::vector<Matrix> out(centers.begin(), centers.end());
  for (Matrix& a : out) {
    for (double& v : a.values()) v += noise(rng);
  }
  return out;
}

std::vector<double> DpNoiseViewWeights(std::span<const double> weights,
                                       double eps_t, double delta,
                                       double n_client, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(
      0.0, std::sqrt(ViewWeightNoiseVariance(eps_t, delta, n_client)));
  std::vector<double> out(weights.begin(), weights.end());
  double total = 0.0;
  for (double& v : out) {
    v = std::max(0.0, v + noise(rng));
    total += v;
  }
  if (total <= 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
    return out;
  }
  for (double& v : out) v /= total;
  return out;
}

std::vector<double> BudgetSchedule(double epsilon_total, int rounds,
                                   BudgetScheduleKind kind) {
  Require(rounds >= 1, ErrorCode::kInvalidInput, "schedule needs T >= 1");
  Require(epsilon_total > 0.0, ErrorCode::kInvalidInput,
          "epsilon_total must be > 0");
  std::vector<double> eps(rounds);
  const double t_total = static_cast<double>(rounds);
  for (int t = 0; t < rounds; ++t) {
    eps[t] = kind == BudgetScheduleKind::kUniform
                 ? epsilon_total / t_total
                 : epsilon_total / std::sqrt(t_total) / std::sqrt(t + 1.0);
  }
  return eps;
}

std::int64_t EncodeFixedPoint(double v, std::uint64_t scale) {
  const double scaled = std::round(v * static_cast<double>(scale));
  // Leave headroom so sums of a few thousand clients stay exact.
  Require(std::isfinite(scaled) && std::abs(scaled) < 0x1p52, ErrorCode::kInvalidInput,
          "value out of fixed-point range");
  return static_cast<std::int64_t>(scaled);
}

double DecodeFixedPoint(std::int64_t v, std::uint64_t scale) {
  return static_cast<double>(v) / static_cast<double>(scale);
}

std::uint64_t PairSeed(std::uint64_t session_seed, int a, int b) {
  const auto lo = static_cast<std::uint64_t>(std::min(a, b));
  const auto hi = static_cast<std::uint64_t>(std::max(a, b));
  return DeriveSeed(session_seed, lo, hi);
}

MaskedShare MaskShare(int client_id, std::span<const double> values,
                      std::span<const int> participants,
                      std::uint64_t session_seed, std::uint64_t scale) {
  MaskedShare share{client_id, std::vector<std::uint64_t>(values.size())};
  for (std::size_t k = 0; k < values.size(); ++k) {
    share.values[k] = static_cast<std::uint64_t>(EncodeFixedPoint(values[k], scale));
  }
  for (int peer : participants) {
    if (peer == client_id) continue;
    std::mt19937_64 stream(PairSeed(session_seed, client_id, peer));
    const bool add = client_id < peer;
    for (std::uint64_t& v : share.values) {
      const std::uint64_t mask = stream();
      v = add ? v + mask : v - mask;  // wraps mod 2^64
    }
  }
  return share;
}

std::vector<std::int64_t> UnmaskSumFixed(std::span<const MaskedShare> shares,
                                         std::span<const int> participants) {
  std::set<int> expected(participants.begin(), participants.end());
  Require(expected.size() == participants.size(), ErrorCode::kProtocol,
          "duplicate participant id");
  std::set<int> seen;
  for (const MaskedShare& s : shares) {
    Require(expected.count(s.client_id) == 1, ErrorCode::kProtocol,
            "share from unknown client " + std::to_string(s.client_id));
    Require(seen.insert(s.client_id).second, ErrorCode::kProtocol,
            "duplicate share from client " + std::to_string(s.client_id));
  }
  Require(seen.size() == expected.size(), ErrorCode::kProtocol,
          "missing shares: masks cannot cancel, aborting secure sum");
  const std::size_t len = shares.empty() ? 0 : shares.front().values.size();
  std::vector<std::uint64_t> acc(len, 0);
  for (const MaskedShare& s : shares) {
    Require(s.values.size() == len, ErrorCode::kProtocol, "share length mismatch");
    for (std::size_t k = 0; k < len; ++k) acc[k] += s.values[k];
  }
  std::vector<std::int64_t> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = static_cast<std::int64_t>(acc[k]);
  return out;
}

std::vector<double> UnmaskSum(std::span<const MaskedShare> shares,
                              std::span<const int> participants,
                              std::uint64_t scale) {
  std::vector<std::int64_t> fixed = UnmaskSumFixed(shares, participants);
  std::vector<double> out(fixed.size());
  for (std::size_t k = 0; k < fixed.size(); ++k) {
    out[k] = DecodeFixedPoint(fixed[k], scale);
  }
  return out;
}

std::vector<double> SecureSum(const std::vector<std::vector<double>>& vectors,
                              std::span<const int> client_ids,
                              std::uint64_t session_seed, std::uint64_t scale) {
  Require(vectors.size() == client_ids.size(), ErrorCode::kProtocol,
          "one vector per client required");
  std::vector<MaskedShare> shares;
  shares.reserve(vectors.size());
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    shares.push_back(MaskShare(client_ids[i], vectors[i], client_ids, session_seed, scale));
  }
  return UnmaskSum(shares, client_ids, scale);
}

}  // namespace fedheat
