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

#ifndef FEDHEAT_PRIVACY_HPP_
#define FEDHEAT_PRIVACY_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "fedheat/matrix.hpp"

namespace fedheat {

enum class BudgetScheduleKind {
  kDecaying,  // eps_t = eps_total / sqrt(T) / sqrt(t + 1)
  kUniform,   // eps_t = eps_total / T
};

// kInverseSampleCount divides the sensitivity by the client's sample count,
// the replace-one sensitivity of a mean over bounded data.
enum class SensitivityScaling { kNone, kInverseSampleCount };

struct PrivacyConfig {
  bool enabled = false;
  double epsilon_total = 1.0;
  double delta = 1e-5;
  double sensitivity = 1.0;
  SensitivityScaling sensitivity_scaling = SensitivityScaling::kNone;
  BudgetScheduleKind schedule = BudgetScheduleKind::kDecaying;
  std::uint64_t fixed_point_scale = std::uint64_t{1} << 20;
  bool secure_aggregation = false;

  // Throws kInvalidConfig.
  void Validate() const;
};

// Gaussian mechanism variance 2 sens^2 ln(1.25/delta) / eps^2.
double CenterNoiseVariance(double eps_t, double delta, double sensitivity);

// 2 ln(1.25/delta) / (eps^2 n^2).
double ViewWeightNoiseVariance(double eps_t, double delta, double n_client);

std::vector<Matrix> DpNoiseCenters(std::span<const Matrix> centers, double eps_t,
                                   double delta, double sensitivity,
                                   std::mt19937_64& rng);

// Adds noise, clips at zero and renormalizes. If every entry clips to zero
// the uniform vector is returned.
std::vector<double> DpNoiseViewWeights(std::span<const double> weights,
                                       double eps_t, double delta,
                                       double n_client, std::mt19937_64& rng);

std::vector<double> BudgetSchedule(double epsilon_total, int rounds,
                                   BudgetScheduleKind kind =
                                       BudgetScheduleKind::kDecaying);

// Secure sum by pairwise additive masking over Z_{2^64}.
//
// Each value is encoded as round(v * scale) in two's complement. For every
// pair i < j of participants a mask stream is drawn from a seed both parties
// share; i adds it and j subtracts it, so all masks cancel in the sum.
struct MaskedShare {
  int client_id = 0;
  std::vector<std::uint64_t> values;
};

std::int64_t EncodeFixedPoint(double v, std::uint64_t scale);
double DecodeFixedPoint(std::int64_t v, std::uint64_t scale);

// Seed shared by clients a and b in a session (order-independent).
std::uint64_t PairSeed(std::uint64_t session_seed, int a, int b);

MaskedShare MaskShare(int client_id, std::span<const double> values,
                      std::span<const int> participants,
                      std::uint64_t session_seed, std::uint64_t scale);

// Exact sum of the fixed-point plaintexts. Aborts with kProtocol when the
// shares do not cover exactly the expected participants.
std::vector<std::int64_t> UnmaskSumFixed(std::span<const MaskedShare> shares,
                                         std::span<const int> participants);

std::vector<double> UnmaskSum(std::span<const MaskedShare> shares,
                              std::span<const int> participants,
                              std::uint64_t scale);

std::vector<double> SecureSum(const std::vector<std::vector<double>>& vectors,
                              std::span<const int> client_ids,
                              std::uint64_t session_seed, std::uint64_t scale);

}  // namespace fedheat

#endif  // FEDHEAT_PRIVACY_HPP_
