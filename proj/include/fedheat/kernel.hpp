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

#ifndef FEDHEAT_KERNEL_HPP_
#define FEDHEAT_KERNEL_HPP_

#include <span>

#include "fedheat/matrix.hpp"

namespace fedheat {

enum class HkcEstimator { kMinMax, kMeanDeviation };

// Per-sample, per-feature heat-kernel coefficients for one view.
struct HeatKernelCoeffs {
  Matrix delta;
  HkcEstimator estimator = HkcEstimator::kMinMax;
};

// delta_ij = (x_ij - min_j) / (max_j - min_j + eps), column-wise.
HeatKernelCoeffs HkcMinMax(const Matrix& view, double eps = 1e-12);

// delta_ij = |x_ij - mean_j|, column-wise.
HeatKernelCoeffs HkcMeanDeviation(const Matrix& view);

HeatKernelCoeffs ComputeHkc(const Matrix& view, HkcEstimator estimator,
                            double eps = 1e-12);

// sum_j delta_j (x_j - a_j)^2
double KernelExponent(std::span<const double> x, std::span<const double> a,
                      std::span<const double> delta);

// exp(-sum_j delta_j (x_j - a_j)^2)
double Ked1(std::span<const double> x, std::span<const double> a,
            std::span<const double> delta);

// 1 - Ked1. Saturates to exactly 1.0 once exp(-phi) drops below half an ulp
// of 1 (phi above roughly 37).
double Ked2(std::span<const double> x, std::span<const double> a,
            std::span<const double> delta);

// Ked2 evaluated with a client's local coefficients on one view.
double Fked(std::span<const double> x, std::span<const double> a,
            std::span<const double> delta);

}  // namespace fedheat

#endif  // FEDHEAT_KERNEL_HPP_
