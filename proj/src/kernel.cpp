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

#include "fedheat/kernel.hpp"

#include <algorithm>
#include <cmath>

#include "fedheat/error.hpp"

namespace fedheat {
namespace {

void RequireFiniteView(const Matrix& view) {
  Require(view.rows() >= 1 && view.cols() >= 1, ErrorCode::kShape,
          "view must have at least one row and one column");
  Require(AllFinite(view), ErrorCode::kInvalidInput,
          "heat-kernel coefficients need finite input");
}

}  // namespace

HeatKernelCoeffs HkcMinMax(const Matrix& view, double eps) {
  RequireFiniteView(view);
  Require(eps > 0 && std::isfinite(eps), ErrorCode::kInvalidInput,
          "hkc eps must be positive");
  HeatKernelCoeffs out{Matrix(view.rows(), view.cols()), HkcEstimator::kMinMax};
  for (std::size_t j = 0; j < view.cols(); ++j) {
    double lo = view(0, j), hi = view(0, j);
    for (std::size_t i = 1; i < view.rows(); ++i) {
      lo = std::min(lo, view(i, j));
      hi = std::max(hi, view(i, j));
    }
    double range = hi - lo + eps;
    for (std::size_t i = 0; i < view.rows(); ++i) {
      out.delta(i, j) = (view(i, j) - lo) / range;
    }
  }
  return out;
}

HeatKernelCoeffs HkcMeanDeviation(const Matrix& view) {
  RequireFiniteView(view);
  HeatKernelCoeffs out{Matrix(view.rows(), view.cols()),
                       HkcEstimator::kMeanDeviation};
  for (std::size_t j = 0; j < view.cols(); ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < view.rows(); ++i) sum += view(i, j);
    double mean = sum / static_cast<double>(view.rows());
    for (std::size_t i = 0; i < view.rows(); ++i) {
      out.delta(i, j) = std::abs(view(i, j) - mean);
    }
  }
  return out;
}

HeatKernelCoeffs ComputeHkc(const Matrix& view, HkcEstimator estimator,
                            double eps) {
  return estimator == HkcEstimator::kMinMax ? HkcMinMax(view, eps)
                                            : HkcMeanDeviation(view);
}

double KernelExponent(std::span<const double> x, std::span<const double> a,
                      std::span<const double> delta) {
  Require(x.size() == a.size() && x.size() == delta.size(), ErrorCode::kShape,
          "kernel distance operands differ in length");
  double phi = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    double d = x[j] - a[j];
    phi += delta[j] * d * d;
  }
  return phi;
}

double Ked1(std::span<const double> x, std::span<const double> a,
            std::span<const double> delta) {
  return std::exp(-KernelExponent(x, a, delta));
}

double Ked2(std::span<const double> x, std::span<const double> a,
            std::span<const double> delta) {
  return 1.0 - Ked1(x, a, delta);
}

double Fked(std::span<const double> x, std::span<const double> a,
            std::span<const double> delta) {
  return Ked2(x, a, delta);
}

}  // namespace fedheat
