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

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/math/distributions/chi_squared.hpp>

#include "fedheat/error.hpp"
#include "fedheat/federation.hpp"

namespace fedheat {
namespace {

// Type-7 quantile of sorted data.
double Quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<double> QuantileProfile(const Matrix& view, std::size_t j) {
  std::vector<double> col;
  col.reserve(view.rows());
  for (std::size_t i = 0; i < view.rows(); ++i) {
    if (std::isfinite(view(i, j))) col.push_back(view(i, j));
  }
  std::vector<double> profile;
  if (col.empty()) return profile;
  std::sort(col.begin(), col.end());
  for (int q = 1; q <= 19; ++q) profile.push_back(Quantile(col, 0.05 * q));
  return profile;
}

double Pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || a.size() != b.size()) return 0.0;
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  if (saa == 0.0 && sbb == 0.0) return a == b ? 1.0 : 0.0;
  if (saa == 0.0 || sbb == 0.0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

std::vector<std::size_t> MahalanobisOutliers(const Matrix& view, double quantile) {
  const std::size_t n = view.rows(), d = view.cols();
  std::vector<std::size_t> out;
  if (n <= d + 1) return out;
  Eigen::MatrixXd x(n, d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) x(i, j) = view(i, j);
  }
  Eigen::RowVectorXd mean = x.colwise().mean();
  Eigen::MatrixXd centered = x.rowwise() - mean;
  Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n - 1);
  Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() <= 1e-300) {
    return out;  // singular covariance: no meaningful distance
  }
  const double cutoff = boost::math::quantile(
      boost::math::chi_squared(static_cast<double>(d)), quantile);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::VectorXd r = centered.row(i).transpose();
    if (r.dot(ldlt.solve(r)) > cutoff) out.push_back(i);
  }
  return out;
}

}  // namespace

double ConsistencyScore(const std::vector<MultiViewDataset>& datasets) {
  if (datasets.size() < 2) return 1.0;
  double worst = 1.0;
  for (std::size_t h = 0; h < datasets.front().view_count(); ++h) {
    const std::size_t d = datasets.front().views[h].cols();
    double pair_sum = 0.0;
    int pairs = 0;
    for (std::size_t a = 0; a < datasets.size(); ++a) {
      for (std::size_t b = a + 1; b < datasets.size(); ++b) {
        double trace = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
          trace += Pearson(QuantileProfile(datasets[a].views[h], j),
                           QuantileProfile(datasets[b].views[h], j));
        }
        pair_sum += trace / static_cast<double>(d);
        ++pairs;
      }
    }
    worst = std::min(worst, pair_sum / pairs);
  }
  return worst;
}

CertificationReport AssessFederation(const std::vector<MultiViewDataset>& raw,
                                     int clusters,
                                     const CertificationThresholds& thresholds) {
  Require(!raw.empty(), ErrorCode::kInvalidInput, "no client datasets");
  Require(clusters >= 1, ErrorCode::kInvalidConfig, "clusters must be >= 1");
  CertificationReport report;
  const std::vector<std::size_t> dims = raw.front().dims();
  double eta_sum = 0.0;
  for (std::size_t l = 0; l < raw.size(); ++l) {
    MultiViewDataset data = raw[l];
    const std::string who = "client " + std::to_string(l);
    Require(!data.views.empty(), ErrorCode::kShape, who + " has no views");
    const std::size_t n = data.samples();
    for (const Matrix& v : data.views) {
      Require(v.rows() == n, ErrorCode::kShape, who + " views disagree on n");
    }
    if (n < 10 * static_cast<std::size_t>(clusters)) {
      report.issues.push_back(who + ": insufficient samples (n=" + std::to_string(n) +
                              " < 10*c=" + std::to_string(10 * clusters) + ")");
    }
    if (data.dims() != dims) {
      report.issues.push_back(who + ": view dimensions differ from client 0");
    }
    std::vector<double> eta;
    std::size_t imputed = 0;
    std::vector<char> flagged(n, 0);
    for (std::size_t h = 0; h < data.view_count(); ++h) {
      Matrix& v = data.views[h];
      std::size_t valid_rows = 0, missing = 0;
      for (std::size_t i = 0; i < n; ++i) {
        bool ok = true;
        for (std::size_t j = 0; j < v.cols(); ++j) {
          if (!std::isfinite(v(i, j))) {
            ok = false;
            ++missing;
          }
        }
        if (ok) ++valid_rows;
      }
      eta.push_back(n ? static_cast<double>(valid_rows) / static_cast<double>(n) : 0.0);
      const double frac = static_cast<double>(missing) / static_cast<double>(v.size());
      if (missing > 0 && frac < thresholds.imputation_limit) {
        for (std::size_t j = 0; j < v.cols(); ++j) {
          double sum = 0.0;
          std::size_t cnt = 0;
          for (std::size_t i = 0; i < n; ++i) {
            if (std::isfinite(v(i, j))) {
              sum += v(i, j);
              ++cnt;
            }
          }
          const double mean = cnt ? sum / static_cast<double>(cnt) : 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(v(i, j))) {
              v(i, j) = mean;
              ++imputed;
            }
          }
        }
      } else if (missing > 0) {
        report.issues.push_back(who + ": view " + std::to_string(h + 1) +
                                " missing fraction too high for imputation");
        continue;
      }
      for (std::size_t i : MahalanobisOutliers(v, thresholds.outlier_quantile)) {
        flagged[i] = 1;
      }
    }
    std::vector<std::size_t> outliers;
    for (std::size_t i = 0; i < n; ++i) {
      if (flagged[i]) outliers.push_back(i);
    }
    double eta_client = 0.0;
    for (double e : eta) eta_client += e;
    eta_sum += eta_client / static_cast<double>(eta.size());
    report.eta.push_back(std::move(eta));
    report.outliers.push_back(std::move(outliers));
    report.imputed_entries.push_back(imputed);
    report.datasets.push_back(std::move(data));
  }
  report.eta_global = eta_sum / static_cast<double>(raw.size());
  bool dims_ok = true;
  for (const MultiViewDataset& d : report.datasets) dims_ok = dims_ok && d.dims() == dims;
  report.xi_global = dims_ok ? ConsistencyScore(report.datasets) : 0.0;
  if (report.eta_global < thresholds.eta_min) {
    report.issues.push_back("global completeness " + FormatDouble(report.eta_global) +
                            " below " + FormatDouble(thresholds.eta_min));
  }
  if (report.xi_global < thresholds.xi_min) {
    report.issues.push_back("consistency score " + FormatDouble(report.xi_global) +
                            " below " + FormatDouble(thresholds.xi_min));
  }
  report.certified = report.issues.empty();
  return report;
}

CertificationReport PrepareAndValidate(const std::vector<MultiViewDataset>& raw,
                                       int clusters,
                                       const CertificationThresholds& thresholds) {
  CertificationReport report = AssessFederation(raw, clusters, thresholds);
  if (!report.certified) {
    std::string msg = "federation not certified:";
    for (const std::string& issue : report.issues) msg += "\n  " + issue;
    Fail(ErrorCode::kValidation, msg);
  }
  return report;
}

}  // namespace fedheat
