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
#include <limits>
#include <sstream>

#include "fedheat/error.hpp"
#include "fedheat/synthgen.hpp"

namespace fedheat {
namespace {

Matrix ClusterRows(const Matrix& view, std::size_t k, std::size_t per_cluster) {
  std::vector<std::size_t> rows(per_cluster);
  for (std::size_t i = 0; i < per_cluster; ++i) rows[i] = k * per_cluster + i;
  return SelectRows(view, rows);
}

double Correlation(const Matrix& a, std::size_t ja, const Matrix& b, std::size_t jb) {
  const std::size_t n = a.rows();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a(i, ja);
    mb += b(i, jb);
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double da = a(i, ja) - ma, db = b(i, jb) - mb;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

double DirectedHausdorff(const Matrix& points, const Matrix& templ) {
  Require(points.cols() == 2 && templ.cols() == 2 && templ.rows() > 0, ErrorCode::kShape,
          "hausdorff needs 2-d point sets");
  std::vector<std::array<double, 2>> t(templ.rows());
  for (std::size_t i = 0; i < templ.rows(); ++i) t[i] = {templ(i, 0), templ(i, 1)};
  std::sort(t.begin(), t.end());
  double worst = 0.0;
  for (std::size_t i = 0; i < points.rows(); ++i) {
    const double x = points(i, 0), y = points(i, 1);
    auto it = std::lower_bound(t.begin(), t.end(), std::array<double, 2>{x, -1e300});
    double best = std::numeric_limits<double>::infinity();
    for (auto r = it; r != t.end() && (*r)[0] - x < best; ++r) {
      best = std::min(best, std::hypot((*r)[0] - x, (*r)[1] - y));
    }
    for (auto l = it; l != t.begin();) {
      --l;
      if (x - (*l)[0] >= best) break;
      best = std::min(best, std::hypot((*l)[0] - x, (*l)[1] - y));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

double KsStatisticUniform(std::vector<double> values) {
  Require(!values.empty(), ErrorCode::kInvalidInput, "KS test needs samples");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double u = values[i];
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - u,
                             u - static_cast<double>(i) / n));
  }
  return d;
}

double KsPValue(double statistic, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0, sign = 1.0;
  for (int k = 1; k <= 200; ++k) {
    const double term = sign * std::exp(-2.0 * k * k * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-12 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

ValidationReport ValidateGenerated(const MultiViewDataset& data, const BenchmarkSpec& spec,
                                   double shape_tolerance, double alpha) {
  ValidationReport report;
  report.shape_tolerance = shape_tolerance;
  report.ks_alpha = alpha;
  const std::size_t c = spec.clusters();
  const std::size_t per = spec.n_per_cluster;
  Require(data.view_count() == spec.views.size(), ErrorCode::kShape,
          "dataset and spec disagree on the number of views");

  BenchmarkSpec noiseless = spec;
  for (auto& view : noiseless.views) {
    for (ShapeSpec& s : view) s.noise_sigma = 0.0;
  }
  const MultiViewDataset clean = AssembleBenchmark(noiseless);

  std::vector<std::size_t> counts(c, 0);
  bool labels_ok = data.labels.has_value() && data.samples() == c * per;
  if (data.labels) {
    for (int l : *data.labels) {
      if (l >= 0 && static_cast<std::size_t>(l) < c) {
        counts[l]++;
      } else {
        labels_ok = false;
      }
    }
    // Rows must be cluster-major for per-cluster comparison.
    for (std::size_t i = 0; labels_ok && i < data.samples(); ++i) {
      labels_ok = (*data.labels)[i] == static_cast<int>(i / per);
    }
  }

  bool passed = labels_ok;
  std::vector<double> pit;
  for (std::size_t h = 0; h < spec.views.size(); ++h) {
    for (std::size_t k = 0; k < c; ++k) {
      const ShapeSpec& shape = spec.views[h][k];
      ClusterValidation cv;
      cv.view = static_cast<int>(h) + 1;
      cv.cluster = static_cast<int>(k);
      cv.kind = shape.kind();
      cv.count = counts[k];
      cv.count_ok = labels_ok && counts[k] == per;
      cv.hausdorff_limit = shape_tolerance + 3.0 * shape.noise_sigma;
      const Matrix templ = ShapeTemplate(shape);
      const Matrix clean_part = ClusterRows(clean.views[h], k, per);
      cv.noiseless_hausdorff = DirectedHausdorff(clean_part, templ);
      if (labels_ok) {
        const Matrix part = ClusterRows(data.views[h], k, per);
        cv.hausdorff = DirectedHausdorff(part, templ);
        if (shape.noise_sigma > 0.0) {
          const double sigma = shape.noise_sigma;
          for (std::size_t i = 0; i < per; ++i) {
            const double rx = part(i, 0) - clean_part(i, 0);
            const double ry = part(i, 1) - clean_part(i, 1);
            if (shape.noise_model() == NoiseModel::kRadial) {
              pit.push_back(std::erf(std::hypot(rx, ry) / sigma / std::sqrt(2.0)));
            } else {
              pit.push_back(0.5 * std::erfc(-rx / sigma / std::sqrt(2.0)));
              pit.push_back(0.5 * std::erfc(-ry / sigma / std::sqrt(2.0)));
            }
          }
        }
      } else {
        cv.hausdorff = std::numeric_limits<double>::infinity();
      }
      passed = passed && cv.count_ok && cv.hausdorff <= cv.hausdorff_limit &&
               cv.noiseless_hausdorff <= shape_tolerance;
      report.clusters.push_back(cv);
    }
  }
  if (!pit.empty()) {
    report.ks_samples = pit.size();
    report.ks_statistic = KsStatisticUniform(pit);
    report.ks_p_value = KsPValue(report.ks_statistic, pit.size());
    passed = passed && report.ks_p_value >= alpha;
  }

  double corr = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < data.view_count(); ++a) {
    for (std::size_t b = a + 1; b < data.view_count(); ++b) {
      for (std::size_t ja = 0; ja < data.views[a].cols(); ++ja) {
        for (std::size_t jb = 0; jb < data.views[b].cols(); ++jb) {
          corr += std::abs(Correlation(data.views[a], ja, data.views[b], jb));
          ++pairs;
        }
      }
    }
  }
  report.cross_view_correlation = pairs ? corr / pairs : 0.0;
  report.passed = passed;
  report.regeneration_recommended = !passed;
  return report;
}

std::string ValidationReport::ToText() const {
  std::ostringstream out;
  out << "generator validation: " << (passed ? "PASS" : "FAIL") << "\n";
  out << "shape tolerance: " << FormatDouble(shape_tolerance) << "\n";
  out << "view,cluster,shape,count,count_ok,hausdorff,limit,noiseless_hausdorff\n";
  for (const ClusterValidation& c : clusters) {
    out << c.view << ',' << c.cluster << ',' << ShapeName(c.kind) << ',' << c.count << ','
        << (c.count_ok ? "yes" : "no") << ',' << FormatDouble(c.hausdorff) << ','
        << FormatDouble(c.hausdorff_limit) << ',' << FormatDouble(c.noiseless_hausdorff)
        << "\n";
  }
  out << "noise KS: n=" << ks_samples << " D=" << FormatDouble(ks_statistic)
      << " p=" << FormatDouble(ks_p_value) << " alpha=" << FormatDouble(ks_alpha) << "\n";
  out << "cross-view correlation (informational): " << FormatDouble(cross_view_correlation)
      << "\n";
  if (regeneration_recommended) out << "regeneration recommended\n";
  return out.str();
}

}  // namespace fedheat
