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

#include "fedheat/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fedheat/assignment.hpp"
#include "fedheat/error.hpp"

namespace fedheat {
namespace {

// Maps arbitrary labels to 0..k-1 in sorted order of the original values.
std::vector<int> Compact(std::span<const int> labels, int* k) {
  std::map<int, int> ids;
  for (int l : labels) {
    Require(l >= 0, ErrorCode::kInvalidInput, "labels must be non-negative");
    ids.emplace(l, 0);
  }
  int next = 0;
  for (auto& [key, id] : ids) id = next++;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = ids[labels[i]];
  *k = next;
  return out;
}

void SameLength(std::span<const int> a, std::span<const int> b) {
  Require(a.size() == b.size(), ErrorCode::kShape, "label vectors differ in length");
  Require(!a.empty(), ErrorCode::kInvalidInput, "label vectors are empty");
}

struct Contingency {
  std::vector<std::vector<double>> table;
  std::vector<double> rows, cols;
  double n = 0;
};

Contingency Table(std::span<const int> a, std::span<const int> b) {
  int ka = 0, kb = 0;
  std::vector<int> ca = Compact(a, &ka), cb = Compact(b, &kb);
  Contingency t;
  t.table.assign(ka, std::vector<double>(kb, 0.0));
  t.rows.assign(ka, 0.0);
  t.cols.assign(kb, 0.0);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    t.table[ca[i]][cb[i]] += 1.0;
    t.rows[ca[i]] += 1.0;
    t.cols[cb[i]] += 1.0;
  }
  t.n = static_cast<double>(a.size());
  return t;
}

double Entropy(const std::vector<double>& counts, double n) {
  double h = 0.0;
  for (double c : counts) {
    if (c > 0) h -= (c / n) * std::log(c / n);
  }
  return h;
}

double Comb2(double x) { return x * (x - 1.0) / 2.0; }

double Distance(const Matrix& x, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t f = 0; f < x.cols(); ++f) {
    double d = x(i, f) - x(j, f);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

std::vector<int> MatchLabels(std::span<const int> pred, std::span<const int> truth) {
  SameLength(pred, truth);
  int kp = 0, kt = 0;
  std::vector<int> cp = Compact(pred, &kp), ct = Compact(truth, &kt);
  const int k = std::max(kp, kt);
  Matrix cost(k, k, 0.0);
  for (std::size_t i = 0; i < cp.size(); ++i) cost(cp[i], ct[i]) -= 1.0;
  std::vector<int> assign = SolveAssignment(cost);
  // Translate compacted ids back to the original label values.
  std::map<int, int> pred_orig, truth_orig;
  for (std::size_t i = 0; i < cp.size(); ++i) {
    pred_orig[cp[i]] = pred[i];
    truth_orig[ct[i]] = truth[i];
  }
  int max_pred = *std::max_element(pred.begin(), pred.end());
  std::vector<int> mapping(static_cast<std::size_t>(max_pred) + 1, -1);
  for (int p = 0; p < kp; ++p) {
    auto it = truth_orig.find(assign[p]);
    mapping[pred_orig[p]] = it == truth_orig.end() ? -1 : it->second;
  }
  return mapping;
}

double AccuracyMatched(std::span<const int> pred, std::span<const int> truth) {
  std::vector<int> mapping = MatchLabels(pred, truth);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (mapping[pred[i]] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double AccuracyRaw(std::span<const int> pred, std::span<const int> truth) {
  SameLength(pred, truth);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double Nmi(std::span<const int> a, std::span<const int> b) {
  SameLength(a, b);
  Contingency t = Table(a, b);
  const double ha = Entropy(t.rows, t.n), hb = Entropy(t.cols, t.n);
  if (ha + hb == 0.0) return 1.0;  // both partitions trivial and identical
  double mi = 0.0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    for (std::size_t j = 0; j < t.cols.size(); ++j) {
      const double nij = t.table[i][j];
      if (nij > 0) mi += (nij / t.n) * std::log(t.n * nij / (t.rows[i] * t.cols[j]));
    }
  }
  return std::clamp(2.0 * mi / (ha + hb), 0.0, 1.0);
}

double Ari(std::span<const int> a, std::span<const int> b) {
  SameLength(a, b);
  Contingency t = Table(a, b);
  double index = 0.0, sa = 0.0, sb = 0.0;
  for (const auto& row : t.table) {
    for (double nij : row) index += Comb2(nij);
  }
  for (double r : t.rows) sa += Comb2(r);
  for (double c : t.cols) sb += Comb2(c);
  const double expected = sa * sb / Comb2(t.n);
  const double max_index = 0.5 * (sa + sb);
  if (max_index == expected) return 1.0;  // both partitions trivial
  return (index - expected) / (max_index - expected);
}

double Silhouette(const Matrix& features, std::span<const int> labels) {
  Require(features.rows() == labels.size(), ErrorCode::kShape,
          "silhouette: labels differ in length from features");
  int k = 0;
  std::vector<int> lab = Compact(labels, &k);
  Require(k >= 2, ErrorCode::kInvalidInput, "silhouette is undefined for one cluster");
  const std::size_t n = features.rows();
  std::vector<double> size(k, 0.0);
  for (int l : lab) size[l] += 1.0;
  double total = 0.0;
  std::vector<double> sums(k);
  for (std::size_t i = 0; i < n; ++i) {
    if (size[lab[i]] <= 1.0) continue;  // singleton: s = 0
    std::fill(sums.begin(), sums.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) sums[lab[j]] += Distance(features, i, j);
    }
    const double a = sums[lab[i]] / (size[lab[i]] - 1.0);
    double b = std::numeric_limits<double>::infinity();
    for (int q = 0; q < k; ++q) {
      if (q != lab[i] && size[q] > 0) b = std::min(b, sums[q] / size[q]);
    }
    const double denom = std::max(a, b);
    if (denom > 0) total += (b - a) / denom;
  }
  return total / static_cast<double>(n);
}

double CalinskiHarabasz(const Matrix& features, std::span<const int> labels) {
  Require(features.rows() == labels.size(), ErrorCode::kShape,
          "calinski-harabasz: labels differ in length from features");
  int k = 0;
  std::vector<int> lab = Compact(labels, &k);
  Require(k >= 2, ErrorCode::kInvalidInput,
          "calinski-harabasz is undefined for one cluster (c - 1 = 0)");
  const std::size_t n = features.rows(), d = features.cols();
  Require(n > static_cast<std::size_t>(k), ErrorCode::kInvalidInput,
          "calinski-harabasz needs n > c");
  std::vector<double> overall(d, 0.0);
  Matrix centroid(k, d, 0.0);
  std::vector<double> size(k, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    size[lab[i]] += 1.0;
    for (std::size_t f = 0; f < d; ++f) {
      overall[f] += features(i, f);
      centroid(lab[i], f) += features(i, f);
    }
  }
  for (std::size_t f = 0; f < d; ++f) overall[f] /= static_cast<double>(n);
  for (int q = 0; q < k; ++q) {
    for (std::size_t f = 0; f < d; ++f) centroid(q, f) /= size[q];
  }
  double ssb = 0.0, ssw = 0.0;
  for (int q = 0; q < k; ++q) {
    for (std::size_t f = 0; f < d; ++f) {
      double diff = centroid(q, f) - overall[f];
      ssb += size[q] * diff * diff;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t f = 0; f < d; ++f) {
      double diff = features(i, f) - centroid(lab[i], f);
      ssw += diff * diff;
    }
  }
  Require(ssw > 0.0, ErrorCode::kNumerical, "degenerate SSW=0");
  return (ssb / (k - 1.0)) / (ssw / (static_cast<double>(n) - k));
}

double ViewConsensus(std::span<const int> global,
                     const std::vector<std::vector<int>>& per_view) {
  Require(!per_view.empty(), ErrorCode::kInvalidInput, "no per-view labels");
  double sum = 0.0;
  for (const auto& v : per_view) sum += Nmi(global, v);
  return sum / static_cast<double>(per_view.size());
}

double CrossViewStability(const std::vector<std::vector<int>>& per_view, int clusters) {
  Require(!per_view.empty(), ErrorCode::kInvalidInput, "no per-view labels");
  if (per_view.size() == 1) return 1.0;
  std::vector<std::vector<double>> freq;
  for (const auto& v : per_view) {
    std::vector<double> f(clusters, 0.0);
    for (int l : v) {
      Require(l >= 0 && l < clusters, ErrorCode::kInvalidInput, "label out of range");
      f[l] += 1.0 / static_cast<double>(v.size());
    }
    freq.push_back(std::move(f));
  }
  double sum = 0.0;
  int pairs = 0;
  for (std::size_t a = 0; a < freq.size(); ++a) {
    for (std::size_t b = a + 1; b < freq.size(); ++b) {
      double s = 0.0;
      for (int q = 0; q < clusters; ++q) s += (freq[a][q] - freq[b][q]) * (freq[a][q] - freq[b][q]);
      sum += std::sqrt(s);
      ++pairs;
    }
  }
  return 1.0 - sum / pairs;
}

std::vector<std::vector<int>> PerViewLabels(std::span<const Matrix> distances) {
  std::vector<std::vector<int>> out;
  for (const Matrix& d : distances) {
    std::vector<int> l(d.rows());
    for (std::size_t i = 0; i < d.rows(); ++i) {
      auto row = d.row(i);
      l[i] = static_cast<int>(std::min_element(row.begin(), row.end()) - row.begin());
    }
    out.push_back(std::move(l));
  }
  return out;
}

Matrix ConfusionMatrix(std::span<const int> pred, std::span<const int> truth, int classes) {
  SameLength(pred, truth);
  Matrix m(classes, classes, 0.0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    Require(pred[i] >= 0 && pred[i] < classes && truth[i] >= 0 && truth[i] < classes,
            ErrorCode::kInvalidInput, "label out of range for confusion matrix");
    m(truth[i], pred[i]) += 1.0;
  }
  return m;
}

Matrix RowNormalized(const Matrix& counts) {
  Matrix out = counts;
  for (std::size_t i = 0; i < out.rows(); ++i) {
    double s = 0.0;
    for (double v : out.row(i)) s += v;
    if (s > 0) {
      for (double& v : out.row(i)) v /= s;
    }
  }
  return out;
}

MetricReport EvaluateClustering(const MultiViewDataset& data, std::span<const int> pred,
                                const std::vector<std::vector<int>>& per_view_labels,
                                int clusters) {
  MetricReport r;
  auto attempt = [](MetricValue& slot, auto fn) {
    try {
      slot.value = fn();
    } catch (const Error& e) {
      slot.reason = e.what();
    }
  };
  if (data.labels) {
    const std::vector<int>& truth = *data.labels;
    attempt(r.accuracy, [&] { return AccuracyMatched(pred, truth); });
    attempt(r.nmi, [&] { return Nmi(pred, truth); });
    attempt(r.ari, [&] { return Ari(pred, truth); });
  } else {
    r.accuracy.reason = r.nmi.reason = r.ari.reason = "no ground-truth labels";
  }
  const Matrix features = Concatenate(data);
  attempt(r.silhouette, [&] { return Silhouette(features, pred); });
  attempt(r.calinski_harabasz, [&] { return CalinskiHarabasz(features, pred); });
  if (!per_view_labels.empty()) {
    attempt(r.view_consensus, [&] { return ViewConsensus(pred, per_view_labels); });
    attempt(r.cross_view_stability_artifact,
            [&] { return CrossViewStability(per_view_labels, clusters); });
  } else {
    r.view_consensus.reason = r.cross_view_stability_artifact.reason =
        "no per-view labels";
  }
  return r;
}

}  // namespace fedheat
