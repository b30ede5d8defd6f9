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

#ifndef FEDHEAT_METRICS_HPP_
#define FEDHEAT_METRICS_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedheat/dataset.hpp"
#include "fedheat/kernel.hpp"
#include "fedheat/matrix.hpp"

namespace fedheat {

// A metric value, or the reason it could not be computed.
struct MetricValue {
  std::optional<double> value;
  std::string reason;
};

struct MetricReport {
  MetricValue accuracy;
  MetricValue nmi;
  MetricValue ari;
  MetricValue silhouette;
  MetricValue calinski_harabasz;
  MetricValue view_consensus;
  MetricValue cross_view_stability_artifact;
};

// Labels may be any non-negative integers; they are compacted internally.
double AccuracyMatched(std::span<const int> pred, std::span<const int> truth);
// Fraction of positions with pred == truth, no matching.
double AccuracyRaw(std::span<const int> pred, std::span<const int> truth);
// Predicted label -> true label under the optimal bijection (-1 if unmatched).
std::vector<int> MatchLabels(std::span<const int> pred, std::span<const int> truth);

double Nmi(std::span<const int> a, std::span<const int> b);
double Ari(std::span<const int> a, std::span<const int> b);

// Euclidean distance on the given features; singletons score 0.
double Silhouette(const Matrix& features, std::span<const int> labels);
double CalinskiHarabasz(const Matrix& features, std::span<const int> labels);

// Mean over views of NMI(global, per-view labels).
double ViewConsensus(std::span<const int> global,
                     const std::vector<std::vector<int>>& per_view);

// 1 - mean pairwise L2 distance between the per-view cluster frequency
// vectors (each view's label histogram divided by n).
double CrossViewStability(const std::vector<std::vector<int>>& per_view, int clusters);

// Per-view labels: argmin over clusters of the single-view distance.
std::vector<std::vector<int>> PerViewLabels(std::span<const Matrix> distances);

// rows = truth label, cols = predicted label.
Matrix ConfusionMatrix(std::span<const int> pred, std::span<const int> truth, int classes);
Matrix RowNormalized(const Matrix& counts);

// Every metric applicable to the inputs; truth-based ones are absent
// without labels.
MetricReport EvaluateClustering(const MultiViewDataset& data, std::span<const int> pred,
                                const std::vector<std::vector<int>>& per_view_labels,
                                int clusters);

}  // namespace fedheat

#endif  // FEDHEAT_METRICS_HPP_
