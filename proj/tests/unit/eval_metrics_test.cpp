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
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "fedheat/error.hpp"
#include "fedheat/metrics.hpp"
#include "test_util.hpp"

using namespace fedheat;

namespace {

std::vector<int> RandomLabels(std::size_t n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<int> out(n);
  for (int& v : out) v = d(rng);
  return out;
}

// Adjusted Rand index by explicit pair counting.
double PairAri(const std::vector<int>& a, const std::vector<int>& b) {
  double both = 0, in_a = 0, in_b = 0, pairs = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      const bool sa = a[i] == a[j], sb = b[i] == b[j];
      both += sa && sb;
      in_a += sa;
      in_b += sb;
      pairs += 1;
    }
  }
  const double expected = in_a * in_b / pairs;
  return (both - expected) / (0.5 * (in_a + in_b) - expected);
}

double EntropyOf(const std::vector<int>& x) {
  std::map<int, double> p;
  for (int v : x) p[v] += 1.0 / x.size();
  double h = 0;
  for (auto [k, q] : p) h -= q * std::log(q);
  return h;
}

// NMI = 2 I / (H(a) + H(b)) with I = H(a) + H(b) - H(a, b).
double EntropyNmi(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> joint(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) joint[i] = a[i] * 1000 + b[i];
  const double ha = EntropyOf(a), hb = EntropyOf(b);
  return 2.0 * (ha + hb - EntropyOf(joint)) / (ha + hb);
}

double BruteSilhouette(const Matrix& x, const std::vector<int>& labels) {
  const int k = *std::max_element(labels.begin(), labels.end()) + 1;
  double total = 0;
  for (std::size_t i = 0; i < x.rows(); ++i) {
    std::vector<double> sum(k, 0.0), count(k, 0.0);
    for (std::size_t j = 0; j < x.rows(); ++j) {
      if (i == j) continue;
      double d = 0;
      for (std::size_t f = 0; f < x.cols(); ++f) d += (x(i, f) - x(j, f)) * (x(i, f) - x(j, f));
      sum[labels[j]] += std::sqrt(d);
      count[labels[j]] += 1;
    }
    const int own = labels[i];
    if (count[own] == 0) continue;
    const double a = sum[own] / count[own];
    double b = 1e300;
    for (int c = 0; c < k; ++c) {
      if (c != own && count[c] > 0) b = std::min(b, sum[c] / count[c]);
    }
    total += (b - a) / std::max(a, b);
  }
  return total / static_cast<double>(x.rows());
}

}  // namespace

TEST_CASE("hand-computed external metrics") {
  const std::vector<int> pred{0, 0, 1, 1}, truth{0, 1, 0, 1};
  CHECK(AccuracyMatched(pred, truth) == 0.5);
  CHECK(Nmi(pred, truth) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(Ari(pred, truth) == doctest::Approx(-0.5));
  const std::vector<int> constant{3, 3, 3, 3};
  CHECK(Ari(pred, constant) == doctest::Approx(0.0));
  CHECK(Nmi(constant, constant) == 1.0);
  CHECK(Ari(constant, constant) == 1.0);

  const std::vector<int> relabelled{2, 2, 0, 0, 1}, base{0, 0, 1, 1, 2};
  CHECK(AccuracyMatched(relabelled, base) == 1.0);
  CHECK(AccuracyRaw(relabelled, base) == 0.0);
  CHECK(Nmi(relabelled, base) == doctest::Approx(1.0));
  CHECK(Ari(relabelled, base) == doctest::Approx(1.0));
  CHECK(MatchLabels(relabelled, base) == std::vector<int>{1, 2, 0});

  const std::vector<int> shorter{0, 1};
  CHECK_THROWS_AS(Ari(pred, shorter), Error);
  const std::vector<int> negative{0, -1, 1, 1};
  CHECK_THROWS_AS(Nmi(negative, truth), Error);
}

TEST_CASE("external metrics against independent oracles") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 20 + trial;
    const int ka = 2 + trial % 4, kb = 2 + (trial / 4) % 4;
    auto a = RandomLabels(n, ka, rng), b = RandomLabels(n, kb, rng);
    if (EntropyOf(a) == 0 || EntropyOf(b) == 0) continue;
    CHECK(Ari(a, b) == doctest::Approx(PairAri(a, b)).epsilon(1e-10));
    CHECK(Nmi(a, b) == doctest::Approx(EntropyNmi(a, b)).epsilon(1e-10));
    CHECK(Ari(a, b) == doctest::Approx(Ari(b, a)).epsilon(1e-14));
    CHECK(Nmi(a, b) == doctest::Approx(Nmi(b, a)).epsilon(1e-14));
    CHECK(AccuracyMatched(a, b) >= AccuracyRaw(a, b));
  }
}

TEST_CASE("matched accuracy equals the best of all permutations") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 30; ++trial) {
    auto pred = RandomLabels(40, 4, rng), truth = RandomLabels(40, 4, rng);
    std::vector<int> perm{0, 1, 2, 3};
    double best = 0;
    do {
      double hits = 0;
      for (std::size_t i = 0; i < pred.size(); ++i) hits += perm[pred[i]] == truth[i];
      best = std::max(best, hits / pred.size());
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(AccuracyMatched(pred, truth) == doctest::Approx(best).epsilon(1e-14));
  }
}

TEST_CASE("silhouette") {
  Matrix pairs = Matrix::FromRows({{0, 0}, {0, 0.01}, {10, 10}, {10, 10.01}});
  const std::vector<int> tight{0, 0, 1, 1};
  CHECK(Silhouette(pairs, tight) > 0.9);
  const std::vector<int> singletons{0, 1, 2, 3};
  CHECK(Silhouette(pairs, singletons) == 0.0);
  const std::vector<int> one{0, 0, 0, 0};
  CHECK_THROWS_AS(Silhouette(pairs, one), Error);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix x = fedheat::testing::RandomMatrix(30, 3, rng, -2, 2);
    auto labels = RandomLabels(30, 3, rng);
    labels[0] = 0;
    labels[1] = 1;
    CHECK(Silhouette(x, labels) == doctest::Approx(BruteSilhouette(x, labels)).epsilon(1e-12));
  }
}

TEST_CASE("calinski-harabasz") {
  Matrix line = Matrix::FromRows({{0}, {1}, {10}, {11}});
  const std::vector<int> labels{0, 0, 1, 1};
  // SSB = 2 * 25 + 2 * 25 = 100, SSW = 4 * 0.25 = 1, (100 / 1) / (1 / 2).
  CHECK(CalinskiHarabasz(line, labels) == doctest::Approx(200.0));

  Matrix twice = Matrix::FromRows({{0}, {0}, {5}, {5}});
  try {
    CalinskiHarabasz(twice, labels);
    FAIL("expected a numerical error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNumerical);
  }
  const std::vector<int> one{0, 0, 0, 0};
  CHECK_THROWS_AS(CalinskiHarabasz(line, one), Error);
  const std::vector<int> all_distinct{0, 1, 2, 3};
  CHECK_THROWS_AS(CalinskiHarabasz(line, all_distinct), Error);
}

TEST_CASE("view consensus and stability") {
  std::mt19937_64 rng(4);
  auto global = RandomLabels(5000, 4, rng);
  CHECK(ViewConsensus(global, {global, global}) == doctest::Approx(1.0));
  auto noise = RandomLabels(5000, 4, rng);
  CHECK(ViewConsensus(global, {noise}) < 0.05);
  CHECK(ViewConsensus(global, {global, noise}) ==
        doctest::Approx(0.5 * (1.0 + Nmi(global, noise))));

  CHECK(CrossViewStability({global, global}, 4) == doctest::Approx(1.0));
  const std::vector<int> left{0, 0, 0, 0}, right{1, 1, 1, 1};
  CHECK(CrossViewStability({left, right}, 2) == doctest::Approx(1.0 - std::sqrt(2.0)));
  CHECK_THROWS_AS(ViewConsensus(global, {}), Error);
}

TEST_CASE("per-view labels") {
  Matrix d0 = Matrix::FromRows({{0.1, 0.9}, {0.8, 0.2}, {0.5, 0.4}});
  Matrix d1 = Matrix::FromRows({{0.7, 0.3}, {0.6, 0.1}, {0.2, 0.2}});
  std::vector<Matrix> distances{d0, d1};
  auto labels = PerViewLabels(distances);
  CHECK(labels[0] == std::vector<int>{0, 1, 1});
  CHECK(labels[1] == std::vector<int>{1, 1, 0});
}

TEST_CASE("confusion matrix") {
  const std::vector<int> pred{0, 1, 1, 2, 2, 2}, truth{0, 0, 1, 1, 2, 2};
  Matrix m = ConfusionMatrix(pred, truth, 3);
  CHECK(m == Matrix::FromRows({{1, 1, 0}, {0, 1, 1}, {0, 0, 2}}));
  Matrix r = RowNormalized(m);
  CHECK(r(0, 0) == 0.5);
  CHECK(r(2, 2) == 1.0);
  const std::vector<int> out_of_range{0, 1, 1, 2, 2, 3};
  CHECK_THROWS_AS(ConfusionMatrix(out_of_range, truth, 3), Error);
}

TEST_CASE("evaluation report") {
  MultiViewDataset d;
  d.views = {Matrix::FromRows({{0, 0}, {0, 1}, {9, 9}, {9, 10}})};
  const std::vector<int> pred{1, 1, 0, 0};
  std::vector<std::vector<int>> per_view{{1, 1, 0, 0}};
  MetricReport unlabeled = EvaluateClustering(d, pred, per_view, 2);
  CHECK_FALSE(unlabeled.accuracy.value);
  CHECK_FALSE(unlabeled.nmi.value);
  CHECK_FALSE(unlabeled.ari.value);
  CHECK(unlabeled.silhouette.value);
  CHECK(unlabeled.calinski_harabasz.value);
  CHECK_FALSE(unlabeled.accuracy.reason.empty());

  d.labels = std::vector<int>{0, 0, 1, 1};
  MetricReport labeled = EvaluateClustering(d, pred, per_view, 2);
  CHECK(*labeled.accuracy.value == 1.0);
  CHECK(*labeled.nmi.value == doctest::Approx(1.0));
  CHECK(*labeled.ari.value == doctest::Approx(1.0));
  CHECK(*labeled.view_consensus.value == doctest::Approx(1.0));
}
