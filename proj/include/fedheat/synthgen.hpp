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

#ifndef FEDHEAT_SYNTHGEN_HPP_
#define FEDHEAT_SYNTHGEN_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "fedheat/dataset.hpp"
#include "fedheat/matrix.hpp"

namespace fedheat {

inline constexpr const char* kGeneratorVersion = "fedheat-synthgen-1";

enum class ShapeKind { kCircle, kEllipse, kCrescent, kSCurve, kDiamond, kRing, kCross, kHeart };

const char* ShapeName(ShapeKind kind);
ShapeKind ParseShapeName(const std::string& name);

// Radial noise perturbs the radius along the sampled direction; isotropic
// noise adds N(0, sigma^2) to each coordinate.
enum class NoiseModel { kRadial, kIsotropic };

struct CircleParams { double radius = 0.5; };
struct EllipseParams { double semi_major = 1.5, semi_minor = 0.4; };
struct CrescentParams {
  double outer_radius = 1.2, inner_radius = 0.6, inner_shift = 0.4;
  double half_angle = 1.0471975511965976;  // pi/3
  double angle_jitter = 0.1;
};
struct SCurveParams {
  double base_radius = 0.3, amplitude = 0.3, frequency = 3.0, angle_jitter = 0.05;
};
struct DiamondParams { double base_radius = 0.5, amplitude = 0.3, lobes = 4.0; };
struct RingParams { double inner_radius = 0.8, outer_radius = 1.3; };
struct CrossParams { double half_length = 1.0, bar_width = 0.3; };
struct HeartParams { double scale = 0.3, angle_jitter = 0.1; };

using ShapeParams = std::variant<CircleParams, EllipseParams, CrescentParams, SCurveParams,
                                 DiamondParams, RingParams, CrossParams, HeartParams>;

struct ShapeSpec {
  std::array<double, 2> center{0.0, 0.0};
  ShapeParams params;
  double noise_sigma = 0.0;

  ShapeKind kind() const { return static_cast<ShapeKind>(params.index()); }
  NoiseModel noise_model() const;
  // Throws kInvalidConfig for non-positive geometric parameters.
  void Validate() const;
};

// Default parameters and noise level for a shape, with the given center.
ShapeSpec DefaultShape(ShapeKind kind, std::array<double, 2> center);

// Exactly n points. Every call draws the same variates regardless of
// noise_sigma, so a noiseless spec reproduces the structure of a noisy one.
Matrix GenerateShape(std::size_t n, const ShapeSpec& spec, std::mt19937_64& rng);

// Point on the heart curve at parameter t, without jitter or noise.
std::array<double, 2> HeartPoint(const ShapeSpec& spec, double t);

// Dense point set covering the noiseless support (at least 1000 points).
// Gaussian structural terms (cross bar width, crescent angle jitter) are
// truncated at five standard deviations.
Matrix ShapeTemplate(const ShapeSpec& spec);

// views[h][k] describes cluster k in view h.
struct BenchmarkSpec {
  std::size_t n_per_cluster = 250;
  std::uint64_t seed = 42;
  std::vector<std::vector<ShapeSpec>> views;

  std::size_t clusters() const { return views.empty() ? 0 : views.front().size(); }
};

// The eight-shape, two-view, four-cluster benchmark.
BenchmarkSpec DefaultBenchmark(std::size_t n_per_cluster, std::uint64_t seed);

// Keeps only the listed clusters (relabelled 0..) in every view.
BenchmarkSpec SubsetClusters(const BenchmarkSpec& spec, const std::vector<int>& clusters);

// Rows are cluster-major: cluster 0 first. Labels are shared by all views.
MultiViewDataset AssembleBenchmark(const BenchmarkSpec& spec);

struct FederatedSplit {
  std::vector<std::vector<std::size_t>> clients;  // sorted row indices
  std::vector<double> fractions;
};

// Per-label stratified split (largest-remainder allocation, shuffled with
// seed); rows without labels form one stratum.
FederatedSplit PartitionFederated(const MultiViewDataset& data,
                                  const std::vector<double>& fractions,
                                  std::uint64_t seed);

std::vector<MultiViewDataset> ApplySplit(const MultiViewDataset& data,
                                         const FederatedSplit& split);

inline constexpr std::uint32_t kIrisCrc32 = 0x7d4aaa7fu;
std::filesystem::path DefaultIrisPath();

// View 1 = features 1 and 3, view 2 = features 2 and 4; stratified 90/60.
std::pair<MultiViewDataset, FederatedSplit> LoadIrisTwoView(
    std::uint64_t seed, const std::filesystem::path& path = DefaultIrisPath());

std::uint32_t Crc32(const std::string& bytes);

// ---- validation ----

struct ClusterValidation {
  int view = 0;
  int cluster = 0;
  ShapeKind kind = ShapeKind::kCircle;
  std::size_t count = 0;
  bool count_ok = false;
  double hausdorff = 0.0;            // data -> template, directed
  double hausdorff_limit = 0.0;      // shape tolerance + 3 sigma
  double noiseless_hausdorff = 0.0;  // regenerated noiseless data -> template
};

struct ValidationReport {
  std::vector<ClusterValidation> clusters;
  double shape_tolerance = 0.1;
  std::size_t ks_samples = 0;
  double ks_statistic = 0.0;
  double ks_p_value = 1.0;
  double ks_alpha = 0.05;
  double cross_view_correlation = 0.0;  // mean |r| across view pairs, informational
  bool passed = false;
  bool regeneration_recommended = false;

  std::string ToText() const;
};

ValidationReport ValidateGenerated(const MultiViewDataset& data, const BenchmarkSpec& spec,
                                   double shape_tolerance = 0.1, double alpha = 0.05);

// max over points of the distance to the nearest template point.
double DirectedHausdorff(const Matrix& points, const Matrix& templ);

// One-sample KS statistic of values against U(0, 1).
double KsStatisticUniform(std::vector<double> values);

// Asymptotic Kolmogorov tail with Stephens' finite-n correction.
double KsPValue(double statistic, std::size_t n);

}  // namespace fedheat

#endif  // FEDHEAT_SYNTHGEN_HPP_
