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

#include "fedheat/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include <zlib.h>

#include "fedheat/error.hpp"

namespace fedheat {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTemplateSigmas = 5.0;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void Positive(double v, const char* what) {
  Require(v > 0.0 && std::isfinite(v), ErrorCode::kInvalidConfig,
          std::string(what) + " must be positive");
}

void NonNegative(double v, const char* what) {
  Require(v >= 0.0 && std::isfinite(v), ErrorCode::kInvalidConfig,
          std::string(what) + " must be >= 0");
}

std::array<double, 2> HeartOffset(double scale, double t) {
  const double s = std::sin(t);
  return {scale * 16.0 * s * s * s,
          scale * (13.0 * std::cos(t) - 5.0 * std::cos(2 * t) - 2.0 * std::cos(3 * t) -
                   std::cos(4 * t))};
}

// Grid points inside a predicate, spacing h, over the given box.
template <class Inside>
void FillRegion(std::vector<std::array<double, 2>>& out, double x0, double x1, double y0,
                double y1, double h, Inside inside) {
  for (double x = x0; x <= x1 + 1e-12; x += h) {
    for (double y = y0; y <= y1 + 1e-12; y += h) {
      if (inside(x, y)) out.push_back({x, y});
    }
  }
}

template <class Curve>
void FillCurve(std::vector<std::array<double, 2>>& out, double t0, double t1,
               std::size_t count, Curve curve) {
  for (std::size_t i = 0; i < count; ++i) {
    double t = t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(count - 1);
    out.push_back(curve(t));
  }
}

}  // namespace

const char* ShapeName(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::kCircle: return "circle";
    case ShapeKind::kEllipse: return "ellipse";
    case ShapeKind::kCrescent: return "crescent";
    case ShapeKind::kSCurve: return "scurve";
    case ShapeKind::kDiamond: return "diamond";
    case ShapeKind::kRing: return "ring";
    case ShapeKind::kCross: return "cross";
    case ShapeKind::kHeart: return "heart";
  }
  return "unknown";
}

ShapeKind ParseShapeName(const std::string& name) {
  for (int k = 0; k < 8; ++k) {
    if (name == ShapeName(static_cast<ShapeKind>(k))) return static_cast<ShapeKind>(k);
  }
  Fail(ErrorCode::kInvalidConfig, "unknown shape '" + name + "'");
}

NoiseModel ShapeSpec::noise_model() const {
  switch (kind()) {
    case ShapeKind::kCrescent:
    case ShapeKind::kSCurve:
    case ShapeKind::kDiamond:
      return NoiseModel::kRadial;
    default:
      return NoiseModel::kIsotropic;
  }
}

void ShapeSpec::Validate() const {
  Require(std::isfinite(center[0]) && std::isfinite(center[1]), ErrorCode::kInvalidConfig,
          "shape center must be finite");
  NonNegative(noise_sigma, "noise_sigma");
  std::visit(Overloaded{
                 [](const CircleParams& p) { Positive(p.radius, "circle radius"); },
                 [](const EllipseParams& p) {
                   Positive(p.semi_major, "ellipse semi_major");
                   Positive(p.semi_minor, "ellipse semi_minor");
                 },
                 [](const CrescentParams& p) {
                   Positive(p.outer_radius, "crescent outer_radius");
                   Positive(p.inner_radius, "crescent inner_radius");
                   Positive(p.half_angle, "crescent half_angle");
                   NonNegative(p.inner_shift, "crescent inner_shift");
                   NonNegative(p.angle_jitter, "crescent angle_jitter");
                 },
                 [](const SCurveParams& p) {
                   Positive(p.base_radius, "scurve base_radius");
                   NonNegative(p.amplitude, "scurve amplitude");
                   Positive(p.frequency, "scurve frequency");
                   NonNegative(p.angle_jitter, "scurve angle_jitter");
                 },
                 [](const DiamondParams& p) {
                   Positive(p.base_radius, "diamond base_radius");
                   NonNegative(p.amplitude, "diamond amplitude");
                   Positive(p.lobes, "diamond lobes");
                 },
                 [](const RingParams& p) {
                   Positive(p.inner_radius, "ring inner_radius");
                   Positive(p.outer_radius, "ring outer_radius");
                   Require(p.outer_radius > p.inner_radius, ErrorCode::kInvalidConfig,
                           "ring outer_radius must exceed inner_radius");
                 },
                 [](const CrossParams& p) {
                   Positive(p.half_length, "cross half_length");
                   Positive(p.bar_width, "cross bar_width");
                 },
                 [](const HeartParams& p) {
                   Positive(p.scale, "heart scale");
                   NonNegative(p.angle_jitter, "heart angle_jitter");
                 },
             },
             params);
}

ShapeSpec DefaultShape(ShapeKind kind, std::array<double, 2> center) {
  ShapeSpec s;
  s.center = center;
  switch (kind) {
    case ShapeKind::kCircle: s.params = CircleParams{}; break;
    case ShapeKind::kEllipse: s.params = EllipseParams{}; break;
    case ShapeKind::kCrescent: s.params = CrescentParams{}; s.noise_sigma = 0.1; break;
    case ShapeKind::kSCurve: s.params = SCurveParams{}; s.noise_sigma = 0.1; break;
    case ShapeKind::kDiamond: s.params = DiamondParams{}; s.noise_sigma = 0.1; break;
    case ShapeKind::kRing: s.params = RingParams{}; break;
    case ShapeKind::kCross: s.params = CrossParams{}; break;
    case ShapeKind::kHeart: s.params = HeartParams{}; s.noise_sigma = 0.1; break;
  }
  return s;
}

Matrix GenerateShape(std::size_t n, const ShapeSpec& spec, std::mt19937_64& rng) {
  Require(n >= 1, ErrorCode::kInvalidInput, "shape needs n >= 1");
  spec.Validate();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double cx = spec.center[0], cy = spec.center[1];
  const double sigma = spec.noise_sigma;
  const std::size_t first_half = (n + 1) / 2;
  Matrix out(n, 2);
  auto put = [&](std::size_t i, double x, double y) {
    out(i, 0) = x;
    out(i, 1) = y;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::visit(
        Overloaded{
            [&](const CircleParams& p) {
              double theta = 2 * kPi * unit(rng);
              double r = p.radius * std::sqrt(unit(rng));
              double nx = normal(rng), ny = normal(rng);
              put(i, cx + r * std::cos(theta) + sigma * nx,
                  cy + r * std::sin(theta) + sigma * ny);
            },
            [&](const EllipseParams& p) {
              double theta = 2 * kPi * unit(rng);
              double r = std::sqrt(unit(rng));
              double nx = normal(rng), ny = normal(rng);
              put(i, cx + p.semi_major * r * std::cos(theta) + sigma * nx,
                  cy + p.semi_minor * r * std::sin(theta) + sigma * ny);
            },
            [&](const CrescentParams& p) {
              const bool outer = i < first_half;
              double t = -p.half_angle + 2 * p.half_angle * unit(rng);
              t += p.angle_jitter * normal(rng);
              double r = (outer ? p.outer_radius : p.inner_radius) + sigma * normal(rng);
              double shift = outer ? 0.0 : p.inner_shift;
              put(i, cx + shift + r * std::cos(t), cy + r * std::sin(t));
            },
            [&](const SCurveParams& p) {
              double t = 2 * kPi * unit(rng);
              t += p.angle_jitter * normal(rng);
              double r = p.base_radius + p.amplitude * std::sin(p.frequency * t) +
                         sigma * normal(rng);
              put(i, cx + r * std::cos(t), cy + r * std::sin(t));
            },
            [&](const DiamondParams& p) {
              double theta = 2 * kPi * unit(rng);
              double r = p.base_radius + p.amplitude * std::abs(std::cos(p.lobes * theta)) +
                         sigma * normal(rng);
              put(i, cx + r * std::cos(theta), cy + r * std::sin(theta));
            },
            [&](const RingParams& p) {
              double theta = 2 * kPi * unit(rng);
              double r = p.inner_radius + (p.outer_radius - p.inner_radius) * unit(rng);
              double nx = normal(rng), ny = normal(rng);
              put(i, cx + r * std::cos(theta) + sigma * nx,
                  cy + r * std::sin(theta) + sigma * ny);
            },
            [&](const CrossParams& p) {
              double along = 2.0 * p.half_length * (unit(rng) - 0.5);
              double across = p.bar_width * normal(rng);
              double nx = normal(rng), ny = normal(rng);
              if (i < first_half) {
                put(i, cx + along + sigma * nx, cy + across + sigma * ny);
              } else {
                put(i, cx + across + sigma * nx, cy + along + sigma * ny);
              }
            },
            [&](const HeartParams& p) {
              double t = 2 * kPi * unit(rng);
              t += p.angle_jitter * normal(rng);
              double nx = normal(rng), ny = normal(rng);
              auto off = HeartOffset(p.scale, t);
              put(i, cx + off[0] + sigma * nx, cy + off[1] + sigma * ny);
            },
        },
        spec.params);
  }
  return out;
}

std::array<double, 2> HeartPoint(const ShapeSpec& spec, double t) {
  const auto* p = std::get_if<HeartParams>(&spec.params);
  Require(p != nullptr, ErrorCode::kInvalidInput, "HeartPoint needs a heart spec");
  auto off = HeartOffset(p->scale, t);
  return {spec.center[0] + off[0], spec.center[1] + off[1]};
}

Matrix ShapeTemplate(const ShapeSpec& spec) {
  spec.Validate();
  std::vector<std::array<double, 2>> pts;
  const double h = 0.02;
  const std::size_t curve_points = 4000;
  std::visit(
      Overloaded{
          [&](const CircleParams& p) {
            double r = p.radius;
            FillRegion(pts, -r, r, -r, r, h, [&](double x, double y) {
              return x * x + y * y <= r * r;
            });
            FillCurve(pts, 0, 2 * kPi, curve_points, [&](double t) {
              return std::array<double, 2>{r * std::cos(t), r * std::sin(t)};
            });
          },
          [&](const EllipseParams& p) {
            double a = p.semi_major, b = p.semi_minor;
            FillRegion(pts, -a, a, -b, b, h, [&](double x, double y) {
              return (x * x) / (a * a) + (y * y) / (b * b) <= 1.0;
            });
            FillCurve(pts, 0, 2 * kPi, curve_points, [&](double t) {
              return std::array<double, 2>{a * std::cos(t), b * std::sin(t)};
            });
          },
          [&](const CrescentParams& p) {
            double reach = p.half_angle + kTemplateSigmas * p.angle_jitter;
            FillCurve(pts, -reach, reach, curve_points, [&](double t) {
              return std::array<double, 2>{p.outer_radius * std::cos(t),
                                           p.outer_radius * std::sin(t)};
            });
            FillCurve(pts, -reach, reach, curve_points, [&](double t) {
              return std::array<double, 2>{p.inner_shift + p.inner_radius * std::cos(t),
                                           p.inner_radius * std::sin(t)};
            });
          },
          [&](const SCurveParams& p) {
            FillCurve(pts, 0, 2 * kPi, curve_points, [&](double t) {
              double r = p.base_radius + p.amplitude * std::sin(p.frequency * t);
              return std::array<double, 2>{r * std::cos(t), r * std::sin(t)};
            });
          },
          [&](const DiamondParams& p) {
            FillCurve(pts, 0, 2 * kPi, curve_points, [&](double t) {
              double r = p.base_radius + p.amplitude * std::abs(std::cos(p.lobes * t));
              return std::array<double, 2>{r * std::cos(t), r * std::sin(t)};
            });
          },
          [&](const RingParams& p) {
            double ro = p.outer_radius, ri = p.inner_radius;
            FillRegion(pts, -ro, ro, -ro, ro, h, [&](double x, double y) {
              double rr = x * x + y * y;
              return rr <= ro * ro && rr >= ri * ri;
            });
            FillCurve(pts, 0, 2 * kPi, curve_points, [&](double t) {
              return std::array<double, 2>{ro * std::cos(t), ro * std::sin(t)};
            });
            FillCurve(pts, 0, 2 * kPi, curve_points, [&](double t) {
              return std::array<double, 2>{ri * std::cos(t), ri * std::sin(t)};
            });
          },
          [&](const CrossParams& p) {
            double w = kTemplateSigmas * p.bar_width, l = p.half_length;
            FillRegion(pts, -l, l, -w, w, h, [](double, double) { return true; });
            FillRegion(pts, -w, w, -l, l, h, [](double, double) { return true; });
          },
          [&](const HeartParams& p) {
            FillCurve(pts, 0, 2 * kPi, curve_points,
                      [&](double t) { return HeartOffset(p.scale, t); });
          },
      },
      spec.params);
  Matrix out(pts.size(), 2);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out(i, 0) = spec.center[0] + pts[i][0];
    out(i, 1) = spec.center[1] + pts[i][1];
  }
  return out;
}

BenchmarkSpec DefaultBenchmark(std::size_t n_per_cluster, std::uint64_t seed) {
  BenchmarkSpec spec;
  spec.n_per_cluster = n_per_cluster;
  spec.seed = seed;
  spec.views = {
      {DefaultShape(ShapeKind::kCircle, {2, 2}), DefaultShape(ShapeKind::kEllipse, {8, 2}),
       DefaultShape(ShapeKind::kCrescent, {2, 8}), DefaultShape(ShapeKind::kSCurve, {8, 8})},
      {DefaultShape(ShapeKind::kDiamond, {2, 2}), DefaultShape(ShapeKind::kRing, {6, 6}),
       DefaultShape(ShapeKind::kCross, {6, -3}), DefaultShape(ShapeKind::kHeart, {-2, -2})},
  };
  return spec;
}

BenchmarkSpec SubsetClusters(const BenchmarkSpec& spec, const std::vector<int>& clusters) {
  Require(!clusters.empty(), ErrorCode::kInvalidConfig, "cluster subset is empty");
  BenchmarkSpec out = spec;
  for (std::size_t h = 0; h < spec.views.size(); ++h) {
    out.views[h].clear();
    for (int k : clusters) {
      Require(k >= 0 && static_cast<std::size_t>(k) < spec.views[h].size(),
              ErrorCode::kInvalidConfig, "cluster subset index out of range");
      out.views[h].push_back(spec.views[h][k]);
    }
  }
  return out;
}

MultiViewDataset AssembleBenchmark(const BenchmarkSpec& spec) {
  Require(!spec.views.empty(), ErrorCode::kInvalidConfig, "benchmark has no views");
  Require(spec.n_per_cluster >= 1, ErrorCode::kInvalidConfig, "n_per_cluster must be >= 1");
  const std::size_t c = spec.clusters();
  for (const auto& v : spec.views) {
    Require(v.size() == c, ErrorCode::kInvalidConfig, "views disagree on cluster count");
  }
  const std::size_t n = c * spec.n_per_cluster;
  MultiViewDataset data;
  data.clusters = static_cast<int>(c);
  for (std::size_t h = 0; h < spec.views.size(); ++h) {
    Matrix view(n, 2);
    for (std::size_t k = 0; k < c; ++k) {
      std::mt19937_64 rng(DeriveSeed(spec.seed, h + 1, k + 1));
      Matrix part = GenerateShape(spec.n_per_cluster, spec.views[h][k], rng);
      for (std::size_t i = 0; i < spec.n_per_cluster; ++i) {
        view(k * spec.n_per_cluster + i, 0) = part(i, 0);
        view(k * spec.n_per_cluster + i, 1) = part(i, 1);
      }
    }
    data.views.push_back(std::move(view));
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<int>(i / spec.n_per_cluster);
  data.labels = std::move(labels);
  return data;
}

FederatedSplit PartitionFederated(const MultiViewDataset& data,
                                  const std::vector<double>& fractions,
                                  std::uint64_t seed) {
  Require(!fractions.empty(), ErrorCode::kInvalidConfig, "no client fractions");
  double total = 0.0;
  for (double f : fractions) {
    Require(f > 0.0 && f <= 1.0, ErrorCode::kInvalidConfig,
            "client fractions must lie in (0, 1]");
    total += f;
  }
  Require(std::abs(total - 1.0) < 1e-9, ErrorCode::kInvalidConfig,
          "client fractions must sum to 1");
  const std::size_t n = data.samples();
  std::vector<int> strata(n, 0);
  if (data.labels) strata = *data.labels;
  std::vector<int> keys(strata);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());

  FederatedSplit split;
  split.fractions = fractions;
  split.clients.resize(fractions.size());
  std::mt19937_64 rng(seed);
  for (int key : keys) {
    std::vector<std::size_t> group;
    for (std::size_t i = 0; i < n; ++i) {
      if (strata[i] == key) group.push_back(i);
    }
    std::shuffle(group.begin(), group.end(), rng);
    const double g = static_cast<double>(group.size());
    std::vector<std::size_t> counts(fractions.size());
    std::vector<std::pair<double, std::size_t>> remainders;
    std::size_t assigned = 0;
    for (std::size_t l = 0; l < fractions.size(); ++l) {
      double quota = g * fractions[l];
      counts[l] = static_cast<std::size_t>(std::floor(quota + 1e-9));
      assigned += counts[l];
      remainders.push_back({quota - static_cast<double>(counts[l]), l});
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t r = 0; assigned < group.size(); ++r, ++assigned) {
      counts[remainders[r % remainders.size()].second]++;
    }
    std::size_t pos = 0;
    for (std::size_t l = 0; l < fractions.size(); ++l) {
      for (std::size_t q = 0; q < counts[l]; ++q) split.clients[l].push_back(group[pos++]);
    }
  }
  for (auto& idx : split.clients) std::sort(idx.begin(), idx.end());
  return split;
}

std::vector<MultiViewDataset> ApplySplit(const MultiViewDataset& data,
                                         const FederatedSplit& split) {
  std::vector<MultiViewDataset> out;
  for (const auto& idx : split.clients) out.push_back(SubsetRows(data, idx));
  return out;
}

std::uint32_t Crc32(const std::string& bytes) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()),
              static_cast<uInt>(bytes.size()));
  return static_cast<std::uint32_t>(crc);
}

std::filesystem::path DefaultIrisPath() {
  if (const char* env = std::getenv("FEDHEAT_DATA_DIR")) {
    return std::filesystem::path(env) / "iris.csv";
  }
  return std::filesystem::path(FEDHEAT_DATA_DIR) / "iris.csv";
}

std::pair<MultiViewDataset, FederatedSplit> LoadIrisTwoView(
    std::uint64_t seed, const std::filesystem::path& path) {
  const std::string bytes = ReadFile(path);
  const std::uint32_t crc = Crc32(bytes);
  if (crc != kIrisCrc32) {
    std::ostringstream msg;
    msg << "iris table " << path.string() << " failed its checksum (crc32 0x" << std::hex
        << crc << ", expected 0x" << kIrisCrc32 << ")";
    Fail(ErrorCode::kIo, msg.str());
  }
  Matrix table = ReadCsvMatrix(path);
  Require(table.rows() == 150 && table.cols() == 5, ErrorCode::kIo,
          "iris table must be 150 x 5");
  MultiViewDataset data;
  data.clusters = 3;
  data.views = {Matrix(150, 2), Matrix(150, 2)};
  std::vector<int> labels(150);
  for (std::size_t i = 0; i < 150; ++i) {
    data.views[0](i, 0) = table(i, 0);
    data.views[0](i, 1) = table(i, 2);
    data.views[1](i, 0) = table(i, 1);
    data.views[1](i, 1) = table(i, 3);
    labels[i] = static_cast<int>(table(i, 4));
  }
  data.labels = std::move(labels);
  FederatedSplit split = PartitionFederated(data, {0.6, 0.4}, seed);
  return {std::move(data), std::move(split)};
}

}  // namespace fedheat
