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
#include <functional>
#include <initializer_list>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"
#include <yaml-cpp/yaml.h>

#include "fedheat/error.hpp"
#include "fedheat/experiment.hpp"

namespace fedheat {
namespace {

namespace fs = std::filesystem;

template <typename E>
struct EnumName {
  E value;
  const char* name;
};

constexpr EnumName<InitMethod> kInitNames[] = {{InitMethod::kKMeansPlusPlus, "kmeans++"},
                                               {InitMethod::kRandom, "random"}};
constexpr EnumName<HkcEstimator> kHkcNames[] = {{HkcEstimator::kMinMax, "minmax"},
                                                {HkcEstimator::kMeanDeviation, "meandev"}};
constexpr EnumName<DistanceKind> kDistanceNames[] = {
    {DistanceKind::kHeatKernel, "heat_kernel"},
    {DistanceKind::kSquaredEuclidean, "squared_euclidean"}};
constexpr EnumName<Aggregation> kAggregationNames[] = {{Aggregation::kWeighted, "weighted"},
                                                       {Aggregation::kMedian, "median"},
                                                       {Aggregation::kFedAvg, "fedavg"}};
constexpr EnumName<ClientWeighting> kWeightingNames[] = {
    {ClientWeighting::kBySamples, "samples"}, {ClientWeighting::kByQuality, "quality"}};
constexpr EnumName<Personalization> kPersonalizationNames[] = {
    {Personalization::kAdaptive, "adaptive"}, {Personalization::kStatic, "static"}};
constexpr EnumName<BudgetScheduleKind> kScheduleNames[] = {
    {BudgetScheduleKind::kDecaying, "decaying"}, {BudgetScheduleKind::kUniform, "uniform"}};
constexpr EnumName<SensitivityScaling> kScalingNames[] = {
    {SensitivityScaling::kNone, "none"},
    {SensitivityScaling::kInverseSampleCount, "inverse_n"}};
constexpr EnumName<DataSource> kSourceNames[] = {{DataSource::kSynthetic, "synthetic"},
                                                 {DataSource::kDirectory, "directory"},
                                                 {DataSource::kIris, "iris"}};

template <typename E, std::size_t N>
const char* NameOf(const EnumName<E> (&table)[N], E value) {
  for (const auto& e : table) {
    if (e.value == value) return e.name;
  }
  return "?";
}

// Named geometric parameters of a shape, pointing into its variant.
std::vector<std::pair<const char*, double*>> ShapeFields(ShapeSpec& spec) {
  return std::visit(
      [](auto& p) -> std::vector<std::pair<const char*, double*>> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, CircleParams>) {
          return {{"radius", &p.radius}};
        } else if constexpr (std::is_same_v<T, EllipseParams>) {
          return {{"semi_major", &p.semi_major}, {"semi_minor", &p.semi_minor}};
        } else if constexpr (std::is_same_v<T, CrescentParams>) {
          return {{"outer_radius", &p.outer_radius}, {"inner_radius", &p.inner_radius},
                  {"inner_shift", &p.inner_shift},   {"half_angle", &p.half_angle},
                  {"angle_jitter", &p.angle_jitter}};
        } else if constexpr (std::is_same_v<T, SCurveParams>) {
          return {{"base_radius", &p.base_radius}, {"amplitude", &p.amplitude},
                  {"frequency", &p.frequency},     {"angle_jitter", &p.angle_jitter}};
        } else if constexpr (std::is_same_v<T, DiamondParams>) {
          return {{"base_radius", &p.base_radius}, {"amplitude", &p.amplitude},
                  {"lobes", &p.lobes}};
        } else if constexpr (std::is_same_v<T, RingParams>) {
          return {{"inner_radius", &p.inner_radius}, {"outer_radius", &p.outer_radius}};
        } else if constexpr (std::is_same_v<T, CrossParams>) {
          return {{"half_length", &p.half_length}, {"bar_width", &p.bar_width}};
        } else {
          return {{"scale", &p.scale}, {"angle_jitter", &p.angle_jitter}};
        }
      },
      spec.params);
}

class Reader {
 public:
  explicit Reader(std::string origin) : origin_(std::move(origin)) {}

  [[noreturn]] void Fail(const YAML::Node& node, const std::string& message) const {
    std::string where = origin_;
    if (node.Mark().line >= 0) where += ":" + std::to_string(node.Mark().line + 1);
    fedheat::Fail(ErrorCode::kInvalidConfig, where + ": " + message);
  }

  void ExpectMap(const YAML::Node& node, const std::string& path) const {
    if (!node.IsMap()) Fail(node, path + ": expected a mapping");
  }

  void CheckKeys(const YAML::Node& node, const std::string& path,
                 std::initializer_list<const char*> allowed) const {
    ExpectMap(node, path);
    std::set<std::string> names(allowed.begin(), allowed.end());
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!names.contains(key)) {
        Fail(kv.first, "unknown key '" + (path.empty() ? key : path + "." + key) + "'");
      }
    }
  }

  double Real(const YAML::Node& node, const std::string& path,
              const std::function<bool(double)>& ok = {},
              const std::string& requirement = "") const {
    if (!node.IsScalar()) Fail(node, path + ": expected a number");
    double v = 0.0;
    try {
      v = ParseDouble(node.Scalar());
    } catch (const Error&) {
      Fail(node, path + ": expected a number, got '" + node.Scalar() + "'");
    }
    if (!std::isfinite(v)) Fail(node, path + ": must be finite");
    if (ok && !ok(v)) Fail(node, path + ": " + requirement);
    return v;
  }

  long long Integer(const YAML::Node& node, const std::string& path, long long min) const {
    long long v = 0;
    if (!node.IsScalar() || !YAML::convert<long long>::decode(node, v)) {
      Fail(node, path + ": expected an integer");
    }
    if (v < min) Fail(node, path + ": must be >= " + std::to_string(min));
    return v;
  }

  std::uint64_t Unsigned(const YAML::Node& node, const std::string& path) const {
    std::uint64_t v = 0;
    if (!node.IsScalar() || node.Scalar().starts_with("-") ||
        !YAML::convert<std::uint64_t>::decode(node, v)) {
      Fail(node, path + ": expected a non-negative integer");
    }
    return v;
  }

  bool Bool(const YAML::Node& node, const std::string& path) const {
    bool v = false;
    if (!node.IsScalar() || !YAML::convert<bool>::decode(node, v)) {
      Fail(node, path + ": expected true or false");
    }
    return v;
  }

  std::string String(const YAML::Node& node, const std::string& path) const {
    if (!node.IsScalar()) Fail(node, path + ": expected a string");
    return node.Scalar();
  }

  template <typename E, std::size_t N>
  E Enum(const YAML::Node& node, const std::string& path,
         const EnumName<E> (&table)[N]) const {
    const std::string v = String(node, path);
    std::string options;
    for (const auto& e : table) {
      if (v == e.name) return e.value;
      options += options.empty() ? "" : ", ";
      options += e.name;
    }
    Fail(node, path + ": unknown value '" + v + "' (expected one of " + options + ")");
  }

  std::vector<double> Reals(const YAML::Node& node, const std::string& path) const {
    if (!node.IsSequence()) Fail(node, path + ": expected a list of numbers");
    std::vector<double> out;
    for (const auto& item : node) out.push_back(Real(item, path));
    return out;
  }

  fs::path Path(const YAML::Node& node, const std::string& path, const fs::path& base) const {
    fs::path p = String(node, path);
    if (p.empty()) return p;
    return p.is_absolute() ? p : (base / p).lexically_normal();
  }

  // Runs check(), re-raising its kInvalidConfig message with node's location.
  void Checked(const YAML::Node& node, const std::string& path,
               const std::function<void()>& check) const {
    try {
      check();
    } catch (const Error& e) {
      Fail(node, path + ": " + e.what());
    }
  }

 private:
  std::string origin_;
};

auto Positive = [](double v) { return v > 0.0; };
auto Unit = [](double v) { return v >= 0.0 && v <= 1.0; };

void ParseExperiment(const Reader& r, const YAML::Node& sec, ExperimentConfig& c) {
  r.CheckKeys(sec, "experiment", {"seed", "repetitions", "output"});
  if (auto n = sec["seed"]) c.seed = r.Unsigned(n, "experiment.seed");
  if (auto n = sec["repetitions"]) {
    c.repetitions = static_cast<int>(r.Integer(n, "experiment.repetitions", 1));
  }
  if (auto n = sec["output"]) c.output = r.String(n, "experiment.output");
}

void ParseShapes(const Reader& r, const YAML::Node& sec, ExperimentConfig& c) {
  r.ExpectMap(sec, "data.shapes");
  for (const auto& kv : sec) {
    const std::string name = kv.first.as<std::string>();
    const std::string path = "data.shapes." + name;
    ShapeKind kind{};
    try {
      kind = ParseShapeName(name);
    } catch (const Error&) {
      r.Fail(kv.first, "unknown shape '" + name + "'");
    }
    ShapeSpec spec = DefaultShape(kind, {0.0, 0.0});
    bool center_given = false;
    const YAML::Node& body = kv.second;
    r.ExpectMap(body, path);
    auto fields = ShapeFields(spec);
    for (const auto& entry : body) {
      const std::string key = entry.first.as<std::string>();
      if (key == "center") {
        const auto xy = r.Reals(entry.second, path + ".center");
        if (xy.size() != 2) r.Fail(entry.second, path + ".center: expected [x, y]");
        spec.center = {xy[0], xy[1]};
        center_given = true;
      } else if (key == "noise") {
        spec.noise_sigma = r.Real(entry.second, path + ".noise");
      } else {
        auto it = std::find_if(fields.begin(), fields.end(),
                               [&](const auto& f) { return key == f.first; });
        if (it == fields.end()) r.Fail(entry.first, "unknown key '" + path + "." + key + "'");
        *it->second = r.Real(entry.second, path + "." + key);
      }
    }
    if (!center_given) {
      // Keep the benchmark position of this shape.
      for (const auto& view : DefaultBenchmark(1, 0).views) {
        for (const auto& s : view) {
          if (s.kind() == kind) spec.center = s.center;
        }
      }
    }
    r.Checked(body, path, [&] { spec.Validate(); });
    c.data.shapes[name] = spec;
  }
}

void ParseData(const Reader& r, const YAML::Node& sec, const fs::path& base,
               ExperimentConfig& c) {
  r.CheckKeys(sec, "data", {"source", "path", "n_per_cluster", "subset", "shapes",
                            "shape_tolerance", "ks_alpha"});
  if (auto n = sec["source"]) c.data.source = r.Enum(n, "data.source", kSourceNames);
  if (auto n = sec["path"]) c.data.path = r.Path(n, "data.path", base);
  if (auto n = sec["n_per_cluster"]) {
    c.data.n_per_cluster = static_cast<std::size_t>(r.Integer(n, "data.n_per_cluster", 1));
  }
  if (auto n = sec["subset"]) {
    if (!n.IsSequence()) r.Fail(n, "data.subset: expected a list of cluster indices");
    c.data.subset.clear();
    for (const auto& item : n) {
      const auto k = r.Integer(item, "data.subset", 0);
      if (k > 3) r.Fail(item, "data.subset: benchmark clusters are 0..3");
      c.data.subset.push_back(static_cast<int>(k));
    }
    if (c.data.subset.empty()) r.Fail(n, "data.subset: must not be empty");
  }
  if (auto n = sec["shapes"]) ParseShapes(r, n, c);
  if (auto n = sec["shape_tolerance"]) {
    c.data.shape_tolerance = r.Real(n, "data.shape_tolerance", Positive, "must be > 0");
  }
  if (auto n = sec["ks_alpha"]) {
    c.data.ks_alpha = r.Real(n, "data.ks_alpha", [](double v) { return v > 0 && v < 1; },
                             "must lie in (0, 1)");
  }
  if (c.data.source == DataSource::kDirectory && c.data.path.empty()) {
    r.Fail(sec, "data.path: required when data.source is directory");
  }
}

void ParseCluster(const Reader& r, const YAML::Node& sec, ExperimentConfig& c) {
  r.CheckKeys(sec, "cluster", {"clusters", "m", "alpha", "epsilon", "max_iterations", "init",
                               "hkc", "hkc_eps", "recompute_hkc_per_iter", "restarts",
                               "distance"});
  ClusterConfig& k = c.cluster;
  if (auto n = sec["clusters"]) {
    k.clusters = static_cast<int>(r.Integer(n, "cluster.clusters", 1));
    c.clusters_given = true;
  }
  if (auto n = sec["m"]) {
    k.fuzzifier = r.Real(n, "cluster.m", [](double v) { return v > 1.0; }, "m must be > 1");
  }
  if (auto n = sec["alpha"]) {
    k.view_exponent =
        r.Real(n, "cluster.alpha", [](double v) { return v > 1.0; }, "alpha must be > 1");
  }
  if (auto n = sec["epsilon"]) k.epsilon = r.Real(n, "cluster.epsilon", Positive, "must be > 0");
  if (auto n = sec["max_iterations"]) {
    k.max_iterations = static_cast<int>(r.Integer(n, "cluster.max_iterations", 1));
  }
  if (auto n = sec["init"]) k.init = r.Enum(n, "cluster.init", kInitNames);
  if (auto n = sec["hkc"]) k.hkc = r.Enum(n, "cluster.hkc", kHkcNames);
  if (auto n = sec["hkc_eps"]) k.hkc_eps = r.Real(n, "cluster.hkc_eps", Positive, "must be > 0");
  if (auto n = sec["recompute_hkc_per_iter"]) {
    k.recompute_hkc_per_iter = r.Bool(n, "cluster.recompute_hkc_per_iter");
  }
  if (auto n = sec["restarts"]) k.restarts = static_cast<int>(r.Integer(n, "cluster.restarts", 1));
  if (auto n = sec["distance"]) k.distance = r.Enum(n, "cluster.distance", kDistanceNames);
}

void ParseFederation(const Reader& r, const YAML::Node& sec, ExperimentConfig& c) {
  r.CheckKeys(sec, "federation",
              {"fractions", "rounds", "local_iterations", "aggregation", "weighting",
               "epsilon_conv", "gamma", "rho", "personalization", "certify", "eta_min",
               "xi_min"});
  FedConfig& f = c.federation;
  if (auto n = sec["fractions"]) {
    c.fractions = r.Reals(n, "federation.fractions");
    double sum = 0.0;
    for (double v : c.fractions) {
      if (v <= 0.0) r.Fail(n, "federation.fractions: every fraction must be > 0");
      sum += v;
    }
    if (c.fractions.empty() || std::abs(sum - 1.0) > 1e-9) {
      r.Fail(n, "federation.fractions: must sum to 1");
    }
  }
  if (auto n = sec["rounds"]) f.rounds = static_cast<int>(r.Integer(n, "federation.rounds", 1));
  if (auto n = sec["local_iterations"]) {
    f.local_iterations = static_cast<int>(r.Integer(n, "federation.local_iterations", 1));
  }
  if (auto n = sec["aggregation"]) {
    f.aggregation = r.Enum(n, "federation.aggregation", kAggregationNames);
  }
  if (auto n = sec["weighting"]) f.weighting = r.Enum(n, "federation.weighting", kWeightingNames);
  if (auto n = sec["epsilon_conv"]) {
    f.epsilon_conv = r.Real(n, "federation.epsilon_conv", [](double v) { return v >= 0; },
                            "must be >= 0");
  }
  if (auto n = sec["gamma"]) f.gamma = r.Real(n, "federation.gamma", Unit, "must lie in [0, 1]");
  if (auto n = sec["rho"]) f.rho = r.Real(n, "federation.rho", Unit, "must lie in [0, 1]");
  if (auto n = sec["personalization"]) {
    f.personalization = r.Enum(n, "federation.personalization", kPersonalizationNames);
  }
  if (auto n = sec["certify"]) c.certify = r.Bool(n, "federation.certify");
  if (auto n = sec["eta_min"]) {
    c.certification.eta_min = r.Real(n, "federation.eta_min", Unit, "must lie in [0, 1]");
  }
  if (auto n = sec["xi_min"]) {
    c.certification.xi_min = r.Real(n, "federation.xi_min",
                                    [](double v) { return v >= -1.0 && v <= 1.0; },
                                    "must lie in [-1, 1]");
  }
}

void ParsePrivacy(const Reader& r, const YAML::Node& sec, ExperimentConfig& c) {
  r.CheckKeys(sec, "privacy", {"enabled", "epsilon_total", "delta", "sensitivity",
                               "sensitivity_scaling", "schedule", "secure_aggregation",
                               "fixed_point_scale"});
  PrivacyConfig& p = c.privacy;
  if (auto n = sec["enabled"]) p.enabled = r.Bool(n, "privacy.enabled");
  if (auto n = sec["epsilon_total"]) {
    p.epsilon_total = r.Real(n, "privacy.epsilon_total", Positive, "must be > 0");
  }
  if (auto n = sec["delta"]) {
    p.delta = r.Real(n, "privacy.delta", [](double v) { return v > 0 && v < 1; },
                     "must lie in (0, 1)");
  }
  if (auto n = sec["sensitivity"]) {
    p.sensitivity = r.Real(n, "privacy.sensitivity", Positive, "must be > 0");
  }
  if (auto n = sec["sensitivity_scaling"]) {
    p.sensitivity_scaling = r.Enum(n, "privacy.sensitivity_scaling", kScalingNames);
  }
  if (auto n = sec["schedule"]) p.schedule = r.Enum(n, "privacy.schedule", kScheduleNames);
  if (auto n = sec["secure_aggregation"]) {
    p.secure_aggregation = r.Bool(n, "privacy.secure_aggregation");
  }
  if (auto n = sec["fixed_point_scale"]) {
    p.fixed_point_scale = r.Unsigned(n, "privacy.fixed_point_scale");
    r.Checked(n, "privacy.fixed_point_scale", [&] { p.Validate(); });
  }
}

void ParseEvaluate(const Reader& r, const YAML::Node& sec, const fs::path& base,
                   ExperimentConfig& c) {
  r.CheckKeys(sec, "evaluate", {"predictions", "labels", "dataset"});
  if (auto n = sec["predictions"]) c.evaluate.predictions = r.Path(n, "evaluate.predictions", base);
  if (auto n = sec["labels"]) c.evaluate.labels = r.Path(n, "evaluate.labels", base);
  if (auto n = sec["dataset"]) c.evaluate.dataset = r.Path(n, "evaluate.dataset", base);
}

std::string EmbeddedConfig(const std::string& text, const fs::path& path) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      Fail(ErrorCode::kInvalidConfig, path.string() + ": not a report file: " + e.what());
    }
    if (record.value("record", "") == "config") return record.at("text").get<std::string>();
  }
  Fail(ErrorCode::kInvalidConfig, path.string() + ": report has no config record");
}

}  // namespace

const char* RunKindName(RunKind kind) {
  switch (kind) {
    case RunKind::kGenerate: return "generate";
    case RunKind::kCluster: return "cluster";
    case RunKind::kFedRun: return "fedrun";
    case RunKind::kEvaluate: return "evaluate";
    case RunKind::kAblate: return "ablate";
  }
  return "unknown";
}

RunKind ParseRunKind(const std::string& name) {
  for (RunKind k : {RunKind::kGenerate, RunKind::kCluster, RunKind::kFedRun,
                    RunKind::kEvaluate, RunKind::kAblate}) {
    if (name == RunKindName(k)) return k;
  }
  Fail(ErrorCode::kInvalidConfig, "unknown command '" + name + "'");
}

void ExperimentConfig::Validate() const {
  Require(repetitions >= 1, ErrorCode::kInvalidConfig, "repetitions must be >= 1");
  cluster.Validate();
  privacy.Validate();
  FedConfig fed = federation;
  fed.cluster = cluster;
  fed.privacy = privacy;
  fed.Validate();
  for (const auto& [name, spec] : data.shapes) spec.Validate();
}

ExperimentConfig ParseConfigText(const std::string& text, const std::string& origin,
                                 const fs::path& base_dir) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    Fail(ErrorCode::kInvalidConfig,
         origin + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  Reader r(origin);
  ExperimentConfig c;
  if (root.IsNull()) return c;
  r.CheckKeys(root, "", {"experiment", "data", "cluster", "federation", "privacy", "evaluate"});
  if (auto n = root["experiment"]) ParseExperiment(r, n, c);
  if (auto n = root["data"]) ParseData(r, n, base_dir, c);
  if (auto n = root["cluster"]) ParseCluster(r, n, c);
  if (auto n = root["federation"]) ParseFederation(r, n, c);
  if (auto n = root["privacy"]) ParsePrivacy(r, n, c);
  if (auto n = root["evaluate"]) ParseEvaluate(r, n, base_dir, c);
  try {
    c.Validate();
  } catch (const Error& e) {
    Fail(ErrorCode::kInvalidConfig, origin + ": " + e.what());
  }
  return c;
}

ExperimentConfig ParseConfigFile(const fs::path& path) {
  Require(fs::is_regular_file(path), ErrorCode::kIo,
          "config file not found: " + path.string());
  const std::string text = ReadFile(path);
  const fs::path base = fs::absolute(path).parent_path();
  if (path.extension() == ".jsonl") {
    return ParseConfigText(EmbeddedConfig(text, path), path.string() + "[config]", base);
  }
  return ParseConfigText(text, path.string(), base);
}

std::string CanonicalConfig(const ExperimentConfig& c) {
  YAML::Emitter out;
  auto num = [](double v) { return FormatDouble(v); };
  auto nums = [&](const std::vector<double>& v) {
    std::vector<std::string> s;
    for (double x : v) s.push_back(num(x));
    return s;
  };
  out << YAML::BeginMap;
  out << YAML::Key << "experiment" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "seed" << YAML::Value << c.seed;
  out << YAML::Key << "repetitions" << YAML::Value << c.repetitions;
  out << YAML::EndMap;

  out << YAML::Key << "data" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "source" << YAML::Value << NameOf(kSourceNames, c.data.source);
  out << YAML::Key << "path" << YAML::Value << YAML::DoubleQuoted << c.data.path.string();
  out << YAML::Key << "n_per_cluster" << YAML::Value << c.data.n_per_cluster;
  if (!c.data.subset.empty()) {
    out << YAML::Key << "subset" << YAML::Value << YAML::Flow << c.data.subset;
  }
  if (!c.data.shapes.empty()) {
    out << YAML::Key << "shapes" << YAML::Value << YAML::BeginMap;
    for (auto [name, spec] : c.data.shapes) {
      out << YAML::Key << name << YAML::Value << YAML::BeginMap;
      out << YAML::Key << "center" << YAML::Value << YAML::Flow
          << nums({spec.center[0], spec.center[1]});
      out << YAML::Key << "noise" << YAML::Value << num(spec.noise_sigma);
      for (auto [key, ptr] : ShapeFields(spec)) out << YAML::Key << key << YAML::Value << num(*ptr);
      out << YAML::EndMap;
    }
    out << YAML::EndMap;
  }
  out << YAML::Key << "shape_tolerance" << YAML::Value << num(c.data.shape_tolerance);
  out << YAML::Key << "ks_alpha" << YAML::Value << num(c.data.ks_alpha);
  out << YAML::EndMap;

  const ClusterConfig& k = c.cluster;
  out << YAML::Key << "cluster" << YAML::Value << YAML::BeginMap;
  if (c.clusters_given) out << YAML::Key << "clusters" << YAML::Value << k.clusters;
  out << YAML::Key << "m" << YAML::Value << num(k.fuzzifier);
  out << YAML::Key << "alpha" << YAML::Value << num(k.view_exponent);
  out << YAML::Key << "epsilon" << YAML::Value << num(k.epsilon);
  out << YAML::Key << "max_iterations" << YAML::Value << k.max_iterations;
  out << YAML::Key << "init" << YAML::Value << NameOf(kInitNames, k.init);
  out << YAML::Key << "hkc" << YAML::Value << NameOf(kHkcNames, k.hkc);
  out << YAML::Key << "hkc_eps" << YAML::Value << num(k.hkc_eps);
  out << YAML::Key << "recompute_hkc_per_iter" << YAML::Value << k.recompute_hkc_per_iter;
  out << YAML::Key << "restarts" << YAML::Value << k.restarts;
  out << YAML::Key << "distance" << YAML::Value << NameOf(kDistanceNames, k.distance);
  out << YAML::EndMap;

  const FedConfig& f = c.federation;
  out << YAML::Key << "federation" << YAML::Value << YAML::BeginMap;
  if (!c.fractions.empty()) {
    out << YAML::Key << "fractions" << YAML::Value << YAML::Flow << nums(c.fractions);
  }
  out << YAML::Key << "rounds" << YAML::Value << f.rounds;
  out << YAML::Key << "local_iterations" << YAML::Value << f.local_iterations;
  out << YAML::Key << "aggregation" << YAML::Value << NameOf(kAggregationNames, f.aggregation);
  out << YAML::Key << "weighting" << YAML::Value << NameOf(kWeightingNames, f.weighting);
  out << YAML::Key << "epsilon_conv" << YAML::Value << num(f.epsilon_conv);
  out << YAML::Key << "gamma" << YAML::Value << num(f.gamma);
  out << YAML::Key << "rho" << YAML::Value << num(f.rho);
  out << YAML::Key << "personalization" << YAML::Value
      << NameOf(kPersonalizationNames, f.personalization);
  out << YAML::Key << "certify" << YAML::Value << c.certify;
  out << YAML::Key << "eta_min" << YAML::Value << num(c.certification.eta_min);
  out << YAML::Key << "xi_min" << YAML::Value << num(c.certification.xi_min);
  out << YAML::EndMap;

  const PrivacyConfig& p = c.privacy;
  out << YAML::Key << "privacy" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "enabled" << YAML::Value << p.enabled;
  out << YAML::Key << "epsilon_total" << YAML::Value << num(p.epsilon_total);
  out << YAML::Key << "delta" << YAML::Value << num(p.delta);
  out << YAML::Key << "sensitivity" << YAML::Value << num(p.sensitivity);
  out << YAML::Key << "sensitivity_scaling" << YAML::Value
      << NameOf(kScalingNames, p.sensitivity_scaling);
  out << YAML::Key << "schedule" << YAML::Value << NameOf(kScheduleNames, p.schedule);
  out << YAML::Key << "secure_aggregation" << YAML::Value << p.secure_aggregation;
  out << YAML::Key << "fixed_point_scale" << YAML::Value << p.fixed_point_scale;
  out << YAML::EndMap;

  out << YAML::Key << "evaluate" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "predictions" << YAML::Value << YAML::DoubleQuoted
      << c.evaluate.predictions.string();
  out << YAML::Key << "labels" << YAML::Value << YAML::DoubleQuoted << c.evaluate.labels.string();
  out << YAML::Key << "dataset" << YAML::Value << YAML::DoubleQuoted
      << c.evaluate.dataset.string();
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace fedheat
