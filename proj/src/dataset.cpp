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

#include "fedheat/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "fedheat/error.hpp"

namespace fedheat {
namespace {

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos
                                         ? std::string_view::npos
                                         : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

std::vector<std::size_t> MultiViewDataset::dims() const {
  std::vector<std::size_t> d;
  for (const Matrix& v : views) d.push_back(v.cols());
  return d;
}

void MultiViewDataset::Validate() const {
  Require(!views.empty(), ErrorCode::kShape, "dataset has no views");
  std::size_t n = views.front().rows();
  Require(n >= 1, ErrorCode::kShape, "dataset has no samples");
  for (std::size_t h = 0; h < views.size(); ++h) {
    Require(views[h].rows() == n, ErrorCode::kShape,
            "view " + std::to_string(h + 1) + " has " +
                std::to_string(views[h].rows()) + " rows, expected " +
                std::to_string(n));
    Require(views[h].cols() >= 1, ErrorCode::kShape,
            "view " + std::to_string(h + 1) + " has no features");
    Require(AllFinite(views[h]), ErrorCode::kInvalidInput,
            "view " + std::to_string(h + 1) + " contains non-finite values");
  }
  if (labels) {
    Require(labels->size() == n, ErrorCode::kShape,
            "label count does not match sample count");
  }
}

MultiViewDataset SubsetRows(const MultiViewDataset& data,
                            std::span<const std::size_t> rows) {
  MultiViewDataset out;
  out.clusters = data.clusters;
  for (const Matrix& v : data.views) out.views.push_back(SelectRows(v, rows));
  if (data.labels) {
    std::vector<int> l;
    l.reserve(rows.size());
    for (std::size_t r : rows) l.push_back(data.labels->at(r));
    out.labels = std::move(l);
  }
  return out;
}

Matrix Concatenate(const MultiViewDataset& data) {
  return ConcatColumns(data.views);
}

std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ b);
}

std::string FormatDouble(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseDouble(std::string_view text) {
  text = Trim(text);
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    // from_chars rejects "nan"/"inf" spellings produced by other tools; those
    // are still non-finite, which callers reject separately.
    if (text == "nan" || text == "NaN") return std::nan("");
    Fail(ErrorCode::kInvalidInput, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFile(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIo, "cannot write " + path.string());
  out << contents;
  if (!out) Fail(ErrorCode::kIo, "write failed for " + path.string());
}

Matrix ReadCsvMatrix(const std::filesystem::path& path) {
  std::vector<std::string> lines = Lines(ReadFile(path));
  std::vector<std::vector<double>> rows;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::vector<double> row;
    for (std::string_view f : SplitFields(lines[li])) {
      try {
        row.push_back(ParseDouble(f));
      } catch (const Error& e) {
        Fail(ErrorCode::kInvalidInput,
             path.string() + ":" + std::to_string(li + 1) + ": " + e.what());
      }
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      Fail(ErrorCode::kShape,
           path.string() + ":" + std::to_string(li + 1) + ": expected " +
               std::to_string(rows.front().size()) + " columns");
    }
    rows.push_back(std::move(row));
  }
  return Matrix::FromRows(rows);
}

void WriteCsvMatrix(const std::filesystem::path& path, const Matrix& m) {
  std::string out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += FormatDouble(m(i, j));
    }
    out += '\n';
  }
  WriteFile(path, out);
}

std::vector<int> ReadLabels(const std::filesystem::path& path) {
  std::vector<int> labels;
  std::vector<std::string> lines = Lines(ReadFile(path));
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string_view t = Trim(lines[li]);
    int v = 0;
    auto res = std::from_chars(t.data(), t.data() + t.size(), v);
    if (res.ec != std::errc() || res.ptr != t.data() + t.size()) {
      Fail(ErrorCode::kInvalidInput, path.string() + ":" +
                                         std::to_string(li + 1) +
                                         ": not an integer label");
    }
    labels.push_back(v);
  }
  return labels;
}

void WriteLabels(const std::filesystem::path& path, std::span<const int> labels) {
  std::string out;
  for (int l : labels) {
    out += std::to_string(l);
    out += '\n';
  }
  WriteFile(path, out);
}

void WriteDataset(const std::filesystem::path& dir, const MultiViewDataset& data,
                  std::uint64_t seed, const std::string& generator_version) {
  data.Validate();
  std::filesystem::create_directories(dir);
  std::string meta;
  meta += "format=fedheat-dataset\n";
  meta += "generator_version=" + generator_version + "\n";
  meta += "seed=" + std::to_string(seed) + "\n";
  meta += "n=" + std::to_string(data.samples()) + "\n";
  meta += "s=" + std::to_string(data.view_count()) + "\n";
  meta += "d=";
  for (std::size_t h = 0; h < data.view_count(); ++h) {
    if (h) meta += ',';
    meta += std::to_string(data.views[h].cols());
  }
  meta += "\nc=" + std::to_string(data.clusters) + "\n";
  WriteFile(dir / "meta", meta);
  for (std::size_t h = 0; h < data.view_count(); ++h) {
    WriteCsvMatrix(dir / ("view_" + std::to_string(h + 1) + ".csv"), data.views[h]);
  }
  if (data.labels) WriteLabels(dir / "labels.csv", *data.labels);
}

MultiViewDataset ReadDataset(const std::filesystem::path& dir) {
  std::map<std::string, std::string> meta;
  for (const std::string& line : Lines(ReadFile(dir / "meta"))) {
    auto eq = line.find('=');
    Require(eq != std::string::npos, ErrorCode::kInvalidInput,
            "malformed meta line: " + line);
    meta[std::string(Trim(std::string_view(line).substr(0, eq)))] =
        std::string(Trim(std::string_view(line).substr(eq + 1)));
  }
  Require(meta.count("s") && meta.count("n"), ErrorCode::kInvalidInput,
          "meta missing n or s");
  MultiViewDataset data;
  int s = std::stoi(meta["s"]);
  Require(s >= 1, ErrorCode::kInvalidInput, "meta s must be >= 1");
  for (int h = 1; h <= s; ++h) {
    data.views.push_back(ReadCsvMatrix(dir / ("view_" + std::to_string(h) + ".csv")));
  }
  if (meta.count("c")) data.clusters = std::stoi(meta["c"]);
  if (std::filesystem::exists(dir / "labels.csv")) {
    data.labels = ReadLabels(dir / "labels.csv");
  }
  Require(data.samples() == std::stoull(meta["n"]), ErrorCode::kShape,
          "meta n does not match view_1.csv");
  data.Validate();
  return data;
}

}  // namespace fedheat
