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

#ifndef FEDHEAT_DATASET_HPP_
#define FEDHEAT_DATASET_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fedheat/matrix.hpp"

namespace fedheat {

// s views over the same n samples. Row i of every view describes sample i.
struct MultiViewDataset {
  std::vector<Matrix> views;
  std::optional<std::vector<int>> labels;
  int clusters = 0;  // declared cluster count; 0 when unknown

  std::size_t samples() const { return views.empty() ? 0 : views.front().rows(); }
  std::size_t view_count() const { return views.size(); }
  std::vector<std::size_t> dims() const;

  // Throws kShape when views disagree on n or labels have the wrong length,
  // kInvalidInput on non-finite values.
  void Validate() const;
};

MultiViewDataset SubsetRows(const MultiViewDataset& data,
                            std::span<const std::size_t> rows);

// Row-wise concatenation of all views.
Matrix Concatenate(const MultiViewDataset& data);

// Deterministic 64-bit seed mixing (SplitMix64 finalizer over the inputs).
std::uint64_t DeriveSeed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

// Shortest round-trip decimal form.
std::string FormatDouble(double v);
double ParseDouble(std::string_view text);

// On-disk layout: <dir>/meta, <dir>/view_1.csv ... view_s.csv and, when
// labels exist, <dir>/labels.csv.
void WriteDataset(const std::filesystem::path& dir, const MultiViewDataset& data,
                  std::uint64_t seed, const std::string& generator_version);
MultiViewDataset ReadDataset(const std::filesystem::path& dir);

Matrix ReadCsvMatrix(const std::filesystem::path& path);
void WriteCsvMatrix(const std::filesystem::path& path, const Matrix& m);
std::vector<int> ReadLabels(const std::filesystem::path& path);
void WriteLabels(const std::filesystem::path& path, std::span<const int> labels);

std::string ReadFile(const std::filesystem::path& path);
void WriteFile(const std::filesystem::path& path, const std::string& contents);

}  // namespace fedheat

#endif  // FEDHEAT_DATASET_HPP_
