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

#include "fedheat/matrix.hpp"

#include <cmath>

#include "fedheat/error.hpp"

namespace fedheat {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "invalid input";
    case ErrorCode::kShape: return "shape mismatch";
    case ErrorCode::kInvalidConfig: return "invalid config";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kNumerical: return "numerical failure";
    case ErrorCode::kValidation: return "validation failed";
    case ErrorCode::kProtocol: return "protocol error";
  }
  return "unknown error";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

Matrix Matrix::FromRows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Require(rows[i].size() == m.cols(), ErrorCode::kShape, "ragged rows");
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Matrix SelectRows(const Matrix& m, std::span<const std::size_t> rows) {
  Matrix out(rows.size(), m.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Require(rows[r] < m.rows(), ErrorCode::kShape, "row index out of range");
    auto src = m.row(rows[r]);
    auto dst = out.row(r);
    for (std::size_t j = 0; j < m.cols(); ++j) dst[j] = src[j];
  }
  return out;
}

Matrix ConcatColumns(std::span<const Matrix> parts) {
  if (parts.empty()) return {};
  std::size_t n = parts.front().rows();
  std::size_t total = 0;
  for (const Matrix& p : parts) {
    Require(p.rows() == n, ErrorCode::kShape, "row count mismatch in concat");
    total += p.cols();
  }
  Matrix out(n, total);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t off = 0;
    for (const Matrix& p : parts) {
      for (std::size_t j = 0; j < p.cols(); ++j) out(i, off + j) = p(i, j);
      off += p.cols();
    }
  }
  return out;
}

bool AllFinite(const Matrix& m) {
  for (double v : m.values()) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double FrobeniusDistance(const Matrix& a, const Matrix& b) {
  Require(a.rows() == b.rows() && a.cols() == b.cols(), ErrorCode::kShape,
          "frobenius distance shape mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a.values()[i] - b.values()[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace fedheat
