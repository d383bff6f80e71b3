// Copyright 2026 The drnmf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "drnmf/dense_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "drnmf/error.hpp"

namespace drnmf {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw DimensionError("DenseMatrix: " + std::to_string(values_.size()) +
                         " values for a " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix");
  }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
  DenseMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

DenseMatrix DenseMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m == 0 ? 0 : rows.begin()->size();
  std::vector<double> values;
  values.reserve(m * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw DimensionError("DenseMatrix::from_rows: ragged rows");
    values.insert(values.end(), r.begin(), r.end());
  }
  return DenseMatrix(m, n, std::move(values));
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

double DenseMatrix::min() const {
  if (values_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::min_element(values_.begin(), values_.end());
}

double DenseMatrix::max() const {
  if (values_.empty()) return std::numeric_limits<double>::quiet_NaN();
  return *std::max_element(values_.begin(), values_.end());
}

double DenseMatrix::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double DenseMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return std::sqrt(s);
}

bool DenseMatrix::is_nonnegative() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v >= 0.0; });
}

bool DenseMatrix::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

std::size_t DenseMatrix::floor_at(double floor) {
  std::size_t raised = 0;
  for (double& v : values_) {
    if (v < floor) {
      v = floor;
      ++raised;
    }
  }
  return raised;
}

void check_factor_shapes(std::size_t rows, std::size_t cols, const FactorPair& factors) {
  const auto& W = factors.W;
  const auto& H = factors.H;
  if (W.cols() == 0 || W.rows() != rows || H.rows() != W.cols() || H.cols() != cols) {
    throw DimensionError("factor shapes W " + std::to_string(W.rows()) + "x" +
                         std::to_string(W.cols()) + ", H " + std::to_string(H.rows()) + "x" +
                         std::to_string(H.cols()) + " do not fit a " + std::to_string(rows) +
                         "x" + std::to_string(cols) + " target");
  }
}

double max_relative_difference(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionError("max_relative_difference: shape mismatch");
  double worst = 0.0;
  const auto av = a.values();
  const auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) {
    const double scale = std::max(std::abs(bv[k]), std::numeric_limits<double>::min());
    worst = std::max(worst, std::abs(av[k] - bv[k]) / scale);
  }
  return worst;
}

}  // namespace drnmf
