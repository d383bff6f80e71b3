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

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace drnmf {

/// Row-major matrix of doubles. Holds data matrices, factors and gradient
/// terms; nonnegativity is a property of the callers, not enforced here.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static DenseMatrix identity(std::size_t n);
  static DenseMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return values_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return values_[i * cols_ + j];
  }

  std::span<double> row(std::size_t i) noexcept { return {values_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {values_.data() + i * cols_, cols_};
  }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }

  DenseMatrix transposed() const;

  double min() const;
  double max() const;
  double sum() const;
  double frobenius_norm() const;
  bool is_nonnegative() const;
  bool all_finite() const;

  /// Entrywise max(v, floor); returns the number of entries raised.
  std::size_t floor_at(double floor);

  friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Nonnegative factors (W: m x r, H: r x n).
struct FactorPair {
  DenseMatrix W;
  DenseMatrix H;

  std::size_t rank() const noexcept { return W.cols(); }
};

/// Throws DimensionError unless W is rows x r and H is r x cols with r >= 1.
void check_factor_shapes(std::size_t rows, std::size_t cols, const FactorPair& factors);

/// Largest relative entrywise deviation max|a-b| / max(|b|, tiny).
double max_relative_difference(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace drnmf
