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
#include <span>
#include <variant>
#include <vector>

#include "drnmf/dense_matrix.hpp"

namespace drnmf {

struct Triplet {
  std::size_t row;
  std::size_t col;
  double value;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Nonnegative sparse matrix with K strictly positive stored entries.
///
/// Entries are kept in compressed-row order (row-major, columns ascending).
/// A compressed-column index is built once at construction: `csc_to_csr()`
/// maps each column-ordered position back to its slot in `values()`, so any
/// array aligned with the row-major entries can be streamed column by column.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  /// Validates and sorts. Rejects out-of-range indices, duplicates and
  /// nonpositive or non-finite values.
  static SparseMatrix from_triplets(std::size_t rows, std::size_t cols,
                                    std::vector<Triplet> entries);
  /// Stores every strictly positive entry of `dense`.
  static SparseMatrix from_dense(const DenseMatrix& dense);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nnz() const noexcept { return values_.size(); }

  std::span<const std::size_t> row_ptr() const noexcept { return row_ptr_; }
  std::span<const std::size_t> col_idx() const noexcept { return col_idx_; }
  std::span<const double> values() const noexcept { return values_; }

  std::span<const std::size_t> col_ptr() const noexcept { return col_ptr_; }
  std::span<const std::size_t> csc_row_idx() const noexcept { return csc_row_idx_; }
  std::span<const std::size_t> csc_to_csr() const noexcept { return csc_to_csr_; }

  std::vector<Triplet> triplets() const;
  DenseMatrix to_dense() const;
  SparseMatrix transposed() const;

  double squared_norm() const;
  double sum() const;

 private:
  void build_index();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::size_t> col_idx_;
  std::vector<double> values_;
  std::vector<std::size_t> col_ptr_{0};
  std::vector<std::size_t> csc_row_idx_;
  std::vector<std::size_t> csc_to_csr_;
};

/// Input matrix X for the solvers: dense, or sparse for the O(Kr) path.
using DataMatrix = std::variant<DenseMatrix, SparseMatrix>;

std::size_t rows_of(const DataMatrix& X);
std::size_t cols_of(const DataMatrix& X);
DenseMatrix densify(const DataMatrix& X);

}  // namespace drnmf
