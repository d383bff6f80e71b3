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

#include "drnmf/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "drnmf/error.hpp"

namespace drnmf {

SparseMatrix SparseMatrix::from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> entries) {
  for (const auto& t : entries) {
    if (t.row >= rows || t.col >= cols) {
      throw ValidationError("sparse entry (" + std::to_string(t.row) + ", " +
                            std::to_string(t.col) + ") outside a " + std::to_string(rows) + "x" +
                            std::to_string(cols) + " matrix");
    }
    if (!(t.value > 0.0) || !std::isfinite(t.value)) {
      throw ValidationError("sparse entry (" + std::to_string(t.row) + ", " +
                            std::to_string(t.col) + ") must be finite and > 0");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  for (std::size_t k = 1; k < entries.size(); ++k) {
    if (entries[k].row == entries[k - 1].row && entries[k].col == entries[k - 1].col) {
      throw ValidationError("duplicate sparse entry (" + std::to_string(entries[k].row) + ", " +
                            std::to_string(entries[k].col) + ")");
    }
  }

  SparseMatrix out;
  out.rows_ = rows;
  out.cols_ = cols;
  out.row_ptr_.assign(rows + 1, 0);
  out.col_idx_.reserve(entries.size());
  out.values_.reserve(entries.size());
  for (const auto& t : entries) {
    ++out.row_ptr_[t.row + 1];
    out.col_idx_.push_back(t.col);
    out.values_.push_back(t.value);
  }
  for (std::size_t i = 0; i < rows; ++i) out.row_ptr_[i + 1] += out.row_ptr_[i];
  out.build_index();
  return out;
}

SparseMatrix SparseMatrix::from_dense(const DenseMatrix& dense) {
  std::vector<Triplet> entries;
  for (std::size_t i = 0; i < dense.rows(); ++i)
    for (std::size_t j = 0; j < dense.cols(); ++j)
      if (dense(i, j) > 0.0) entries.push_back({i, j, dense(i, j)});
  return from_triplets(dense.rows(), dense.cols(), std::move(entries));
}

void SparseMatrix::build_index() {
  const std::size_t K = values_.size();
  col_ptr_.assign(cols_ + 1, 0);
  for (std::size_t c : col_idx_) ++col_ptr_[c + 1];
  for (std::size_t j = 0; j < cols_; ++j) col_ptr_[j + 1] += col_ptr_[j];

  csc_row_idx_.assign(K, 0);
  csc_to_csr_.assign(K, 0);
  std::vector<std::size_t> next(col_ptr_.begin(), col_ptr_.end() - 1);
  // Rows are visited in ascending order, so each column's slice is row-sorted.
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      const std::size_t q = next[col_idx_[p]]++;
      csc_row_idx_[q] = i;
      csc_to_csr_[q] = p;
    }
  }
}

std::vector<Triplet> SparseMatrix::triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p)
      out.push_back({i, col_idx_[p], values_[p]});
  return out;
}

DenseMatrix SparseMatrix::to_dense() const {
  DenseMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) out(i, col_idx_[p]) = values_[p];
  return out;
}

SparseMatrix SparseMatrix::transposed() const {
  std::vector<Triplet> t;
  t.reserve(nnz());
  for (const auto& e : triplets()) t.push_back({e.col, e.row, e.value});
  return from_triplets(cols_, rows_, std::move(t));
}

double SparseMatrix::squared_norm() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s;
}

double SparseMatrix::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

std::size_t rows_of(const DataMatrix& X) {
  return std::visit([](const auto& m) { return m.rows(); }, X);
}

std::size_t cols_of(const DataMatrix& X) {
  return std::visit([](const auto& m) { return m.cols(); }, X);
}

DenseMatrix densify(const DataMatrix& X) {
  if (const auto* d = std::get_if<DenseMatrix>(&X)) return *d;
  return std::get<SparseMatrix>(X).to_dense();
}

}  // namespace drnmf
