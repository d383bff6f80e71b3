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
#include <vector>

#include "drnmf/dense_matrix.hpp"
#include "drnmf/sparse_matrix.hpp"

/// Linear-algebra kernels shared by every solver path.
///
/// `drnmf::kernels` holds the OpenMP versions used by the solvers;
/// `drnmf::kernels::serial` holds straightforward single-threaded versions
/// kept as the reference for tests and benchmarks. Both accumulate every
/// output entry in the same order, so the two agree bitwise for any thread
/// count.
namespace drnmf::kernels {

/// Caps the OpenMP team size (n <= 0 restores the runtime default).
void set_num_threads(int n);
int num_threads();

/// A * B.
DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);
/// A * B written into `out` (resized as needed).
void matmul_into(const DenseMatrix& A, const DenseMatrix& B, DenseMatrix& out);
/// A^T * B, without forming A^T.
DenseMatrix matmul_tn(const DenseMatrix& A, const DenseMatrix& B);
/// A * B^T, without forming B^T.
DenseMatrix matmul_nt(const DenseMatrix& A, const DenseMatrix& B);

std::vector<double> col_sums(const DenseMatrix& A);
std::vector<double> row_sums(const DenseMatrix& A);

/// (WH)_ij at the stored positions of X, in X's row-major entry order. O(Kr).
std::vector<double> wh_at_support(const DenseMatrix& W, const DenseMatrix& H,
                                  const SparseMatrix& X);

/// W^T * S where S has X's pattern and entry values `vals` (row-major order).
DenseMatrix sparse_tn(const DenseMatrix& W, const SparseMatrix& X, std::span<const double> vals);
/// S * H^T where S has X's pattern and entry values `vals` (row-major order).
DenseMatrix sparse_nt(const SparseMatrix& X, std::span<const double> vals, const DenseMatrix& H);

}  // namespace drnmf::kernels

namespace drnmf::kernels::serial {

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix matmul_tn(const DenseMatrix& A, const DenseMatrix& B);
DenseMatrix matmul_nt(const DenseMatrix& A, const DenseMatrix& B);
std::vector<double> col_sums(const DenseMatrix& A);
std::vector<double> row_sums(const DenseMatrix& A);
std::vector<double> wh_at_support(const DenseMatrix& W, const DenseMatrix& H,
                                  const SparseMatrix& X);
DenseMatrix sparse_tn(const DenseMatrix& W, const SparseMatrix& X, std::span<const double> vals);
DenseMatrix sparse_nt(const SparseMatrix& X, std::span<const double> vals, const DenseMatrix& H);

}  // namespace drnmf::kernels::serial
