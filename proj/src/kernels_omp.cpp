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

#include <omp.h>

#include <algorithm>
#include <cstdint>

#include "drnmf/kernels.hpp"
#include "kernels_check.hpp"

namespace drnmf::kernels {

using detail::require;

namespace {

// Contiguous [begin, end) slice of `n` for the calling thread.
struct Block {
  std::size_t begin;
  std::size_t end;
};

Block thread_block(std::size_t n) {
  const auto nt = static_cast<std::size_t>(omp_get_num_threads());
  const auto t = static_cast<std::size_t>(omp_get_thread_num());
  const std::size_t chunk = n / nt;
  const std::size_t extra = n % nt;
  const std::size_t begin = t * chunk + std::min(t, extra);
  return {begin, begin + chunk + (t < extra ? 1 : 0)};
}

using Index = std::int64_t;

}  // namespace

void set_num_threads(int n) {
  if (n <= 0) n = omp_get_num_procs();
  omp_set_num_threads(n);
}

int num_threads() { return omp_get_max_threads(); }

void matmul_into(const DenseMatrix& A, const DenseMatrix& B, DenseMatrix& C) {
  require(A.cols() == B.rows(), "matmul", A, B);
  if (C.rows() != A.rows() || C.cols() != B.cols()) C = DenseMatrix(A.rows(), B.cols());
  const Index m = static_cast<Index>(A.rows());
  const std::size_t inner = A.cols();
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto c = C.row(i);
    std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t k = 0; k < inner; ++k) {
      const double a = A(i, k);
      const auto b = B.row(k);
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += a * b[j];
    }
  }
}

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
  DenseMatrix C;
  matmul_into(A, B, C);
  return C;
}

DenseMatrix matmul_tn(const DenseMatrix& A, const DenseMatrix& B) {
  require(A.rows() == B.rows(), "matmul_tn", A, B);
  DenseMatrix C(A.cols(), B.cols());
#pragma omp parallel
  {
    const Block blk = thread_block(B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
      const auto b = B.row(i);
      for (std::size_t k = 0; k < A.cols(); ++k) {
        const double a = A(i, k);
        auto c = C.row(k);
        for (std::size_t j = blk.begin; j < blk.end; ++j) c[j] += a * b[j];
      }
    }
  }
  return C;
}

DenseMatrix matmul_nt(const DenseMatrix& A, const DenseMatrix& B) {
  require(A.cols() == B.cols(), "matmul_nt", A, B);
  DenseMatrix C(A.rows(), B.rows());
  const Index m = static_cast<Index>(A.rows());
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto a = A.row(i);
    for (std::size_t k = 0; k < B.rows(); ++k) {
      const auto b = B.row(k);
      double s = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
      C(i, k) = s;
    }
  }
  return C;
}

std::vector<double> col_sums(const DenseMatrix& A) {
  std::vector<double> out(A.cols(), 0.0);
#pragma omp parallel
  {
    const Block blk = thread_block(A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
      const auto a = A.row(i);
      for (std::size_t j = blk.begin; j < blk.end; ++j) out[j] += a[j];
    }
  }
  return out;
}

std::vector<double> row_sums(const DenseMatrix& A) {
  std::vector<double> out(A.rows(), 0.0);
  const Index m = static_cast<Index>(A.rows());
#pragma omp parallel for schedule(static)
  for (Index ii = 0; ii < m; ++ii) {
    double s = 0.0;
    for (double v : A.row(static_cast<std::size_t>(ii))) s += v;
    out[static_cast<std::size_t>(ii)] = s;
  }
  return out;
}

std::vector<double> wh_at_support(const DenseMatrix& W, const DenseMatrix& H,
                                  const SparseMatrix& X) {
  detail::require_support(W, H, X);
  const auto row_ptr = X.row_ptr();
  const auto col_idx = X.col_idx();
  std::vector<double> out(X.nnz(), 0.0);
  const Index m = static_cast<Index>(X.rows());
#pragma omp parallel for schedule(dynamic, 16)
  for (Index ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto w = W.row(i);
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      double s = 0.0;
      for (std::size_t k = 0; k < w.size(); ++k) s += w[k] * H(k, col_idx[p]);
      out[p] = s;
    }
  }
  return out;
}

DenseMatrix sparse_tn(const DenseMatrix& W, const SparseMatrix& X, std::span<const double> vals) {
  detail::require_vals(X, vals.size());
  if (W.rows() != X.rows()) throw DimensionError("sparse_tn: W rows != X rows");
  const auto col_ptr = X.col_ptr();
  const auto rows = X.csc_row_idx();
  const auto to_csr = X.csc_to_csr();
  const std::size_t r = W.cols();
  DenseMatrix out(r, X.cols());
  const Index n = static_cast<Index>(X.cols());
#pragma omp parallel for schedule(dynamic, 16)
  for (Index jj = 0; jj < n; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    for (std::size_t q = col_ptr[j]; q < col_ptr[j + 1]; ++q) {
      const auto w = W.row(rows[q]);
      const double v = vals[to_csr[q]];
      for (std::size_t k = 0; k < r; ++k) out(k, j) += w[k] * v;
    }
  }
  return out;
}

DenseMatrix sparse_nt(const SparseMatrix& X, std::span<const double> vals, const DenseMatrix& H) {
  detail::require_vals(X, vals.size());
  if (H.cols() != X.cols()) throw DimensionError("sparse_nt: H cols != X cols");
  const auto row_ptr = X.row_ptr();
  const auto col_idx = X.col_idx();
  DenseMatrix out(X.rows(), H.rows());
  const Index m = static_cast<Index>(X.rows());
#pragma omp parallel for schedule(dynamic, 16)
  for (Index ii = 0; ii < m; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    auto o = out.row(i);
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const std::size_t j = col_idx[p];
      for (std::size_t k = 0; k < o.size(); ++k) o[k] += vals[p] * H(k, j);
    }
  }
  return out;
}

}  // namespace drnmf::kernels
