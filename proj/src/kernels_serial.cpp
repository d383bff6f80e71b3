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

#include "drnmf/kernels.hpp"
#include "kernels_check.hpp"

namespace drnmf::kernels::serial {

using detail::require;

DenseMatrix matmul(const DenseMatrix& A, const DenseMatrix& B) {
  require(A.cols() == B.rows(), "matmul", A, B);
  DenseMatrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    auto c = C.row(i);
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const double a = A(i, k);
      const auto b = B.row(k);
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += a * b[j];
    }
  }
  return C;
}

DenseMatrix matmul_tn(const DenseMatrix& A, const DenseMatrix& B) {
  require(A.rows() == B.rows(), "matmul_tn", A, B);
  DenseMatrix C(A.cols(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto b = B.row(i);
    for (std::size_t k = 0; k < A.cols(); ++k) {
      const double a = A(i, k);
      auto c = C.row(k);
      for (std::size_t j = 0; j < c.size(); ++j) c[j] += a * b[j];
    }
  }
  return C;
}

DenseMatrix matmul_nt(const DenseMatrix& A, const DenseMatrix& B) {
  require(A.cols() == B.cols(), "matmul_nt", A, B);
  DenseMatrix C(A.rows(), B.rows());
  for (std::size_t i = 0; i < A.rows(); ++i) {
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
  for (std::size_t i = 0; i < A.rows(); ++i) {
    const auto a = A.row(i);
    for (std::size_t j = 0; j < a.size(); ++j) out[j] += a[j];
  }
  return out;
}

std::vector<double> row_sums(const DenseMatrix& A) {
  std::vector<double> out(A.rows(), 0.0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (double v : A.row(i)) s += v;
    out[i] = s;
  }
  return out;
}

std::vector<double> wh_at_support(const DenseMatrix& W, const DenseMatrix& H,
                                  const SparseMatrix& X) {
  detail::require_support(W, H, X);
  const auto row_ptr = X.row_ptr();
  const auto col_idx = X.col_idx();
  std::vector<double> out(X.nnz(), 0.0);
  for (std::size_t i = 0; i < X.rows(); ++i) {
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
  const auto row_ptr = X.row_ptr();
  const auto col_idx = X.col_idx();
  DenseMatrix out(W.cols(), X.cols());
  for (std::size_t i = 0; i < X.rows(); ++i) {
    const auto w = W.row(i);
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const std::size_t j = col_idx[p];
      for (std::size_t k = 0; k < w.size(); ++k) out(k, j) += w[k] * vals[p];
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
  for (std::size_t i = 0; i < X.rows(); ++i) {
    auto o = out.row(i);
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      const std::size_t j = col_idx[p];
      for (std::size_t k = 0; k < o.size(); ++k) o[k] += vals[p] * H(k, j);
    }
  }
  return out;
}

}  // namespace drnmf::kernels::serial
