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

#include <string>

#include "drnmf/dense_matrix.hpp"
#include "drnmf/error.hpp"
#include "drnmf/sparse_matrix.hpp"

namespace drnmf::kernels::detail {

inline std::string shape(const DenseMatrix& A) {
  return std::to_string(A.rows()) + "x" + std::to_string(A.cols());
}

inline void require(bool ok, const char* op, const DenseMatrix& A, const DenseMatrix& B) {
  if (!ok) throw DimensionError(std::string(op) + ": incompatible shapes " + shape(A) + " and " + shape(B));
}

inline void require_support(const DenseMatrix& W, const DenseMatrix& H, const SparseMatrix& X) {
  if (W.rows() != X.rows() || H.cols() != X.cols() || W.cols() != H.rows()) {
    throw DimensionError("wh_at_support: W " + shape(W) + ", H " + shape(H) + " vs X " +
                         std::to_string(X.rows()) + "x" + std::to_string(X.cols()));
  }
}

inline void require_vals(const SparseMatrix& X, std::size_t n_vals) {
  if (n_vals != X.nnz()) throw DimensionError("sparse kernel: value array length != nnz");
}

}  // namespace drnmf::kernels::detail
