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

#include <doctest.h>

#include <random>

#include "drnmf/kernels.hpp"
#include "oracles.hpp"

using namespace drnmf;

namespace {

SparseMatrix random_sparse(std::size_t m, std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u(gen) < density) t.push_back({i, j, 0.5 + u(gen)});
  return SparseMatrix::from_triplets(m, n, std::move(t));
}

}  // namespace

TEST_SUITE("kernels") {
  TEST_CASE("products match a naive long-double product") {
    const auto A = oracle::random_matrix(17, 9, 1);
    const auto B = oracle::random_matrix(9, 13, 2);
    CHECK(oracle::max_rel_diff(kernels::matmul(A, B), oracle::naive_matmul(A, B)) < 1e-14);
    CHECK(oracle::max_rel_diff(kernels::matmul_tn(A.transposed(), B), oracle::naive_matmul(A, B)) <
          1e-14);
    CHECK(oracle::max_rel_diff(kernels::matmul_nt(A, B.transposed()), oracle::naive_matmul(A, B)) <
          1e-14);
  }

  TEST_CASE("parallel kernels equal the serial reference bitwise") {
    const auto A = oracle::random_matrix(40, 7, 3);
    const auto B = oracle::random_matrix(7, 31, 4);
    const auto S = random_sparse(40, 31, 0.1, 5);
    std::vector<double> vals(S.values().begin(), S.values().end());
    for (int threads : {1, 2, 3, 5}) {
      kernels::set_num_threads(threads);
      CHECK(kernels::matmul(A, B) == kernels::serial::matmul(A, B));
      CHECK(kernels::matmul_tn(A, A) == kernels::serial::matmul_tn(A, A));
      CHECK(kernels::matmul_nt(B, B) == kernels::serial::matmul_nt(B, B));
      CHECK(kernels::col_sums(A) == kernels::serial::col_sums(A));
      CHECK(kernels::row_sums(A) == kernels::serial::row_sums(A));
      CHECK(kernels::wh_at_support(A, B, S) == kernels::serial::wh_at_support(A, B, S));
      CHECK(kernels::sparse_tn(A, S, vals) == kernels::serial::sparse_tn(A, S, vals));
      CHECK(kernels::sparse_nt(S, vals, B) == kernels::serial::sparse_nt(S, vals, B));
    }
    kernels::set_num_threads(0);
  }

  TEST_CASE("sparse products match dense products") {
    const auto W = oracle::random_matrix(25, 4, 6);
    const auto H = oracle::random_matrix(4, 19, 7);
    const auto S = random_sparse(25, 19, 0.2, 8);
    std::vector<double> vals(S.values().begin(), S.values().end());
    const DenseMatrix D = S.to_dense();
    CHECK(oracle::max_rel_diff(kernels::sparse_tn(W, S, vals), oracle::naive_matmul(W.transposed(), D)) <
          1e-13);
    CHECK(oracle::max_rel_diff(kernels::sparse_nt(S, vals, H), oracle::naive_matmul(D, H.transposed())) <
          1e-13);
    const auto wh = kernels::wh_at_support(W, H, S);
    const auto full = oracle::naive_matmul(W, H);
    std::size_t k = 0;
    for (std::size_t i = 0; i < S.rows(); ++i)
      for (std::size_t p = S.row_ptr()[i]; p < S.row_ptr()[i + 1]; ++p, ++k)
        CHECK(wh[k] == doctest::Approx(full(i, S.col_idx()[p])).epsilon(1e-14));
  }

  TEST_CASE("row and column sums") {
    const auto A = DenseMatrix::from_rows({{1, 2}, {3, 4}, {5, 6}});
    CHECK(kernels::col_sums(A) == std::vector<double>{9, 12});
    CHECK(kernels::row_sums(A) == std::vector<double>{3, 7, 11});
  }
}
