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

#include "drnmf/error.hpp"
#include "drnmf/eval.hpp"
#include "drnmf/scaling.hpp"
#include "oracles.hpp"

using namespace drnmf;

TEST_SUITE("eval") {
  TEST_CASE("cluster assignment") {
    CHECK(cluster_assign(DenseMatrix::identity(3)) == std::vector<std::size_t>{0, 1, 2});
    CHECK(cluster_assign(DenseMatrix::from_rows({{0.9, 0.1}, {0.2, 0.8}})) ==
          std::vector<std::size_t>{0, 1});
    // Column sums are 1.0 and 0.4, so 0.3 in column 1 outweighs 0.5 in column 0.
    CHECK(cluster_assign(DenseMatrix::from_rows({{0.5, 0.1}, {0.5, 0.3}})) ==
          std::vector<std::size_t>{0, 1});
    CHECK(cluster_assign(DenseMatrix::from_rows({{0.5, 0.1}, {0.5, 0.1}, {0.0, 0.0}})) ==
          std::vector<std::size_t>{0, 0, 0});
    auto W = oracle::random_matrix(20, 4, 501);
    const auto base = cluster_assign(W);
    for (std::size_t i = 0; i < W.rows(); ++i) W(i, 2) *= 37.0;
    CHECK(cluster_assign(W) == base);
    CHECK_THROWS_AS(cluster_assign(DenseMatrix::from_rows({{1, 0}, {1, 0}})), ValidationError);
  }

  TEST_CASE("accuracy examples") {
    const std::vector<std::size_t> truth{0, 0, 1, 1};
    CHECK(clustering_accuracy(truth, truth) == 1.0);
    CHECK(clustering_accuracy({1, 1, 0, 0}, truth) == 1.0);
    CHECK(clustering_accuracy({0, 1, 0, 1}, truth) == 0.5);
    CHECK(clustering_accuracy({0, 0, 0, 0}, truth) == 0.5);
    CHECK(clustering_accuracy({0, 1, 2, 3}, truth) == 0.5);
    CHECK_THROWS_AS(clustering_accuracy({0, 1}, truth), DimensionError);
  }

  TEST_CASE("assignment matches brute force and is relabeling invariant") {
    std::mt19937_64 gen(17);
    for (int t = 0; t < 100; ++t) {
      const std::size_t m = 1 + gen() % 30;
      const std::size_t kp = 1 + gen() % 5, kt = 1 + gen() % 5;
      std::vector<std::size_t> p(m), q(m);
      for (std::size_t i = 0; i < m; ++i) {
        p[i] = gen() % kp;
        q[i] = gen() % kt;
      }
      const double expect = static_cast<double>(oracle::brute_force_matches(p, q)) / m;
      CHECK(clustering_accuracy(p, q) == expect);
      CHECK(clustering_accuracy(q, p) == expect);
      std::vector<std::size_t> relabel(kp);
      for (std::size_t k = 0; k < kp; ++k) relabel[k] = (k + 3) % kp;
      for (auto& v : p) v = relabel[v];
      CHECK(clustering_accuracy(p, q) == expect);
    }
  }

  TEST_CASE("balanced truth lower bound") {
    std::mt19937_64 gen(23);
    for (int t = 0; t < 50; ++t) {
      const std::size_t r = 2 + gen() % 4;
      std::vector<std::size_t> truth, pred;
      for (std::size_t i = 0; i < 10 * r; ++i) {
        truth.push_back(i % r);
        pred.push_back(gen() % r);
      }
      const double acc = clustering_accuracy(pred, truth);
      CHECK(acc >= 1.0 / r);
      CHECK(acc <= 1.0);
    }
  }

  TEST_CASE("linear assignment on a known matrix") {
    const auto cost = DenseMatrix::from_rows({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}});
    CHECK(linear_assignment(cost) == std::vector<std::size_t>{1, 0, 2});
    CHECK_THROWS_AS(linear_assignment(DenseMatrix(2, 3)), DimensionError);
  }

  TEST_CASE("relative errors") {
    const auto X = oracle::random_matrix(7, 6, 511);
    const auto W = oracle::random_matrix(7, 2, 512);
    const auto H = oracle::random_matrix(2, 6, 513);
    const double d1 = beta_div_matrix(X, W, H, Beta(1));
    const double d2 = beta_div_matrix(X, W, H, Beta(2));
    const auto obj = build_objective_set({Beta(1), Beta(2)}, {d1, d2 / 2}, {1, 1});
    const auto rel = relative_errors(X, W, H, obj);
    CHECK(rel[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(rel[1] == doctest::Approx(1.0).epsilon(1e-15));
    ObjectiveSet bad{{Beta(1)}, {0.0}, {1.0}};
    CHECK_THROWS_AS(relative_errors(X, W, H, bad), ValidationError);
  }
}
