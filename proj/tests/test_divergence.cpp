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

#include <cmath>

#include "drnmf/divergence.hpp"
#include "drnmf/error.hpp"
#include "oracles.hpp"

using namespace drnmf;

TEST_SUITE("divergence") {
  TEST_CASE("scalar values by hand") {
    CHECK(beta_div_scalar(2, 1, Beta(0)) == doctest::Approx(1 - std::log(2.0)).epsilon(1e-15));
    CHECK(beta_div_scalar(2, 1, Beta(1)) == doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-15));
    CHECK(beta_div_scalar(0, 3, Beta(1)) == 3.0);
    CHECK(beta_div_scalar(3, 1, Beta(2)) == 2.0);
    CHECK(beta_div_scalar(4, 1, Beta(0.5)) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(beta_div_scalar(0.7, 0.7, Beta(1.5)) == 0.0);
    CHECK(beta_div_scalar(0.7, 0.7, Beta(0)) == 0.0);
  }

  TEST_CASE("general branch approaches KL and IS") {
    CHECK(beta_div_scalar(2, 1, Beta(1 + 1e-7)) ==
          doctest::Approx(beta_div_scalar(2, 1, Beta(1))).epsilon(1e-6));
    CHECK(beta_div_scalar(2, 1, Beta(1e-7)) ==
          doctest::Approx(beta_div_scalar(2, 1, Beta(0))).epsilon(1e-6));
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(beta_div_scalar(1, 0, Beta(2)), DomainError);
    CHECK_THROWS_AS(beta_div_scalar(-1, 1, Beta(2)), DomainError);
    CHECK_THROWS_AS(beta_div_scalar(0, 1, Beta(0)), DomainError);
    CHECK_THROWS_AS(Beta(-0.5), ValidationError);
    CHECK_THROWS_AS(Beta(NAN), ValidationError);
  }

  TEST_CASE("matrix divergence matches the oracle") {
    const auto X = oracle::random_matrix(9, 7, 11);
    const auto W = oracle::random_matrix(9, 3, 12);
    const auto H = oracle::random_matrix(3, 7, 13);
    for (double b : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      CAPTURE(b);
      CHECK(oracle::rel_diff(beta_div_matrix(X, W, H, Beta(b)), oracle::matrix_div(X, W, H, b)) <
            1e-12);
    }
  }

  TEST_CASE("sparse divergence matches dense for beta 1 and 2") {
    auto X = oracle::random_matrix(12, 10, 21);
    for (std::size_t i = 0; i < X.rows(); ++i)
      for (std::size_t j = 0; j < X.cols(); ++j)
        if ((i * 7 + j * 3) % 4 != 0) X(i, j) = 0.0;
    const auto S = SparseMatrix::from_dense(X);
    const auto W = oracle::random_matrix(12, 3, 22);
    const auto H = oracle::random_matrix(3, 10, 23);
    for (double b : {1.0, 2.0})
      CHECK(oracle::rel_diff(beta_div_matrix(S, W, H, Beta(b)), beta_div_matrix(X, W, H, Beta(b))) <
            1e-12);
    CHECK_THROWS_AS(beta_div_matrix(S, W, H, Beta(0.5)), ValidationError);
  }

  TEST_CASE("zero data with IS is rejected") {
    auto X = oracle::random_matrix(4, 4, 31);
    X(1, 1) = 0.0;
    const auto W = oracle::random_matrix(4, 2, 32);
    const auto H = oracle::random_matrix(2, 4, 33);
    CHECK_THROWS_AS(beta_div_matrix(X, W, H, Beta(0)), DomainError);
    CHECK_NOTHROW(beta_div_matrix(X, W, H, Beta(1)));
  }

  TEST_CASE("scaling identity D(aX, W, aH) = a^beta D(X, W, H)") {
    const auto X = oracle::random_matrix(8, 6, 41);
    const auto W = oracle::random_matrix(8, 2, 42);
    const auto H = oracle::random_matrix(2, 6, 43);
    for (double a : {0.5, 3.0})
      for (double b : {0.0, 1.0, 1.5, 2.0}) {
        DenseMatrix aX = X, aH = H;
        for (double& v : aX.values()) v *= a;
        for (double& v : aH.values()) v *= a;
        CHECK(oracle::rel_diff(beta_div_matrix(aX, W, aH, Beta(b)),
                               std::pow(a, b) * beta_div_matrix(X, W, H, Beta(b))) < 1e-10);
      }
  }

  TEST_CASE("objective set validation") {
    ObjectiveSet ok{{Beta(1), Beta(2)}, {2.0, 4.0}, {0.5, 0.5}};
    CHECK_NOTHROW(ok.validate());
    CHECK(ok.coefficient(1) == 0.125);
    ObjectiveSet dup{{Beta(1), Beta(1)}, {1, 1}, {0.5, 0.5}};
    CHECK_THROWS_AS(dup.validate(), ValidationError);
    ObjectiveSet off{{Beta(1), Beta(2)}, {1, 1}, {0.5, 0.6}};
    CHECK_THROWS_AS(off.validate(), ValidationError);
    ObjectiveSet zero_ref{{Beta(1)}, {0.0}, {1.0}};
    CHECK_THROWS_AS(zero_ref.validate(), ValidationError);
    ObjectiveSet neg{{Beta(1), Beta(2)}, {1, 1}, {1.5, -0.5}};
    CHECK_THROWS_AS(neg.validate(), ValidationError);
  }

  TEST_CASE("evaluation, weighting and the worst objective") {
    const auto X = oracle::random_matrix(6, 5, 51);
    const auto W = oracle::random_matrix(6, 2, 52);
    const auto H = oracle::random_matrix(2, 5, 53);
    const double d1 = beta_div_matrix(X, W, H, Beta(1));
    const double d2 = beta_div_matrix(X, W, H, Beta(2));
    ObjectiveSet obj{{Beta(1), Beta(2)}, {d1, d2 / 2}, {0.25, 0.75}};
    const Evaluation e = evaluate(X, W, H, obj);
    CHECK(e.normalized[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e.normalized[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(e.weighted == doctest::Approx(0.25 + 1.5).epsilon(1e-15));
    CHECK(weighted_objective(X, W, H, obj) == e.weighted);
    const auto worst = max_normalized(e, obj);
    CHECK(worst.index == 1);
    CHECK(worst.beta == Beta(2));

    ObjectiveSet tie{{Beta(2), Beta(1)}, {d2, d1}, {0.5, 0.5}};
    CHECK(max_normalized(evaluate(X, W, H, tie), tie).beta == Beta(1));
  }
}
