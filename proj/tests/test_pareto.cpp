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

#include <sstream>

#include "drnmf/error.hpp"
#include "drnmf/pareto.hpp"
#include "drnmf/scaling.hpp"
#include "oracles.hpp"

using namespace drnmf;

TEST_SUITE("pareto") {
  TEST_CASE("grid sweep anchors, ordering and determinism") {
    const auto X = oracle::random_matrix(14, 11, 301);
    const FactorPair init{oracle::random_matrix(14, 3, 302), oracle::random_matrix(3, 11, 303)};
    SolverConfig cfg;
    cfg.max_iters = 40;
    const std::vector<Beta> betas{Beta(1), Beta(2)};
    const auto refs = compute_reference_errors(X, init, betas, cfg);
    const auto pts = pareto_sweep(X, init, betas, refs.values, 5, cfg);
    REQUIRE(pts.size() == 5);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(pts[i].ell == doctest::Approx(i / 4.0));
      CHECK(pts[i].lambda[0] + pts[i].lambda[1] == doctest::Approx(1.0));
    }
    CHECK(pts.back().normalized[0] == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(pts.front().normalized[1] == doctest::Approx(1.0).epsilon(1e-6));
    const auto again = pareto_sweep(X, init, betas, refs.values, 5, cfg);
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(again[i].raw == pts[i].raw);
    CHECK_THROWS_AS(pareto_sweep(X, init, betas, refs.values, 1, cfg), ValidationError);
  }

  TEST_CASE("dominance") {
    ParetoPoint a, b, c;
    a.normalized = {1.0, 1.0};
    b.normalized = {1.5, 1.2};
    c.normalized = {0.9, 1.3};
    CHECK(strictly_dominates(a, b, 0.0));
    CHECK_FALSE(strictly_dominates(b, a, 0.0));
    CHECK_FALSE(strictly_dominates(a, c, 0.0));
    CHECK_FALSE(strictly_dominates(a, b, 0.3));
    const std::vector<ParetoPoint> pts{a, b, c};
    CHECK(dominated_points(pts, 0.0) == std::vector<std::size_t>{1});
  }

  TEST_CASE("csv layout") {
    ParetoPoint p;
    p.ell = 0.5;
    p.lambda = {0.5, 0.5};
    p.normalized = {1.25, 1.5};
    p.raw = {2.5, 3.0};
    p.weighted = 1.375;
    const std::vector<Beta> betas{Beta(0), Beta(2)};
    const std::vector<ParetoPoint> pts{p};
    std::ostringstream os;
    write_pareto_csv(os, betas, pts);
    CHECK(os.str() ==
          "ell,lambda_0,lambda_2,dbar_0,dbar_2,d_0,d_2,weighted\n"
          "0.5,0.5,0.5,1.25,1.5,2.5,3,1.375\n");
  }
}
