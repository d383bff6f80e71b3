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

#include "drnmf/dr.hpp"

#include <cmath>
#include <string>

#include "drnmf/error.hpp"
#include "mu_engine.hpp"
#include "solve_loop.hpp"

namespace drnmf {

std::vector<double> lambda_update(std::span<const double> lambda, std::size_t worst, double rho) {
  if (worst >= lambda.size())
    throw ValidationError("lambda_update: index " + std::to_string(worst) + " out of range");
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw ValidationError("lambda_update: rho must be >= 0");
  double total = 0.0;
  for (double v : lambda) {
    if (!(v >= 0.0)) throw ValidationError("lambda_update: weights must be >= 0");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ValidationError("lambda_update: weights must sum to 1");

  std::vector<double> out(lambda.begin(), lambda.end());
  out[worst] += rho;
  double norm = 0.0;
  for (double v : out) norm += v;
  for (double& v : out) v /= norm;
  return out;
}

namespace {

template <class Engine, class Data>
DrResult solve_dr_for(const Data& X, const FactorPair& init, std::span<const Beta> betas,
                      std::span<const double> ref_errors, const SolverConfig& cfg) {
  cfg.validate();
  if (betas.empty()) throw ValidationError("solve_dr: no betas given");
  if (ref_errors.size() != betas.size())
    throw ValidationError("solve_dr: one reference error per beta is required");

  ObjectiveSet obj{{betas.begin(), betas.end()},
                   {ref_errors.begin(), ref_errors.end()},
                   std::vector<double>(betas.size(), 1.0 / static_cast<double>(betas.size()))};
  obj.validate();
  check_data(X, obj.betas);
  FactorPair f = init;
  check_factor_shapes(X.rows(), X.cols(), f);
  if (!f.W.is_nonnegative() || !f.H.is_nonnegative() || !f.W.all_finite() || !f.H.all_finite())
    throw ValidationError("factors must be finite and nonnegative");
  f.W.floor_at(cfg.floor);
  f.H.floor_at(cfg.floor);

  Engine engine(X, std::move(f), obj, cfg);
  DrResult out;
  out.trace = detail::run_iterations(engine, cfg, [](std::size_t k, Engine& e) {
    const WorstObjective worst = max_normalized(e.eval(), e.objective());
    e.set_weights(lambda_update(e.objective().weights, worst.index, dr_step_size(k)));
  });
  out.objective = engine.objective();
  out.final_eval = engine.eval();
  out.factors = std::move(engine.factors());
  return out;
}

}  // namespace

DrResult solve_dr(const DenseMatrix& X, const FactorPair& init, std::span<const Beta> betas,
                  std::span<const double> ref_errors, const SolverConfig& cfg) {
  return solve_dr_for<detail::DenseEngine>(X, init, betas, ref_errors, cfg);
}

DrResult solve_dr(const SparseMatrix& X, const FactorPair& init, std::span<const Beta> betas,
                  std::span<const double> ref_errors, const SolverConfig& cfg) {
  return solve_dr_for<detail::SparseEngine>(X, init, betas, ref_errors, cfg);
}

}  // namespace drnmf
