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

#include "drnmf/mu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "drnmf/error.hpp"
#include "mu_engine.hpp"
#include "solve_loop.hpp"

namespace drnmf {

void SolverConfig::validate() const {
  if (max_iters < 1) throw ValidationError("solver: max_iters must be >= 1");
  if (!(floor > 0.0) || !std::isfinite(floor)) throw ValidationError("solver: floor must be > 0");
  if (log_stride < 1) throw ValidationError("solver: log_stride must be >= 1");
}

void check_data(const DenseMatrix& X, const std::vector<Beta>& /*betas*/) {
  if (X.empty()) throw ValidationError("data matrix is empty");
  if (!X.all_finite() || !X.is_nonnegative())
    throw ValidationError("data matrix must be finite and nonnegative");
}

void check_data(const SparseMatrix& X, const std::vector<Beta>& betas) {
  if (X.rows() == 0 || X.cols() == 0) throw ValidationError("data matrix is empty");
  for (Beta b : betas)
    if (!b.supports_sparse())
      throw ValidationError("sparse data supports beta in {1, 2} only, got beta = " + to_string(b));
}

std::size_t SolveTrace::monotonicity_violations() const {
  std::size_t count = 0;
  for (std::size_t t = 1; t < entries.size(); ++t)
    if (entries[t].weighted > entries[t - 1].weighted) ++count;
  return count;
}

namespace {

ObjectiveSet unit_objective(Beta beta) { return {{beta}, {1.0}, {1.0}}; }

template <class Data>
FactorPair prepare_factors(const Data& X, const DenseMatrix& W, const DenseMatrix& H,
                           const ObjectiveSet& obj, double floor) {
  obj.validate();
  check_data(X, obj.betas);
  FactorPair f{W, H};
  check_factor_shapes(X.rows(), X.cols(), f);
  if (!f.W.all_finite() || !f.H.all_finite() || !f.W.is_nonnegative() || !f.H.is_nonnegative())
    throw ValidationError("factors must be finite and nonnegative");
  f.W.floor_at(floor);
  f.H.floor_at(floor);
  return f;
}

template <class Engine, class Data>
GradientSplit split_for(const Data& X, const DenseMatrix& W, const DenseMatrix& H,
                        const ObjectiveSet& obj, detail::Side side) {
  obj.validate();
  check_data(X, obj.betas);
  FactorPair f{W, H};
  check_factor_shapes(X.rows(), X.cols(), f);
  if (W.min() <= 0.0 || H.min() <= 0.0)
    throw DomainError("gradient split needs strictly positive factors");
  const Engine engine(X, std::move(f), obj, SolverConfig{});
  return engine.split(side);
}

template <class Engine, class Data>
StepResult step_for(const Data& X, const DenseMatrix& W, const DenseMatrix& H,
                    const ObjectiveSet& obj, const SolverConfig& cfg, detail::Side side) {
  cfg.validate();
  Engine engine(X, prepare_factors(X, W, H, obj, cfg.floor), obj, cfg);
  const detail::StepStats stats = detail::mu_step(engine, side);
  StepResult out;
  out.factor = side == detail::Side::H ? engine.factors().H : engine.factors().W;
  out.halvings = stats.halvings;
  out.stalled = stats.stalled;
  out.eval = engine.eval();
  return out;
}

template <class Engine, class Data>
SolveResult solve_for(const Data& X, const FactorPair& init, const ObjectiveSet& obj,
                      const SolverConfig& cfg) {
  cfg.validate();
  Engine engine(X, prepare_factors(X, init.W, init.H, obj, cfg.floor), obj, cfg);
  SolveResult out;
  out.trace = detail::run_iterations(engine, cfg, [](std::size_t, Engine&) {});
  out.final_eval = engine.eval();
  out.factors = std::move(engine.factors());
  return out;
}

}  // namespace

GradientSplit grad_split_H(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta) {
  return split_for<detail::DenseEngine>(X, W, H, unit_objective(beta), detail::Side::H);
}
GradientSplit grad_split_H(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta) {
  return split_for<detail::SparseEngine>(X, W, H, unit_objective(beta), detail::Side::H);
}
GradientSplit grad_split_H_weighted(const DenseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj) {
  return split_for<detail::DenseEngine>(X, W, H, obj, detail::Side::H);
}
GradientSplit grad_split_H_weighted(const SparseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj) {
  return split_for<detail::SparseEngine>(X, W, H, obj, detail::Side::H);
}
GradientSplit grad_split_W(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta) {
  return split_for<detail::DenseEngine>(X, W, H, unit_objective(beta), detail::Side::W);
}
GradientSplit grad_split_W(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta) {
  return split_for<detail::SparseEngine>(X, W, H, unit_objective(beta), detail::Side::W);
}
GradientSplit grad_split_W_weighted(const DenseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj) {
  return split_for<detail::DenseEngine>(X, W, H, obj, detail::Side::W);
}
GradientSplit grad_split_W_weighted(const SparseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj) {
  return split_for<detail::SparseEngine>(X, W, H, obj, detail::Side::W);
}

StepResult mu_step_H(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg) {
  return step_for<detail::DenseEngine>(X, W, H, obj, cfg, detail::Side::H);
}
StepResult mu_step_H(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg) {
  return step_for<detail::SparseEngine>(X, W, H, obj, cfg, detail::Side::H);
}
StepResult mu_step_W(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg) {
  return step_for<detail::DenseEngine>(X, W, H, obj, cfg, detail::Side::W);
}
StepResult mu_step_W(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg) {
  return step_for<detail::SparseEngine>(X, W, H, obj, cfg, detail::Side::W);
}

SolveResult solve_weighted(const DenseMatrix& X, const FactorPair& init, const ObjectiveSet& obj,
                           const SolverConfig& cfg) {
  return solve_for<detail::DenseEngine>(X, init, obj, cfg);
}
SolveResult solve_weighted(const SparseMatrix& X, const FactorPair& init,
                           const ObjectiveSet& obj, const SolverConfig& cfg) {
  return solve_for<detail::SparseEngine>(X, init, obj, cfg);
}

}  // namespace drnmf
