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
#include <cstdint>
#include <variant>
#include <vector>

#include "drnmf/dense_matrix.hpp"
#include "drnmf/divergence.hpp"
#include "drnmf/sparse_matrix.hpp"

namespace drnmf {

/// Entry floor applied after every multiplicative update (zero-locking fix).
inline constexpr double kFactorFloor = 1e-16;

struct SolverConfig {
  std::size_t max_iters = 1000;
  double floor = kFactorFloor;
  /// Step-halving budget per update; when exhausted the update is skipped.
  std::size_t max_halvings = 64;
  std::uint64_t seed = 0;
  /// Record every n-th iteration in the trace (the first and last always are).
  std::size_t log_stride = 1;

  void validate() const;
};

/// Positive and negative parts of a gradient: grad = plus - minus, both > 0.
struct GradientSplit {
  DenseMatrix plus;
  DenseMatrix minus;
};

/// Split of the gradient of D_beta(X, WH) with respect to H:
///   plus = W^T (WH)^(beta-1),  minus = W^T ((WH)^(beta-2) o X).
GradientSplit grad_split_H(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta);
GradientSplit grad_split_H(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta);
/// sum_beta (lambda_beta / e_beta) * grad_split_H(..., beta), part by part.
GradientSplit grad_split_H_weighted(const DenseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj);
GradientSplit grad_split_H_weighted(const SparseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj);

/// Same splits with respect to W:
///   plus = (WH)^(beta-1) H^T,  minus = ((WH)^(beta-2) o X) H^T.
GradientSplit grad_split_W(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta);
GradientSplit grad_split_W(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           Beta beta);
GradientSplit grad_split_W_weighted(const DenseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj);
GradientSplit grad_split_W_weighted(const SparseMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj);

/// Outcome of one multiplicative update of a single factor.
struct StepResult {
  DenseMatrix factor;
  /// Number of step-length halvings before the objective stopped increasing.
  std::size_t halvings = 0;
  /// True when the halving budget ran out and the factor was left unchanged.
  bool stalled = false;
  /// Objective at the returned factor.
  Evaluation eval;
};

/// One multiplicative update of H with step halving:
///   H+ = H o [grad-] / [grad+],  H_g = (1 - g) H + g H+,  g = 1, 1/2, ...
/// until the weighted objective does not increase. Entries are floored at
/// cfg.floor.
StepResult mu_step_H(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg);
StepResult mu_step_H(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg);
/// The W update; equals mu_step_H on the transposed problem (X^T, H^T, W^T).
StepResult mu_step_W(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg);
StepResult mu_step_W(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                     const ObjectiveSet& obj, const SolverConfig& cfg);

struct TraceEntry {
  std::size_t iteration = 0;
  std::vector<double> raw;
  std::vector<double> normalized;
  double weighted = 0.0;
  std::vector<double> lambda;
  double max_normalized = 0.0;
  std::size_t worst = 0;
  std::size_t halvings_w = 0;
  std::size_t halvings_h = 0;
  bool stalled = false;
  /// Relative decrease of the weighted objective over the last iteration.
  /// Logged only; never used to stop.
  double delta = 0.0;
};

struct SolveTrace {
  std::vector<Beta> betas;
  std::vector<TraceEntry> entries;
  std::size_t total_halvings = 0;
  std::size_t stalls = 0;

  /// Number of consecutive recorded entries whose weighted objective rose.
  std::size_t monotonicity_violations() const;
};

struct SolveResult {
  FactorPair factors;
  SolveTrace trace;
  Evaluation final_eval;
};

/// Alternating updates (W then H) for cfg.max_iters iterations with fixed
/// weights. Beta in {1, 2} with sparse X runs in O(Kr) per iteration.
SolveResult solve_weighted(const DenseMatrix& X, const FactorPair& init, const ObjectiveSet& obj,
                           const SolverConfig& cfg);
SolveResult solve_weighted(const SparseMatrix& X, const FactorPair& init,
                           const ObjectiveSet& obj, const SolverConfig& cfg);

inline SolveResult solve_weighted(const DataMatrix& X, const FactorPair& init,
                                  const ObjectiveSet& obj, const SolverConfig& cfg) {
  return std::visit([&](const auto& data) { return solve_weighted(data, init, obj, cfg); }, X);
}

/// Throws unless X is finite and nonnegative, and sparse X is only paired
/// with beta in {1, 2}.
void check_data(const DenseMatrix& X, const std::vector<Beta>& betas);
void check_data(const SparseMatrix& X, const std::vector<Beta>& betas);

}  // namespace drnmf
