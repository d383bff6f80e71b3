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
#include <span>
#include <vector>

#include "drnmf/divergence.hpp"
#include "drnmf/mu.hpp"

namespace drnmf {

/// Dual weight update toward the currently worst objective:
///   lambda <- (lambda + rho * e_worst) / ||lambda + rho * e_worst||_1.
/// Throws ValidationError on a bad index, negative rho or a lambda off the
/// simplex.
std::vector<double> lambda_update(std::span<const double> lambda, std::size_t worst, double rho);

/// Step size of the k-th weight update (k >= 1): rho_k = 1 / k.
inline double dr_step_size(std::size_t k) { return 1.0 / static_cast<double>(k); }

struct DrResult {
  FactorPair factors;
  /// Betas, reference errors and the final weights.
  ObjectiveSet objective;
  /// entry k holds the weights used during iteration k, the normalized
  /// errors after it, and the running max (max_normalized / worst).
  SolveTrace trace;
  Evaluation final_eval;
};

/// Distributionally robust NMF: min over (W, H) of max_beta D_beta / e_beta.
///
/// Starts from uniform weights. Each iteration applies one W and one H
/// multiplicative update for the current weights, then moves the weights
/// toward argmax_beta D_beta / e_beta with step 1/k. `ref_errors` must come
/// from compute_reference_errors (or an equivalent normalization).
DrResult solve_dr(const DenseMatrix& X, const FactorPair& init, std::span<const Beta> betas,
                  std::span<const double> ref_errors, const SolverConfig& cfg);
DrResult solve_dr(const SparseMatrix& X, const FactorPair& init, std::span<const Beta> betas,
                  std::span<const double> ref_errors, const SolverConfig& cfg);

inline DrResult solve_dr(const DataMatrix& X, const FactorPair& init, std::span<const Beta> betas,
                         std::span<const double> ref_errors, const SolverConfig& cfg) {
  return std::visit([&](const auto& data) { return solve_dr(data, init, betas, ref_errors, cfg); },
                    X);
}

}  // namespace drnmf
