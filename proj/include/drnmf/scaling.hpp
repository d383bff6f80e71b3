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

#include <span>
#include <vector>

#include "drnmf/divergence.hpp"
#include "drnmf/mu.hpp"

namespace drnmf {

/// Reference errors below this are raised to it and flagged; dividing by a
/// near-zero e_beta would swamp every other objective.
inline constexpr double kMinReferenceError = 1e-12;

struct ReferenceErrors {
  std::vector<Beta> betas;
  std::vector<double> values;
  /// floored[b] is true when values[b] was raised to kMinReferenceError.
  std::vector<bool> floored;

  bool any_floored() const;
};

/// e_beta = D_beta(X, W_beta H_beta), where (W_beta, H_beta) comes from
/// solve_weighted with the single objective beta (unit reference, lambda = 1),
/// started from `init` and run for cfg.max_iters iterations. Every beta
/// starts from the same init.
ReferenceErrors compute_reference_errors(const DataMatrix& X, const FactorPair& init,
                                         std::span<const Beta> betas, const SolverConfig& cfg);

/// Objective set for one divergence with e_beta = 1 and lambda = (1).
ObjectiveSet single_objective(Beta beta);

/// Assembles an ObjectiveSet, renormalizing the weights onto the simplex.
/// Throws ValidationError on length mismatch, negative or all-zero weights,
/// or nonpositive reference errors.
ObjectiveSet build_objective_set(std::vector<Beta> betas, std::vector<double> ref_errors,
                                 std::vector<double> weights);

}  // namespace drnmf
