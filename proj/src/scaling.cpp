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

#include "drnmf/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "drnmf/error.hpp"

namespace drnmf {

bool ReferenceErrors::any_floored() const {
  return std::any_of(floored.begin(), floored.end(), [](bool f) { return f; });
}

ObjectiveSet single_objective(Beta beta) { return {{beta}, {1.0}, {1.0}}; }

ReferenceErrors compute_reference_errors(const DataMatrix& X, const FactorPair& init,
                                         std::span<const Beta> betas, const SolverConfig& cfg) {
  if (betas.empty()) throw ValidationError("reference errors: no betas given");
  ReferenceErrors out;
  out.betas.assign(betas.begin(), betas.end());
  for (Beta beta : betas) {
    const SolveResult res = solve_weighted(X, init, single_objective(beta), cfg);
    const double e = res.final_eval.raw[0];
    const bool floored = !(e >= kMinReferenceError);
    out.values.push_back(floored ? kMinReferenceError : e);
    out.floored.push_back(floored);
  }
  return out;
}

ObjectiveSet build_objective_set(std::vector<Beta> betas, std::vector<double> ref_errors,
                                 std::vector<double> weights) {
  if (betas.size() != ref_errors.size() || betas.size() != weights.size())
    throw ValidationError("objective set: betas, reference errors and weights differ in length");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("objective set: weights must be >= 0");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("objective set: weights are all zero");
  for (double& w : weights) w /= total;
  // Push any rounding residue onto the largest weight so the sum is 1.
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (sum != 1.0) {
    const auto it = std::max_element(weights.begin(), weights.end());
    *it += 1.0 - sum;
  }
  ObjectiveSet obj{std::move(betas), std::move(ref_errors), std::move(weights)};
  obj.validate();
  return obj;
}

}  // namespace drnmf
