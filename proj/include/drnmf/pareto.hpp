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
#include <ostream>
#include <span>
#include <vector>

#include "drnmf/divergence.hpp"
#include "drnmf/mu.hpp"

namespace drnmf {

struct ParetoPoint {
  /// Weight of the first objective (two-objective grids); NaN for custom lists.
  double ell = 0.0;
  std::vector<double> lambda;
  std::vector<double> raw;
  std::vector<double> normalized;
  double weighted = 0.0;
  double w_norm = 0.0;
  double h_norm = 0.0;
  std::size_t halvings = 0;
};

/// Weighted-sum solves for lambda = (l, 1 - l), l = 0, 1/(grid-1), ..., 1,
/// each from the same init and sharing `ref_errors`. Results ordered by l.
std::vector<ParetoPoint> pareto_sweep(const DataMatrix& X, const FactorPair& init,
                                      std::span<const Beta> betas,
                                      std::span<const double> ref_errors, std::size_t grid,
                                      const SolverConfig& cfg);

/// Same, for an explicit list of weight vectors (any number of objectives).
std::vector<ParetoPoint> sweep_weights(const DataMatrix& X, const FactorPair& init,
                                       std::span<const Beta> betas,
                                       std::span<const double> ref_errors,
                                       std::span<const std::vector<double>> weights,
                                       const SolverConfig& cfg);

/// True when a is better than b by more than the relative slack `tol` in
/// every normalized objective.
bool strictly_dominates(const ParetoPoint& a, const ParetoPoint& b, double tol);

/// Indices of points strictly dominated (beyond `tol`) by another point.
std::vector<std::size_t> dominated_points(std::span<const ParetoPoint> points, double tol);

/// CSV: ell, lambda_<beta>..., dbar_<beta>..., d_<beta>..., weighted.
void write_pareto_csv(std::ostream& os, std::span<const Beta> betas,
                      std::span<const ParetoPoint> points);

}  // namespace drnmf
