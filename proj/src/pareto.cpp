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

#include "drnmf/pareto.hpp"

#include <limits>

#include "drnmf/error.hpp"
#include "drnmf/scaling.hpp"
#include "format.hpp"

namespace drnmf {

std::vector<ParetoPoint> sweep_weights(const DataMatrix& X, const FactorPair& init,
                                       std::span<const Beta> betas,
                                       std::span<const double> ref_errors,
                                       std::span<const std::vector<double>> weights,
                                       const SolverConfig& cfg) {
  std::vector<ParetoPoint> out;
  out.reserve(weights.size());
  for (const auto& lambda : weights) {
    const ObjectiveSet obj = build_objective_set({betas.begin(), betas.end()},
                                                 {ref_errors.begin(), ref_errors.end()}, lambda);
    const SolveResult res = solve_weighted(X, init, obj, cfg);
    ParetoPoint p;
    p.ell = std::numeric_limits<double>::quiet_NaN();
    p.lambda = obj.weights;
    p.raw = res.final_eval.raw;
    p.normalized = res.final_eval.normalized;
    p.weighted = res.final_eval.weighted;
    p.w_norm = res.factors.W.frobenius_norm();
    p.h_norm = res.factors.H.frobenius_norm();
    p.halvings = res.trace.total_halvings;
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<ParetoPoint> pareto_sweep(const DataMatrix& X, const FactorPair& init,
                                      std::span<const Beta> betas,
                                      std::span<const double> ref_errors, std::size_t grid,
                                      const SolverConfig& cfg) {
  if (betas.size() != 2) throw ValidationError("pareto grid needs exactly two betas");
  if (grid < 2) throw ValidationError("pareto grid needs at least 2 points");
  std::vector<std::vector<double>> weights;
  std::vector<double> ells;
  for (std::size_t i = 0; i < grid; ++i) {
    const double ell = static_cast<double>(i) / static_cast<double>(grid - 1);
    ells.push_back(ell);
    weights.push_back({ell, 1.0 - ell});
  }
  auto points = sweep_weights(X, init, betas, ref_errors, weights, cfg);
  for (std::size_t i = 0; i < grid; ++i) points[i].ell = ells[i];
  return points;
}

bool strictly_dominates(const ParetoPoint& a, const ParetoPoint& b, double tol) {
  if (a.normalized.size() != b.normalized.size() || a.normalized.empty()) return false;
  for (std::size_t k = 0; k < a.normalized.size(); ++k)
    if (!(a.normalized[k] * (1.0 + tol) < b.normalized[k])) return false;
  return true;
}

std::vector<std::size_t> dominated_points(std::span<const ParetoPoint> points, double tol) {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < points.size(); ++b) {
    for (std::size_t a = 0; a < points.size(); ++a) {
      if (a != b && strictly_dominates(points[a], points[b], tol)) {
        out.push_back(b);
        break;
      }
    }
  }
  return out;
}

void write_pareto_csv(std::ostream& os, std::span<const Beta> betas,
                      std::span<const ParetoPoint> points) {
  os << "ell";
  for (Beta b : betas) os << ",lambda_" << to_string(b);
  for (Beta b : betas) os << ",dbar_" << to_string(b);
  for (Beta b : betas) os << ",d_" << to_string(b);
  os << ",weighted\n";
  for (const auto& p : points) {
    os << format_double(p.ell);
    for (double v : p.lambda) os << ',' << format_double(v);
    for (double v : p.normalized) os << ',' << format_double(v);
    for (double v : p.raw) os << ',' << format_double(v);
    os << ',' << format_double(p.weighted) << '\n';
  }
}

}  // namespace drnmf
