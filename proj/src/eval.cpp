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

#include "drnmf/eval.hpp"

#include <algorithm>
#include <limits>

#include "drnmf/error.hpp"

namespace drnmf {

std::vector<std::size_t> cluster_assign(const DenseMatrix& W) {
  if (W.empty()) throw DimensionError("cluster_assign: empty W");
  if (!W.is_nonnegative()) throw ValidationError("cluster_assign: W must be nonnegative");
  std::vector<double> col_sum(W.cols(), 0.0);
  for (std::size_t i = 0; i < W.rows(); ++i)
    for (std::size_t k = 0; k < W.cols(); ++k) col_sum[k] += W(i, k);
  for (double s : col_sum)
    if (!(s > 0.0)) throw ValidationError("cluster_assign: W has an all-zero column");

  std::vector<std::size_t> out(W.rows(), 0);
  for (std::size_t i = 0; i < W.rows(); ++i) {
    double best = -1.0;
    for (std::size_t k = 0; k < W.cols(); ++k) {
      const double v = W(i, k) / col_sum[k];
      if (v > best) {
        best = v;
        out[i] = k;
      }
    }
  }
  return out;
}

std::vector<std::size_t> linear_assignment(const DenseMatrix& cost) {
  const std::size_t n = cost.rows();
  if (n != cost.cols()) throw DimensionError("linear_assignment: cost matrix must be square");
  if (n == 0) return {};
  if (!cost.all_finite()) throw ValidationError("linear_assignment: non-finite cost");

  // Shortest augmenting path with potentials; 1-based with a virtual column 0.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> assignment(n, 0);
  for (std::size_t j = 1; j <= n; ++j) assignment[match[j] - 1] = j - 1;
  return assignment;
}

DenseMatrix intersection_counts(const std::vector<std::size_t>& predicted,
                                const std::vector<std::size_t>& truth) {
  if (predicted.size() != truth.size())
    throw DimensionError("clustering: predicted has " + std::to_string(predicted.size()) +
                         " rows, truth has " + std::to_string(truth.size()));
  if (predicted.empty()) throw DimensionError("clustering: no rows");
  const std::size_t p = *std::max_element(predicted.begin(), predicted.end()) + 1;
  const std::size_t t = *std::max_element(truth.begin(), truth.end()) + 1;
  DenseMatrix counts(p, t);
  for (std::size_t i = 0; i < predicted.size(); ++i) counts(predicted[i], truth[i]) += 1.0;
  return counts;
}

double clustering_accuracy(const std::vector<std::size_t>& predicted,
                           const std::vector<std::size_t>& truth) {
  const DenseMatrix counts = intersection_counts(predicted, truth);
  const std::size_t k = std::max(counts.rows(), counts.cols());
  // Pad to square; unmatched clusters pair with empty classes at zero gain.
  DenseMatrix cost(k, k);
  for (std::size_t a = 0; a < counts.rows(); ++a)
    for (std::size_t b = 0; b < counts.cols(); ++b) cost(a, b) = -counts(a, b);
  const auto assignment = linear_assignment(cost);
  double matched = 0.0;
  for (std::size_t a = 0; a < k; ++a) matched -= cost(a, assignment[a]);
  return matched / static_cast<double>(predicted.size());
}

std::vector<double> relative_errors(const DataMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj) {
  for (double e : obj.ref_errors)
    if (!(e > 0.0)) throw ValidationError("relative_errors: reference errors must be positive");
  if (obj.ref_errors.size() != obj.betas.size())
    throw DimensionError("relative_errors: one reference error per beta required");
  std::vector<double> out;
  out.reserve(obj.size());
  for (std::size_t b = 0; b < obj.size(); ++b)
    out.push_back(beta_div_matrix(X, W, H, obj.betas[b]) / obj.ref_errors[b] - 1.0);
  return out;
}

}  // namespace drnmf
