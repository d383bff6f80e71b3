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

#include <compare>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "drnmf/dense_matrix.hpp"
#include "drnmf/sparse_matrix.hpp"

namespace drnmf {

/// Exponent of a beta-divergence. Any finite value >= 0.
class Beta {
 public:
  constexpr Beta() = default;
  explicit Beta(double value);

  constexpr double value() const noexcept { return value_; }
  bool is_itakura_saito() const noexcept { return value_ == 0.0; }
  bool is_kullback_leibler() const noexcept { return value_ == 1.0; }
  bool is_frobenius() const noexcept { return value_ == 2.0; }
  /// True for the divergences whose updates exploit sparsity (beta = 1, 2).
  bool supports_sparse() const noexcept { return value_ == 1.0 || value_ == 2.0; }

  friend constexpr auto operator<=>(const Beta&, const Beta&) = default;

 private:
  double value_ = 0.0;
};

std::string to_string(Beta beta);
std::vector<Beta> make_betas(const std::vector<double>& values);

/// D_beta(x, y) for scalars.
///
///   beta = 0:  x/y - log(x/y) - 1                     (Itakura-Saito)
///   beta = 1:  x log(x/y) - x + y, and y when x = 0   (Kullback-Leibler)
///   else:      (x^b + (b-1) y^b - b x y^(b-1)) / (b (b-1))
///
/// Throws DomainError when y <= 0, x < 0, or x = 0 with beta = 0.
double beta_div_scalar(double x, double y, Beta beta);

/// The finite set of divergences combined in one objective, with the
/// reference error e_beta normalizing each one and simplex weights lambda.
struct ObjectiveSet {
  std::vector<Beta> betas;
  std::vector<double> ref_errors;
  std::vector<double> weights;

  std::size_t size() const noexcept { return betas.size(); }
  /// lambda_beta / e_beta: the multiplier of D_beta in the weighted objective.
  double coefficient(std::size_t b) const { return weights[b] / ref_errors[b]; }
  /// Throws ValidationError unless every invariant holds.
  void validate() const;
};

/// Divergence values for one (W, H): raw D_beta, normalized D_beta / e_beta,
/// and their lambda-weighted sum.
struct Evaluation {
  std::vector<double> raw;
  std::vector<double> normalized;
  double weighted = 0.0;

  /// Recomputes `normalized` and `weighted` from `raw` for new weights.
  void reweight(const ObjectiveSet& obj);
};

/// Index and value of the largest normalized divergence. Ties resolve toward
/// the smallest beta.
struct WorstObjective {
  std::size_t index = 0;
  Beta beta;
  double value = 0.0;
};

double beta_div_matrix(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                       Beta beta);
/// Sparse path, beta in {1, 2} only. Never forms the m x n product WH.
double beta_div_matrix(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                       Beta beta);

Evaluation evaluate(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                    const ObjectiveSet& obj);
Evaluation evaluate(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                    const ObjectiveSet& obj);

/// sum_beta lambda_beta * D_beta(X, WH) / e_beta.
double weighted_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                          const ObjectiveSet& obj);
double weighted_objective(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                          const ObjectiveSet& obj);

WorstObjective max_normalized(const Evaluation& eval, const ObjectiveSet& obj);
WorstObjective max_normalized(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                              const ObjectiveSet& obj);
WorstObjective max_normalized(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                              const ObjectiveSet& obj);

inline double beta_div_matrix(const DataMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                              Beta beta) {
  return std::visit([&](const auto& data) { return beta_div_matrix(data, W, H, beta); }, X);
}

inline Evaluation evaluate(const DataMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                           const ObjectiveSet& obj) {
  return std::visit([&](const auto& data) { return evaluate(data, W, H, obj); }, X);
}

namespace detail {

/// Raw divergences given the product WH. Reductions run per row and are
/// summed serially, so results do not depend on the thread count.
std::vector<double> divergences_from_product(const DenseMatrix& X, const DenseMatrix& WH,
                                             const std::vector<Beta>& betas);
/// Raw divergences for sparse X given WH at the support of X.
std::vector<double> divergences_sparse(const SparseMatrix& X, const std::vector<double>& wh,
                                       const DenseMatrix& W, const DenseMatrix& H,
                                       const std::vector<Beta>& betas);

Evaluation make_evaluation(std::vector<double> raw, const ObjectiveSet& obj);

}  // namespace detail

}  // namespace drnmf
