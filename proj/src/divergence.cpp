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

#include "drnmf/divergence.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "beta_terms.hpp"
#include "drnmf/error.hpp"
#include "drnmf/kernels.hpp"

namespace drnmf {

Beta::Beta(double value) : value_(value) {
  if (!std::isfinite(value) || value < 0.0)
    throw ValidationError("beta must be finite and >= 0, got " + std::to_string(value));
}

std::string to_string(Beta beta) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, beta.value());
  return std::string(buf, res.ptr);
}

std::vector<Beta> make_betas(const std::vector<double>& values) {
  std::vector<Beta> out;
  out.reserve(values.size());
  for (double v : values) out.emplace_back(v);
  return out;
}

double beta_div_scalar(double x, double y, Beta beta) {
  if (!(y > 0.0) || !std::isfinite(y)) throw DomainError("beta divergence needs y > 0");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("beta divergence needs x >= 0");
  if (beta.is_itakura_saito() && x == 0.0)
    throw DomainError("Itakura-Saito divergence is undefined at x = 0");
  if (x == y) return 0.0;
  const auto kind = detail::kind_of(beta);
  // Rounding can push a near-zero value slightly negative.
  return std::max(0.0, detail::divergence_term(kind, beta.value(), x, y));
}

void ObjectiveSet::validate() const {
  if (betas.empty()) throw ValidationError("objective set needs at least one beta");
  if (ref_errors.size() != betas.size() || weights.size() != betas.size())
    throw ValidationError("objective set: betas, ref_errors and weights differ in length");
  for (std::size_t a = 0; a < betas.size(); ++a)
    for (std::size_t b = a + 1; b < betas.size(); ++b)
      if (betas[a] == betas[b]) throw ValidationError("objective set: duplicate beta " + to_string(betas[a]));
  for (double e : ref_errors)
    if (!(e > 0.0) || !std::isfinite(e))
      throw ValidationError("objective set: reference errors must be finite and > 0");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("objective set: weights must be >= 0");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw ValidationError("objective set: weights must sum to 1");
}

void Evaluation::reweight(const ObjectiveSet& obj) {
  *this = detail::make_evaluation(std::move(raw), obj);
}

namespace detail {

Evaluation make_evaluation(std::vector<double> raw, const ObjectiveSet& obj) {
  Evaluation ev;
  ev.raw = std::move(raw);
  ev.normalized.resize(ev.raw.size());
  for (std::size_t b = 0; b < ev.raw.size(); ++b) {
    ev.normalized[b] = ev.raw[b] / obj.ref_errors[b];
    ev.weighted += obj.weights[b] * ev.normalized[b];
  }
  return ev;
}

std::vector<double> divergences_from_product(const DenseMatrix& X, const DenseMatrix& WH,
                                             const std::vector<Beta>& betas) {
  if (X.rows() != WH.rows() || X.cols() != WH.cols())
    throw DimensionError("divergence: X and WH differ in shape");
  const std::size_t nb = betas.size();
  std::vector<BetaKind> kinds(nb);
  bool needs_positive_x = false;
  for (std::size_t b = 0; b < nb; ++b) {
    kinds[b] = kind_of(betas[b]);
    needs_positive_x = needs_positive_x || kinds[b] == BetaKind::ItakuraSaito;
  }

  const std::size_t m = X.rows();
  std::vector<double> partial(m * nb, 0.0);
  bool zero_seen = false;
  const auto mm = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static) reduction(|| : zero_seen)
  for (std::int64_t ii = 0; ii < mm; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const auto x = X.row(i);
    const auto y = WH.row(i);
    for (std::size_t b = 0; b < nb; ++b) {
      const double bv = betas[b].value();
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += divergence_term(kinds[b], bv, x[j], y[j]);
      partial[i * nb + b] = s;
    }
    if (needs_positive_x)
      for (double v : x) zero_seen = zero_seen || !(v > 0.0);
  }
  if (zero_seen)
    throw DomainError("Itakura-Saito divergence needs X > 0; clamp zero entries first");

  std::vector<double> out(nb, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t b = 0; b < nb; ++b) out[b] += partial[i * nb + b];
  for (double& v : out) {
    if (!std::isfinite(v)) throw NumericError("divergence evaluated to a non-finite value");
    v = std::max(v, 0.0);
  }
  return out;
}

std::vector<double> divergences_sparse(const SparseMatrix& X, const std::vector<double>& wh,
                                       const DenseMatrix& W, const DenseMatrix& H,
                                       const std::vector<Beta>& betas) {
  for (Beta b : betas)
    if (!b.supports_sparse())
      throw ValidationError("sparse evaluation supports beta in {1, 2} only, got " + to_string(b));
  if (wh.size() != X.nnz()) throw DimensionError("divergence: WH support length != nnz");

  const auto x = X.values();
  const std::size_t m = X.rows();
  const auto row_ptr = X.row_ptr();
  const bool want_kl = std::any_of(betas.begin(), betas.end(), [](Beta b) { return b.is_kullback_leibler(); });
  const bool want_fro = std::any_of(betas.begin(), betas.end(), [](Beta b) { return b.is_frobenius(); });

  // Per-row support sums: [x log(x/y) - x] and [x y].
  std::vector<double> kl_rows(m, 0.0);
  std::vector<double> cross_rows(m, 0.0);
  const auto mm = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < mm; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    double kl = 0.0;
    double cross = 0.0;
    for (std::size_t p = row_ptr[i]; p < row_ptr[i + 1]; ++p) {
      kl += x[p] * std::log(x[p] / wh[p]) - x[p];
      cross += x[p] * wh[p];
    }
    kl_rows[i] = kl;
    cross_rows[i] = cross;
  }

  double kl = 0.0;
  double fro = 0.0;
  if (want_kl) {
    kl = std::accumulate(kl_rows.begin(), kl_rows.end(), 0.0);
    // sum_ij (WH)_ij = sum_k colsum(W)_k * rowsum(H)_k
    const auto cw = kernels::col_sums(W);
    const auto rh = kernels::row_sums(H);
    for (std::size_t k = 0; k < cw.size(); ++k) kl += cw[k] * rh[k];
    kl = std::max(kl, 0.0);
  }
  if (want_fro) {
    const double cross = std::accumulate(cross_rows.begin(), cross_rows.end(), 0.0);
    // ||WH||_F^2 = <W^T W, H H^T>
    const DenseMatrix wtw = kernels::matmul_tn(W, W);
    const DenseMatrix hht = kernels::matmul_nt(H, H);
    double model = 0.0;
    for (std::size_t k = 0; k < wtw.size(); ++k) model += wtw.values()[k] * hht.values()[k];
    fro = std::max(0.0, 0.5 * (X.squared_norm() - 2.0 * cross + model));
  }

  std::vector<double> out;
  out.reserve(betas.size());
  for (Beta b : betas) out.push_back(b.is_kullback_leibler() ? kl : fro);
  for (double v : out)
    if (!std::isfinite(v)) throw NumericError("divergence evaluated to a non-finite value");
  return out;
}

}  // namespace detail

namespace {

void check_product_shapes(std::size_t rows, std::size_t cols, const DenseMatrix& W,
                          const DenseMatrix& H) {
  check_factor_shapes(rows, cols, FactorPair{W, H});
}

}  // namespace

double beta_div_matrix(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                       Beta beta) {
  check_product_shapes(X.rows(), X.cols(), W, H);
  const DenseMatrix WH = kernels::matmul(W, H);
  return detail::divergences_from_product(X, WH, {beta})[0];
}

double beta_div_matrix(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                       Beta beta) {
  check_product_shapes(X.rows(), X.cols(), W, H);
  if (!beta.supports_sparse())
    throw ValidationError("sparse evaluation supports beta in {1, 2} only, got " + to_string(beta));
  return detail::divergences_sparse(X, kernels::wh_at_support(W, H, X), W, H, {beta})[0];
}

Evaluation evaluate(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                    const ObjectiveSet& obj) {
  obj.validate();
  check_product_shapes(X.rows(), X.cols(), W, H);
  const DenseMatrix WH = kernels::matmul(W, H);
  return detail::make_evaluation(detail::divergences_from_product(X, WH, obj.betas), obj);
}

Evaluation evaluate(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                    const ObjectiveSet& obj) {
  obj.validate();
  check_product_shapes(X.rows(), X.cols(), W, H);
  const auto wh = kernels::wh_at_support(W, H, X);
  return detail::make_evaluation(detail::divergences_sparse(X, wh, W, H, obj.betas), obj);
}

double weighted_objective(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                          const ObjectiveSet& obj) {
  return evaluate(X, W, H, obj).weighted;
}

double weighted_objective(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                          const ObjectiveSet& obj) {
  return evaluate(X, W, H, obj).weighted;
}

WorstObjective max_normalized(const Evaluation& eval, const ObjectiveSet& obj) {
  if (obj.betas.empty() || eval.normalized.size() != obj.betas.size())
    throw ValidationError("max_normalized: empty or mismatched objective set");
  WorstObjective worst{0, obj.betas[0], eval.normalized[0]};
  for (std::size_t b = 1; b < obj.betas.size(); ++b) {
    const double v = eval.normalized[b];
    if (v > worst.value || (v == worst.value && obj.betas[b] < worst.beta))
      worst = {b, obj.betas[b], v};
  }
  return worst;
}

WorstObjective max_normalized(const DenseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                              const ObjectiveSet& obj) {
  return max_normalized(evaluate(X, W, H, obj), obj);
}

WorstObjective max_normalized(const SparseMatrix& X, const DenseMatrix& W, const DenseMatrix& H,
                              const ObjectiveSet& obj) {
  return max_normalized(evaluate(X, W, H, obj), obj);
}

}  // namespace drnmf
