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

// Solver state shared by solve_weighted and solve_dr. An engine owns the
// factors, a cache of WH (dense: the full product; sparse: WH on the support
// of X) and the evaluation of the current iterate. Every accepted step
// carries its evaluation forward, so the objective that the next step must
// not exceed is exactly the value the previous step accepted.

#include <cmath>
#include <cstdint>
#include <vector>

#include "beta_terms.hpp"
#include "drnmf/error.hpp"
#include "drnmf/kernels.hpp"
#include "drnmf/mu.hpp"

namespace drnmf::detail {

enum class Side { W, H };

struct StepStats {
  std::size_t halvings = 0;
  bool stalled = false;
};

/// max(floor, (1 - g) * current + g * proposal), entrywise.
inline void blend_into(const DenseMatrix& current, const DenseMatrix& proposal, double gamma,
                       double floor, DenseMatrix& out) {
  const auto c = current.values();
  const auto p = proposal.values();
  auto o = out.values();
  for (std::size_t k = 0; k < o.size(); ++k) {
    const double v = gamma == 1.0 ? p[k] : (1.0 - gamma) * c[k] + gamma * p[k];
    o[k] = v < floor ? floor : v;
  }
}

/// current o minus / plus.
inline DenseMatrix mu_proposal(const DenseMatrix& current, const GradientSplit& g) {
  DenseMatrix out(current.rows(), current.cols());
  const auto c = current.values();
  const auto mi = g.minus.values();
  const auto pl = g.plus.values();
  auto o = out.values();
  for (std::size_t k = 0; k < o.size(); ++k) {
    o[k] = c[k] * (mi[k] / pl[k]);
    if (!std::isfinite(o[k])) throw NumericError("multiplicative update produced a non-finite entry");
  }
  return out;
}

class DenseEngine {
 public:
  struct Candidate {
    DenseMatrix product;
    Evaluation eval;
  };

  DenseEngine(const DenseMatrix& X, FactorPair init, ObjectiveSet obj, const SolverConfig& cfg)
      : X_(X), f_(std::move(init)), obj_(std::move(obj)), cfg_(cfg) {
    kernels::matmul_into(f_.W, f_.H, wh_);
    eval_ = make_evaluation(divergences_from_product(X_, wh_, obj_.betas), obj_);
  }

  const FactorPair& factors() const noexcept { return f_; }
  FactorPair& factors() noexcept { return f_; }
  const Evaluation& eval() const noexcept { return eval_; }
  const ObjectiveSet& objective() const noexcept { return obj_; }
  const SolverConfig& config() const noexcept { return cfg_; }

  void set_weights(const std::vector<double>& weights) {
    obj_.weights = weights;
    eval_.reweight(obj_);
  }

  GradientSplit split(Side side) const {
    const std::size_t m = X_.rows();
    const std::size_t n = X_.cols();
    const std::size_t nb = obj_.size();
    std::vector<BetaKind> kinds(nb);
    std::vector<double> coef(nb);
    for (std::size_t b = 0; b < nb; ++b) {
      kinds[b] = kind_of(obj_.betas[b]);
      coef[b] = obj_.coefficient(b);
    }
    DenseMatrix plus_terms(m, n);
    DenseMatrix minus_terms(m, n);
    const auto mm = static_cast<std::int64_t>(m);
#pragma omp parallel for schedule(static)
    for (std::int64_t ii = 0; ii < mm; ++ii) {
      const auto i = static_cast<std::size_t>(ii);
      const auto x = X_.row(i);
      const auto y = wh_.row(i);
      auto ap = plus_terms.row(i);
      auto am = minus_terms.row(i);
      for (std::size_t b = 0; b < nb; ++b) {
        if (coef[b] == 0.0) continue;
        const double bv = obj_.betas[b].value();
        for (std::size_t j = 0; j < n; ++j) {
          const SplitTerm t = split_term(kinds[b], bv, x[j], y[j]);
          ap[j] += coef[b] * t.plus;
          am[j] += coef[b] * t.minus;
        }
      }
    }
    if (side == Side::H)
      return {kernels::matmul_tn(f_.W, plus_terms), kernels::matmul_tn(f_.W, minus_terms)};
    return {kernels::matmul_nt(plus_terms, f_.H), kernels::matmul_nt(minus_terms, f_.H)};
  }

  Candidate evaluate(Side side, const DenseMatrix& factor) const {
    Candidate c;
    if (side == Side::H)
      kernels::matmul_into(f_.W, factor, c.product);
    else
      kernels::matmul_into(factor, f_.H, c.product);
    c.eval = make_evaluation(divergences_from_product(X_, c.product, obj_.betas), obj_);
    return c;
  }

  void accept(Side side, DenseMatrix&& factor, Candidate&& c) {
    (side == Side::H ? f_.H : f_.W) = std::move(factor);
    wh_ = std::move(c.product);
    eval_ = std::move(c.eval);
  }

 private:
  const DenseMatrix& X_;
  FactorPair f_;
  ObjectiveSet obj_;
  SolverConfig cfg_;
  DenseMatrix wh_;
  Evaluation eval_;
};

/// Sparse path for beta in {1, 2}. Nothing of size m x n is ever allocated:
/// the Frobenius denominators use r x r Gram matrices, the KL denominators
/// use column/row sums of the factors, and numerators stream the K stored
/// entries of X.
class SparseEngine {
 public:
  struct Candidate {
    std::vector<double> product;  // WH on the support of X
    Evaluation eval;
  };

  SparseEngine(const SparseMatrix& X, FactorPair init, ObjectiveSet obj, const SolverConfig& cfg)
      : X_(X), f_(std::move(init)), obj_(std::move(obj)), cfg_(cfg) {
    wh_ = kernels::wh_at_support(f_.W, f_.H, X_);
    eval_ = make_evaluation(divergences_sparse(X_, wh_, f_.W, f_.H, obj_.betas), obj_);
  }

  const FactorPair& factors() const noexcept { return f_; }
  FactorPair& factors() noexcept { return f_; }
  const Evaluation& eval() const noexcept { return eval_; }
  const ObjectiveSet& objective() const noexcept { return obj_; }
  const SolverConfig& config() const noexcept { return cfg_; }

  void set_weights(const std::vector<double>& weights) {
    obj_.weights = weights;
    eval_.reweight(obj_);
  }

  GradientSplit split(Side side) const {
    double c_kl = 0.0;
    double c_fro = 0.0;
    for (std::size_t b = 0; b < obj_.size(); ++b) {
      if (obj_.betas[b].is_kullback_leibler()) c_kl = obj_.coefficient(b);
      if (obj_.betas[b].is_frobenius()) c_fro = obj_.coefficient(b);
    }
    const auto x = X_.values();
    std::vector<double> vals(x.size());
    for (std::size_t p = 0; p < x.size(); ++p) {
      double v = 0.0;
      for (std::size_t b = 0; b < obj_.size(); ++b) {
        const double c = obj_.coefficient(b);
        if (c == 0.0) continue;
        v += obj_.betas[b].is_kullback_leibler() ? c * (x[p] / wh_[p]) : c * x[p];
      }
      vals[p] = v;
    }

    const DenseMatrix& W = f_.W;
    const DenseMatrix& H = f_.H;
    const std::size_t r = W.cols();
    if (side == Side::H) {
      DenseMatrix plus(r, H.cols());
      if (c_fro != 0.0) {
        plus = kernels::matmul(kernels::matmul_tn(W, W), H);
        for (double& v : plus.values()) v *= c_fro;
      }
      if (c_kl != 0.0) {
        const auto cw = kernels::col_sums(W);
        for (std::size_t k = 0; k < r; ++k)
          for (double& v : plus.row(k)) v += c_kl * cw[k];
      }
      return {std::move(plus), kernels::sparse_tn(W, X_, vals)};
    }
    DenseMatrix plus(W.rows(), r);
    if (c_fro != 0.0) {
      plus = kernels::matmul(W, kernels::matmul_nt(H, H));
      for (double& v : plus.values()) v *= c_fro;
    }
    if (c_kl != 0.0) {
      const auto rh = kernels::row_sums(H);
      for (std::size_t i = 0; i < W.rows(); ++i) {
        auto row = plus.row(i);
        for (std::size_t k = 0; k < r; ++k) row[k] += c_kl * rh[k];
      }
    }
    return {std::move(plus), kernels::sparse_nt(X_, vals, H)};
  }

  Candidate evaluate(Side side, const DenseMatrix& factor) const {
    const DenseMatrix& W = side == Side::W ? factor : f_.W;
    const DenseMatrix& H = side == Side::H ? factor : f_.H;
    Candidate c;
    c.product = kernels::wh_at_support(W, H, X_);
    c.eval = make_evaluation(divergences_sparse(X_, c.product, W, H, obj_.betas), obj_);
    return c;
  }

  void accept(Side side, DenseMatrix&& factor, Candidate&& c) {
    (side == Side::H ? f_.H : f_.W) = std::move(factor);
    wh_ = std::move(c.product);
    eval_ = std::move(c.eval);
  }

 private:
  const SparseMatrix& X_;
  FactorPair f_;
  ObjectiveSet obj_;
  SolverConfig cfg_;
  std::vector<double> wh_;
  Evaluation eval_;
};

/// One multiplicative update with step halving. On success the engine holds
/// the new factor and its evaluation; on a stall it is left untouched.
template <class Engine>
StepStats mu_step(Engine& engine, Side side) {
  const SolverConfig& cfg = engine.config();
  const DenseMatrix& current = side == Side::H ? engine.factors().H : engine.factors().W;
  const DenseMatrix proposal = mu_proposal(current, engine.split(side));
  const double baseline = engine.eval().weighted;

  DenseMatrix candidate(current.rows(), current.cols());
  double gamma = 1.0;
  for (std::size_t halvings = 0;; ++halvings) {
    blend_into(current, proposal, gamma, cfg.floor, candidate);
    auto c = engine.evaluate(side, candidate);
    if (c.eval.weighted <= baseline) {
      engine.accept(side, std::move(candidate), std::move(c));
      return {halvings, false};
    }
    if (halvings == cfg.max_halvings) return {halvings, true};
    gamma *= 0.5;
  }
}

}  // namespace drnmf::detail
