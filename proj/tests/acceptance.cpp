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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <new>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "drnmf/drnmf.hpp"
#include "oracles.hpp"

// Largest single allocation while tracking is on; used to show the sparse
// path never allocates an m x n buffer.
namespace {
std::atomic<bool> g_tracking{false};
std::atomic<std::size_t> g_largest{0};

void note_alloc(std::size_t n) {
  if (!g_tracking.load(std::memory_order_relaxed)) return;
  std::size_t cur = g_largest.load(std::memory_order_relaxed);
  while (n > cur && !g_largest.compare_exchange_weak(cur, n)) {
  }
}
}  // namespace

void* operator new(std::size_t n) {
  note_alloc(n);
  if (void* p = std::malloc(n == 0 ? 1 : n)) return p;
  throw std::bad_alloc();
}
void* operator new[](std::size_t n) { return ::operator new(n); }
void operator delete(void* p) noexcept { std::free(p); }
void operator delete[](void* p) noexcept { std::free(p); }
void operator delete(void* p, std::size_t) noexcept { std::free(p); }
void operator delete[](void* p, std::size_t) noexcept { std::free(p); }

using namespace drnmf;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << id << " (" << name << "): " << detail
            << std::endl;
  if (!ok) ++g_failures;
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

constexpr std::size_t kIters = 1000;

SynthData noisy_lowrank(std::vector<Beta> noise, std::uint64_t seed) {
  SynthSpec spec;
  spec.noise_betas = std::move(noise);
  spec.seed = seed;
  SynthData d = synth_generate(spec);
  clamp_data(d.X);
  return d;
}

SolverConfig config(std::size_t iters = kIters) {
  SolverConfig cfg;
  cfg.max_iters = iters;
  return cfg;
}

// ---------------------------------------------------------------------------

void criterion_monotone() {
  const SynthData d = noisy_lowrank({Beta(0), Beta(1), Beta(2)}, 1);
  const FactorPair init = init_factors(d.X, 10, InitMode::Random, 1);
  std::size_t solves = 0, violations = 0, stalls = 0;
  auto count = [&](const SolveTrace& t) {
    ++solves;
    stalls += t.stalls;
    for (std::size_t k = 1; k < t.entries.size(); ++k)
      if (t.entries[k].weighted > t.entries[k - 1].weighted) ++violations;
  };
  std::vector<double> ref(3, 0.0);
  for (double b : {0.0, 1.0, 1.5, 2.0}) {
    const auto res = solve_weighted(d.X, init, single_objective(Beta(b)), config());
    count(res.trace);
    if (b == 0.0) ref[0] = res.final_eval.raw[0];
    if (b == 1.0) ref[1] = res.final_eval.raw[0];
    if (b == 2.0) ref[2] = res.final_eval.raw[0];
  }
  for (auto [a, c] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    const auto obj = build_objective_set({Beta(a), Beta(c)}, {ref[a], ref[c]}, {0.5, 0.5});
    count(solve_weighted(d.X, init, obj, config()).trace);
  }
  report(1, "monotone weighted objective", violations == 0,
         std::to_string(solves) + " solves x " + std::to_string(kIters) + " iterations, " +
             std::to_string(violations) + " increases, " + std::to_string(stalls) + " stalled steps");
}

void criterion_classic_mu() {
  const auto X = oracle::random_matrix(30, 20, 2001);
  const auto W0 = oracle::random_matrix(30, 4, 2002);
  const auto H0 = oracle::random_matrix(4, 20, 2003);
  double worst_factor = 0.0, worst_objective = 0.0;
  for (double b : {2.0, 1.0}) {
    const auto obj = single_objective(Beta(b));
    oracle::ClassicMu ref{X, W0, H0, b};
    DenseMatrix W = W0, H = H0;
    SolverConfig cfg = config(50);
    for (int k = 0; k < 50; ++k) {
      W = mu_step_W(X, W, H, obj, cfg).factor;
      H = mu_step_H(X, W, H, obj, cfg).factor;
      ref.iterate();
      worst_factor = std::max({worst_factor, oracle::max_rel_diff(W, ref.W),
                               oracle::max_rel_diff(H, ref.H)});
    }
    oracle::ClassicMu again{X, W0, H0, b};
    const auto res = solve_weighted(X, {W0, H0}, obj, cfg);
    for (const auto& e : res.trace.entries) {
      if (e.iteration > 0) again.iterate();
      worst_objective = std::max(worst_objective, oracle::rel_diff(e.raw[0], again.objective()));
    }
  }
  report(2, "closed-form multiplicative updates", worst_factor <= 1e-12 && worst_objective <= 1e-12,
         "beta 1 and 2, 50 iterations on 30x20 r=4: max factor rel diff " + num(worst_factor) +
             ", max objective rel diff " + num(worst_objective));
}

void criterion_gradient() {
  const auto X = oracle::random_matrix(8, 6, 3001);
  const auto W = oracle::random_matrix(8, 2, 3002);
  const auto H = oracle::random_matrix(2, 6, 3003);
  double worst = 0.0;
  for (double b : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (bool wrt_h : {true, false}) {
      const auto g = wrt_h ? grad_split_H(X, W, H, Beta(b)) : grad_split_W(X, W, H, Beta(b));
      DenseMatrix diff = g.plus;
      for (std::size_t k = 0; k < diff.size(); ++k) diff.values()[k] -= g.minus.values()[k];
      worst = std::max(worst, oracle::gradient_error(diff, oracle::fd_gradient(X, W, H, b, wrt_h)));
    }
  }
  report(3, "gradient split vs finite differences", worst <= 1e-5,
         "8x6 r=2, beta in {0,0.5,1,1.5,2}, H and W: max rel error " + num(worst));
}

void criterion_scaling() {
  const auto X = oracle::random_matrix(20, 15, 4001);
  const auto W = oracle::random_matrix(20, 3, 4002);
  const auto H = oracle::random_matrix(3, 15, 4003);
  double worst = 0.0;
  for (double a : {0.5, 3.0})
    for (double b : {0.0, 1.0, 2.0}) {
      DenseMatrix aX = X, aH = H;
      for (double& v : aX.values()) v *= a;
      for (double& v : aH.values()) v *= a;
      worst = std::max(worst, oracle::rel_diff(beta_div_matrix(aX, W, aH, Beta(b)),
                                               std::pow(a, b) * beta_div_matrix(X, W, H, Beta(b))));
    }
  report(4, "scaling law", worst <= 1e-10, "alpha in {0.5,3}, beta in {0,1,2}: max rel diff " + num(worst));
}

void criterion_sparse() {
  const std::size_t m = 200, n = 300, r = 10;
  std::mt19937_64 gen(5001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u(gen) < 0.05) t.push_back({i, j, 1.0 + std::floor(5.0 * u(gen))});
  const SparseMatrix S = SparseMatrix::from_triplets(m, n, t);
  const DenseMatrix D = S.to_dense();
  const FactorPair init = init_factors(D, r, InitMode::Random, 5);
  const SolverConfig cfg = config(300);
  const std::size_t buffer = m * n * sizeof(double);

  double worst = 0.0;
  std::size_t largest_sparse = 0, largest_dense = 0;
  std::vector<ObjectiveSet> objs{single_objective(Beta(1)), single_objective(Beta(2)),
                                 build_objective_set({Beta(1), Beta(2)}, {500.0, 300.0}, {1, 1})};
  for (const auto& obj : objs) {
    g_largest = 0;
    g_tracking = true;
    const auto sp = solve_weighted(S, init, obj, cfg);
    g_tracking = false;
    largest_sparse = std::max(largest_sparse, g_largest.load());
    g_largest = 0;
    g_tracking = true;
    const auto de = solve_weighted(D, init, obj, cfg);
    g_tracking = false;
    largest_dense = std::max(largest_dense, g_largest.load());
    for (std::size_t k = 0; k < sp.trace.entries.size(); ++k) {
      worst = std::max(worst, oracle::rel_diff(sp.trace.entries[k].weighted, de.trace.entries[k].weighted));
      for (std::size_t b = 0; b < obj.size(); ++b)
        worst = std::max(worst, oracle::rel_diff(sp.trace.entries[k].raw[b], de.trace.entries[k].raw[b]));
    }
    worst = std::max({worst, oracle::max_rel_diff(sp.factors.W, de.factors.W),
                      oracle::max_rel_diff(sp.factors.H, de.factors.H)});
  }
  const bool ok = worst <= 1e-10 && largest_sparse < buffer && largest_dense >= buffer;
  report(5, "sparse/dense agreement", ok,
         "200x300 at 5% (nnz " + std::to_string(S.nnz()) + "), beta 1, 2 and {1,2}, 300 iterations: max rel diff " +
             num(worst) + "; largest allocation sparse " + std::to_string(largest_sparse) +
             " B vs m*n buffer " + std::to_string(buffer) + " B (dense run: " +
             std::to_string(largest_dense) + " B)");
}

// Criteria 6 and 7 share data, reference solves and the warm start.
void criteria_dr_and_pareto() {
  const std::vector<std::pair<double, double>> pairs{{0, 1}, {0, 2}, {1, 2}};
  bool balance_ok = true, blowup_ok = true, anchors_ok = true, monotone_ok = true;
  std::string balance_detail, blowup_detail, pareto_detail;
  double worst_anchor = 0.0, worst_step = 0.0;
  for (auto [b1, b2] : pairs) {
    const std::vector<Beta> betas{Beta(b1), Beta(b2)};
    const SynthData d = noisy_lowrank(betas, 6000 + static_cast<std::uint64_t>(b1 * 10 + b2));
    const FactorPair init{d.W_true, d.H_true};
    const auto solo1 = solve_weighted(d.X, init, single_objective(betas[0]), config());
    const auto solo2 = solve_weighted(d.X, init, single_objective(betas[1]), config());
    const std::vector<double> refs{solo1.final_eval.raw[0], solo2.final_eval.raw[0]};

    const auto dr = solve_dr(d.X, init, betas, refs, config());
    const auto& nv = dr.final_eval.normalized;
    const double gap = std::abs(nv[0] - nv[1]);
    const double mx = std::max(nv[0], nv[1]);
    bool simplex = true;
    for (const auto& e : dr.trace.entries)
      simplex = simplex && std::abs(e.lambda[0] + e.lambda[1] - 1.0) <= 1e-12;
    balance_ok = balance_ok && gap <= 0.05 && mx <= 1.10 && simplex;
    balance_detail += " {" + to_string(betas[0]) + "," + to_string(betas[1]) + "}: dbar=(" +
                      num(nv[0]) + ", " + num(nv[1]) + ") gap " + num(gap) + ";";

    // Cross errors of the single-objective solutions.
    const double cross1 = beta_div_matrix(d.X, solo2.factors.W, solo2.factors.H, betas[0]) / refs[0] - 1;
    const double cross2 = beta_div_matrix(d.X, solo1.factors.W, solo1.factors.H, betas[1]) / refs[1] - 1;
    blowup_detail += " {" + to_string(betas[0]) + "," + to_string(betas[1]) + "}: " + num(100 * cross1) +
                     "% / " + num(100 * cross2) + "%;";
    if (b1 == 0 && b2 == 2) blowup_ok = cross1 >= 0.10;

    const auto pts = pareto_sweep(d.X, init, betas, refs, 11, config());
    worst_anchor = std::max({worst_anchor, std::abs(pts.back().normalized[0] - 1.0),
                             std::abs(pts.front().normalized[1] - 1.0)});
    for (std::size_t i = 1; i < pts.size(); ++i) {
      // Moving weight onto beta1 should not raise dbar1 nor lower dbar2.
      const double up1 = pts[i].normalized[0] / pts[i - 1].normalized[0] - 1.0;
      const double down2 = 1.0 - pts[i].normalized[1] / pts[i - 1].normalized[1];
      worst_step = std::max({worst_step, up1, down2});
    }
    pareto_detail += " {" + to_string(betas[0]) + "," + to_string(betas[1]) + "} dominated=" +
                     std::to_string(dominated_points(pts, 0.0).size()) + ";";
  }
  anchors_ok = worst_anchor <= 1e-6;
  monotone_ok = worst_step <= 0.02;
  report(6, "DR balance", balance_ok && blowup_ok,
         "warm start at true factors, 1000 iterations;" + balance_detail +
             " single-objective cross error (beta1 at beta2's fit / beta2 at beta1's fit):" + blowup_detail);
  report(7, "Pareto sweep shape", anchors_ok && monotone_ok,
         "11-point grids: max endpoint |dbar-1| " + num(worst_anchor) +
             ", max monotonicity violation " + num(100 * worst_step) + "%;" + pareto_detail);
}

void criterion_accuracy() {
  std::mt19937_64 gen(8001);
  int mismatches = 0;
  for (int t = 0; t < 200; ++t) {
    const std::size_t m = 1 + gen() % 50;
    const std::size_t r = 1 + gen() % 6;
    const std::size_t rt = 1 + gen() % 6;
    std::vector<std::size_t> p(m), q(m);
    for (std::size_t i = 0; i < m; ++i) {
      p[i] = gen() % r;
      q[i] = gen() % rt;
    }
    const double fast = clustering_accuracy(p, q);
    const double brute = static_cast<double>(oracle::brute_force_matches(p, q)) / static_cast<double>(m);
    if (fast != brute) ++mismatches;
  }
  report(8, "accuracy matcher vs exhaustive search", mismatches == 0,
         "200 instances, r <= 6, m <= 50: " + std::to_string(mismatches) + " mismatches");
}

void criterion_lambda() {
  bool hand = lambda_update(std::vector<double>{0.5, 0.5}, 0, dr_step_size(1)) == std::vector<double>{0.75, 0.25};
  hand = hand && lambda_update(std::vector<double>{0.75, 0.25}, 1, dr_step_size(2)) ==
                     std::vector<double>{0.5, 0.5};
  hand = hand && lambda_update(std::vector<double>{0.25, 0.25, 0.5}, 1, 1.0) ==
                     std::vector<double>{0.125, 0.625, 0.25};
  hand = hand && lambda_update(std::vector<double>{0.5, 0.5}, 1, 0.0) == std::vector<double>{0.5, 0.5};

  std::mt19937_64 gen(9001);
  double worst = 0.0;
  bool interior = true;
  for (int seq = 0; seq < 10000; ++seq) {
    const std::size_t n = 2 + gen() % 4;
    const std::size_t len = 1 + gen() % 100;
    std::vector<double> lam(n, 1.0 / static_cast<double>(n));
    for (std::size_t k = 1; k <= len; ++k) {
      lam = lambda_update(lam, gen() % n, dr_step_size(k));
      double s = 0.0;
      for (double v : lam) {
        s += v;
        interior = interior && v > 0.0 && v < 1.0;
      }
      worst = std::max(worst, std::abs(s - 1.0));
    }
  }
  report(9, "weight update", hand && worst <= 1e-12 && interior,
         std::string("hand cases ") + (hand ? "exact" : "MISMATCH") +
             "; 10000 random sequences: max |sum - 1| " + num(worst) +
             (interior ? ", all weights inside (0,1)" : ", weight left (0,1)"));
}

void criterion_scope() {
  std::cout << "INFO  criterion 10 (scope): external corpora accuracies, audio errors, note-frequency "
               "peaks and qualitative separations need data that is not shipped; the accuracy and "
               "relative-error code paths are exercised by criteria 6-8 on synthetic data."
            << std::endl;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  auto timed = [&](void (*fn)()) {
    try {
      fn();
    } catch (const std::exception& e) {
      std::cout << "FAIL  exception: " << e.what() << std::endl;
      ++g_failures;
    }
  };
  timed(criterion_monotone);
  timed(criterion_classic_mu);
  timed(criterion_gradient);
  timed(criterion_scaling);
  timed(criterion_sparse);
  timed(criteria_dr_and_pareto);
  timed(criterion_accuracy);
  timed(criterion_lambda);
  criterion_scope();
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criteria failed")
            << " in " << num(secs) << " s" << std::endl;
  return g_failures == 0 ? 0 : 1;
}
