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

// Serial reference kernels against their OpenMP versions, plus one full
// multiplicative-update iteration.

#include <benchmark/benchmark.h>

#include <random>

#include "drnmf/kernels.hpp"
#include "drnmf/mu.hpp"
#include "drnmf/scaling.hpp"

using namespace drnmf;

namespace {

DenseMatrix random_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  DenseMatrix out(rows, cols);
  for (double& v : out.values()) v = u(gen);
  return out;
}

SparseMatrix random_sparse(std::size_t m, std::size_t n, double density, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Triplet> t;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (u(gen) < density) t.push_back({i, j, 1.0 + u(gen)});
  return SparseMatrix::from_triplets(m, n, std::move(t));
}

constexpr std::size_t kRank = 10;

void BM_matmul_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto W = random_matrix(n, kRank, 1), H = random_matrix(kRank, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::matmul(W, H));
}
void BM_matmul_omp(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto W = random_matrix(n, kRank, 1), H = random_matrix(kRank, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::matmul(W, H));
}

void BM_matmul_tn_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto W = random_matrix(n, kRank, 1), R = random_matrix(n, n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::matmul_tn(W, R));
}
void BM_matmul_tn_omp(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto W = random_matrix(n, kRank, 1), R = random_matrix(n, n, 3);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::matmul_tn(W, R));
}

void BM_sparse_tn_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto S = random_sparse(n, n, 0.05, 4);
  const auto W = random_matrix(n, kRank, 5);
  const std::vector<double> vals(S.values().begin(), S.values().end());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::serial::sparse_tn(W, S, vals));
}
void BM_sparse_tn_omp(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto S = random_sparse(n, n, 0.05, 4);
  const auto W = random_matrix(n, kRank, 5);
  const std::vector<double> vals(S.values().begin(), S.values().end());
  for (auto _ : st) benchmark::DoNotOptimize(kernels::sparse_tn(W, S, vals));
}

void BM_solve_iteration(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto X = random_matrix(n, n, 6);
  const FactorPair init{random_matrix(n, kRank, 7), random_matrix(kRank, n, 8)};
  SolverConfig cfg;
  cfg.max_iters = 1;
  const auto obj = single_objective(Beta(1.5));
  for (auto _ : st) benchmark::DoNotOptimize(solve_weighted(X, init, obj, cfg));
}

}  // namespace

BENCHMARK(BM_matmul_serial)->Arg(200)->Arg(800);
BENCHMARK(BM_matmul_omp)->Arg(200)->Arg(800);
BENCHMARK(BM_matmul_tn_serial)->Arg(200)->Arg(800);
BENCHMARK(BM_matmul_tn_omp)->Arg(200)->Arg(800);
BENCHMARK(BM_sparse_tn_serial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_sparse_tn_omp)->Arg(1000)->Arg(4000);
BENCHMARK(BM_solve_iteration)->Arg(200);

BENCHMARK_MAIN();
