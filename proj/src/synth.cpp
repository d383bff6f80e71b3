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

#include <algorithm>
#include <cmath>

#include "drnmf/data.hpp"
#include "drnmf/error.hpp"
#include "drnmf/kernels.hpp"
#include "rng.hpp"

namespace drnmf {

void SynthSpec::validate() const {
  if (m == 0 || n == 0 || r == 0) throw ValidationError("synth: m, n and r must be >= 1");
  if (!(noise_level >= 0.0) || !std::isfinite(noise_level))
    throw ValidationError("synth: noise level must be finite and >= 0");
  if (noise_level > 0.0 && noise_betas.empty())
    throw ValidationError("synth: noise needs at least one noise beta");
  for (Beta b : noise_betas)
    if (!(b.is_itakura_saito() || b.is_kullback_leibler() || b.is_frobenius()))
      throw ValidationError("synth: noise betas must be drawn from {0, 1, 2}, got " + to_string(b));
}

namespace {

DenseMatrix uniform_matrix(detail::Rng& rng, std::size_t rows, std::size_t cols) {
  DenseMatrix out(rows, cols);
  for (double& v : out.values()) v = rng.uniform();
  return out;
}

// Unit-Frobenius-norm noise component tied to one divergence, or an empty
// matrix when the draw is identically zero.
DenseMatrix noise_component(detail::Rng& rng, Beta beta, const DenseMatrix& clean) {
  DenseMatrix out(clean.rows(), clean.cols());
  auto v = out.values();
  const auto c = clean.values();
  if (beta.is_itakura_saito()) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = c[k] * rng.normal();
  } else if (beta.is_kullback_leibler()) {
    for (double& x : v) x = static_cast<double>(rng.poisson(1.0));
  } else {
    for (double& x : v) x = rng.normal();
  }
  const double norm = out.frobenius_norm();
  if (!(norm > 0.0)) return {};
  for (double& x : v) x /= norm;
  return out;
}

bool draw(const SynthSpec& spec, std::uint64_t seed, SynthData& out) {
  detail::Rng rng(seed);
  out.W_true = uniform_matrix(rng, spec.m, spec.r);
  out.H_true = uniform_matrix(rng, spec.r, spec.n);
  const DenseMatrix clean = kernels::matmul(out.W_true, out.H_true);
  out.noise = DenseMatrix(spec.m, spec.n);
  out.seed_used = seed;
  out.clipped = 0;

  if (spec.noise_level > 0.0) {
    std::vector<Beta> kinds = spec.noise_betas;
    std::sort(kinds.begin(), kinds.end());
    kinds.erase(std::unique(kinds.begin(), kinds.end()), kinds.end());
    for (Beta b : kinds) {
      const DenseMatrix part = noise_component(rng, b, clean);
      if (part.empty()) return false;
      auto nv = out.noise.values();
      const auto pv = part.values();
      for (std::size_t k = 0; k < nv.size(); ++k) nv[k] += pv[k];
    }
    const double mixed = out.noise.frobenius_norm();
    if (!(mixed > 0.0)) return false;
    const double scale = spec.noise_level * clean.frobenius_norm() / mixed;
    for (double& v : out.noise.values()) v *= scale;
  }

  out.X = clean;
  auto xv = out.X.values();
  const auto nv = out.noise.values();
  for (std::size_t k = 0; k < xv.size(); ++k) {
    const double v = xv[k] + nv[k];
    if (v < 0.0) ++out.clipped;
    xv[k] = std::max(0.0, v);
  }
  return true;
}

}  // namespace

SynthData synth_generate(const SynthSpec& spec) {
  spec.validate();
  SynthData out;
  if (draw(spec, spec.seed, out)) return out;
  // One retry with a derived seed, then give up.
  if (draw(spec, spec.seed ^ 0x9E3779B97F4A7C15ULL, out)) return out;
  throw NumericError("synth: noise draw was identically zero twice");
}

std::size_t clamp_data(DenseMatrix& X, double floor) { return X.floor_at(floor); }

bool needs_positive_data(const std::vector<Beta>& betas) {
  return std::any_of(betas.begin(), betas.end(), [](Beta b) { return b.value() < 1.0; });
}

}  // namespace drnmf
