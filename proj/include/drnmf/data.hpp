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
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "drnmf/dense_matrix.hpp"
#include "drnmf/divergence.hpp"
#include "drnmf/sparse_matrix.hpp"

namespace drnmf {

/// Floor for data entries fed to beta < 1 divergences (IS is undefined at 0).
inline constexpr double kDataFloor = 1e-12;

// ---------------------------------------------------------------------------
// Synthetic data

/// Low-rank X~ = W~ H~ with uniform [0, 1] factors plus noise mixed from the
/// distributions tied to beta = 0 (multiplicative Gaussian), 1 (Poisson(1))
/// and 2 (Gaussian), each normalized to unit Frobenius norm, then rescaled so
/// ||N||_F = noise_level * ||X~||_F, and finally X = max(0, X~ + N).
struct SynthSpec {
  std::size_t m = 200;
  std::size_t n = 200;
  std::size_t r = 10;
  double noise_level = 0.2;
  std::vector<Beta> noise_betas{Beta(0.0), Beta(1.0), Beta(2.0)};
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthData {
  DenseMatrix X;
  DenseMatrix W_true;
  DenseMatrix H_true;
  /// Noise before clipping (X = max(0, W_true H_true + noise)).
  DenseMatrix noise;
  /// Entries clipped to 0.
  std::size_t clipped = 0;
  /// Seed actually used (differs from the spec only after a degenerate draw).
  std::uint64_t seed_used = 0;
};

SynthData synth_generate(const SynthSpec& spec);

/// Raises every entry below `floor` to it; returns how many were raised.
std::size_t clamp_data(DenseMatrix& X, double floor = kDataFloor);

/// True when any beta < 1, i.e. the data must be clamped away from zero.
bool needs_positive_data(const std::vector<Beta>& betas);

// ---------------------------------------------------------------------------
// File formats
//
// Sparse: MatrixMarket `%%MatrixMarket matrix coordinate real general`
// (also `integer`/`pattern`), 1-based indices; or a plain 3-column text file
// of `row col value` lines (1-based, '#' or '%' comments, shape taken from
// the largest indices). Zero values are dropped; negative values, duplicate
// coordinates and out-of-range indices are rejected.
//
// Dense: CSV, one matrix row per line, '#' comment lines ignored.
//
// Labels: one integer class label per line.

SparseMatrix load_sparse(const std::filesystem::path& path);
void save_sparse(const std::filesystem::path& path, const SparseMatrix& X);

DenseMatrix load_dense(const std::filesystem::path& path);
/// Writes `header_lines` as '# '-prefixed comments, then the rows.
void save_dense(const std::filesystem::path& path, const DenseMatrix& X,
                const std::vector<std::string>& header_lines = {});

struct Labels {
  /// Class of each row, 0-based in ascending order of the original labels.
  std::vector<std::size_t> index;
  /// Original label values, ascending; original_values[c] is class c.
  std::vector<long long> original_values;

  std::size_t classes() const noexcept { return original_values.size(); }
  std::vector<std::size_t> class_sizes() const;
};

Labels load_labels(const std::filesystem::path& path);

/// True when the path looks like a sparse file (.mtx/.coo/.triplets
/// extension or a MatrixMarket banner).
bool looks_sparse(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Initialization

enum class InitMode { Random, Svd };

/// Nonnegative rank-r starting factors, floored at kFactorFloor.
///
/// Random: uniform (0, 1] entries scaled by sqrt(mean(X) / r) in both
/// factors. Svd: nonnegative double SVD on the rank-r truncated SVD of X
/// (leading pair by absolute value, later pairs by the dominant sign part).
FactorPair init_factors(const DataMatrix& X, std::size_t r, InitMode mode, std::uint64_t seed);

}  // namespace drnmf
