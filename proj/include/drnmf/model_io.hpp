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
#include <ostream>
#include <string>
#include <vector>

#include "drnmf/dense_matrix.hpp"
#include "drnmf/divergence.hpp"
#include "drnmf/mu.hpp"

namespace drnmf {

/// Run settings echoed into the model file.
struct ModelConfig {
  std::string input;
  std::string init;
  std::size_t iters = 0;
  std::size_t log_every = 1;
  bool sparse = false;
  /// Where the reference errors came from: "computed", "user" or "unit".
  std::string references = "unit";
};

/// A fitted factorization as stored on disk (JSON).
struct Model {
  /// "factorize" or "dr".
  std::string kind;
  std::size_t m = 0;
  std::size_t n = 0;
  /// Betas, reference errors and final weights.
  ObjectiveSet objective;
  /// Flags reference errors that were raised to the minimum.
  std::vector<bool> ref_floored;
  FactorPair factors;
  std::vector<double> final_raw;
  std::vector<double> final_normalized;
  std::uint64_t seed = 0;
  ModelConfig config;
  /// Per-iteration normalized errors, running max and weights (dr only).
  std::vector<TraceEntry> trace;

  std::size_t rank() const { return factors.rank(); }
};

/// Serializes with every double in shortest round-trip form. No timestamps,
/// so equal runs give equal bytes.
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

void save_model(const std::filesystem::path& path, const Model& model);
Model load_model(const std::filesystem::path& path);

/// Bare factor file: a JSON object with "W" and "H" arrays of rows (any
/// model file qualifies). Used for warm starts.
void save_factors(const std::filesystem::path& path, const FactorPair& factors,
                  std::uint64_t seed);
FactorPair load_factors(const std::filesystem::path& path);

/// One row per recorded iteration: iteration, weighted, max_dbar, worst_beta,
/// halvings_w, halvings_h, stalled, delta, d_<beta>..., dbar_<beta>...,
/// lambda_<beta>....
void write_trace_csv(std::ostream& os, const SolveTrace& trace);

}  // namespace drnmf
