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
#include <vector>

#include "drnmf/dense_matrix.hpp"
#include "drnmf/divergence.hpp"

namespace drnmf {

/// Scales each column of W to sum to one, then assigns row i to the column
/// holding its largest entry (ties go to the smaller column index).
std::vector<std::size_t> cluster_assign(const DenseMatrix& W);

/// Minimum-cost perfect matching on a square cost matrix (Hungarian method).
/// Returns assignment[row] = column.
std::vector<std::size_t> linear_assignment(const DenseMatrix& cost);

/// Contingency table: counts(p, t) = #rows with predicted p and truth t.
DenseMatrix intersection_counts(const std::vector<std::size_t>& predicted,
                                const std::vector<std::size_t>& truth);

/// Best-matching accuracy: the largest fraction of rows whose predicted
/// cluster maps to their true class under a one-to-one relabeling.
/// Throws DimensionError on a length mismatch or empty input.
double clustering_accuracy(const std::vector<std::size_t>& predicted,
                           const std::vector<std::size_t>& truth);

/// D_beta(X, WH) / e_beta - 1 for each objective.
std::vector<double> relative_errors(const DataMatrix& X, const DenseMatrix& W,
                                    const DenseMatrix& H, const ObjectiveSet& obj);

}  // namespace drnmf
