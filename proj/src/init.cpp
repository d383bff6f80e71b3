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

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "drnmf/data.hpp"
#include "drnmf/error.hpp"
#include "drnmf/mu.hpp"
#include "rng.hpp"

namespace drnmf {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

double data_mean(const DataMatrix& X) {
  const double total = std::visit([](const auto& m) { return m.sum(); }, X);
  return total / (static_cast<double>(rows_of(X)) * static_cast<double>(cols_of(X)));
}

FactorPair random_init(const DataMatrix& X, std::size_t r, std::uint64_t seed) {
  const double mean = data_mean(X);
  if (!(mean > 0.0) || !std::isfinite(mean))
    throw ValidationError("init: data must have a positive finite mean");
  const double scale = std::sqrt(mean / static_cast<double>(r));
  detail::Rng rng(seed);
  FactorPair f{DenseMatrix(rows_of(X), r), DenseMatrix(r, cols_of(X))};
  for (double& v : f.W.values()) v = scale * rng.uniform_open_closed();
  for (double& v : f.H.values()) v = scale * rng.uniform_open_closed();
  return f;
}

FactorPair svd_init(const DataMatrix& X, std::size_t r) {
  const DenseMatrix dense = densify(X);
  const Eigen::Map<const RowMajor> A(dense.data(), static_cast<Eigen::Index>(dense.rows()),
                                     static_cast<Eigen::Index>(dense.cols()));
  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& U = svd.matrixU();
  const auto& V = svd.matrixV();
  const auto& S = svd.singularValues();

  const std::size_t m = dense.rows();
  const std::size_t n = dense.cols();
  FactorPair f{DenseMatrix(m, r), DenseMatrix(r, n)};
  for (std::size_t k = 0; k < r; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    Eigen::VectorXd u = U.col(kk);
    Eigen::VectorXd v = V.col(kk);
    double sigma = S(kk);
    if (k == 0) {
      // The leading singular pair of a nonnegative matrix has one sign up to
      // round-off; take absolute values.
      u = u.cwiseAbs();
      v = v.cwiseAbs();
    } else {
      const Eigen::VectorXd up = u.cwiseMax(0.0), un = (-u).cwiseMax(0.0);
      const Eigen::VectorXd vp = v.cwiseMax(0.0), vn = (-v).cwiseMax(0.0);
      const double mp = up.norm() * vp.norm();
      const double mn = un.norm() * vn.norm();
      if (mp >= mn) {
        u = mp > 0.0 ? Eigen::VectorXd(up / up.norm()) : up;
        v = mp > 0.0 ? Eigen::VectorXd(vp / vp.norm()) : vp;
        sigma *= mp;
      } else {
        u = un / un.norm();
        v = vn / vn.norm();
        sigma *= mn;
      }
    }
    const double s = std::sqrt(std::max(sigma, 0.0));
    for (std::size_t i = 0; i < m; ++i) f.W(i, k) = s * u(static_cast<Eigen::Index>(i));
    for (std::size_t j = 0; j < n; ++j) f.H(k, j) = s * v(static_cast<Eigen::Index>(j));
  }
  return f;
}

}  // namespace

FactorPair init_factors(const DataMatrix& X, std::size_t r, InitMode mode, std::uint64_t seed) {
  const std::size_t m = rows_of(X);
  const std::size_t n = cols_of(X);
  if (m == 0 || n == 0) throw DimensionError("init: empty data matrix");
  if (r == 0 || r > std::min(m, n))
    throw ValidationError("init: rank " + std::to_string(r) + " must be in [1, " +
                          std::to_string(std::min(m, n)) + "]");
  FactorPair f = mode == InitMode::Random ? random_init(X, r, seed) : svd_init(X, r);
  f.W.floor_at(kFactorFloor);
  f.H.floor_at(kFactorFloor);
  return f;
}

}  // namespace drnmf
