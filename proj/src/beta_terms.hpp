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

#include <cmath>

#include "drnmf/divergence.hpp"

namespace drnmf::detail {

enum class BetaKind { ItakuraSaito, KullbackLeibler, Frobenius, General };

inline BetaKind kind_of(Beta beta) {
  if (beta.is_itakura_saito()) return BetaKind::ItakuraSaito;
  if (beta.is_kullback_leibler()) return BetaKind::KullbackLeibler;
  if (beta.is_frobenius()) return BetaKind::Frobenius;
  return BetaKind::General;
}

/// D_beta(x, y) without argument checks; x > 0 is assumed for Itakura-Saito.
inline double divergence_term(BetaKind kind, double b, double x, double y) {
  switch (kind) {
    case BetaKind::ItakuraSaito: {
      const double q = x / y;
      return q - std::log(q) - 1.0;
    }
    case BetaKind::KullbackLeibler:
      return x == 0.0 ? y : x * std::log(x / y) - x + y;
    case BetaKind::Frobenius: {
      const double d = x - y;
      return 0.5 * d * d;
    }
    case BetaKind::General:
      break;
  }
  if (x == y) return 0.0;
  const double y_pow = std::pow(y, b - 1.0);
  return (std::pow(x, b) + (b - 1.0) * y * y_pow - b * x * y_pow) / (b * (b - 1.0));
}

/// Positive and negative parts of dD_beta/dy at (x, y):
///   plus = y^(beta-1),  minus = x * y^(beta-2).
struct SplitTerm {
  double plus;
  double minus;
};

inline SplitTerm split_term(BetaKind kind, double b, double x, double y) {
  switch (kind) {
    case BetaKind::ItakuraSaito: {
      const double inv = 1.0 / y;
      return {inv, x * inv * inv};
    }
    case BetaKind::KullbackLeibler:
      return {1.0, x / y};
    case BetaKind::Frobenius:
      return {y, x};
    case BetaKind::General:
      break;
  }
  const double p = std::exp((b - 2.0) * std::log(y));
  return {y * p, x * p};
}

}  // namespace drnmf::detail
