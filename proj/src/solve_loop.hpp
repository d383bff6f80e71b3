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

#include <algorithm>
#include <cmath>
#include <limits>

#include "drnmf/mu.hpp"
#include "mu_engine.hpp"

namespace drnmf::detail {

template <class Engine>
TraceEntry make_entry(std::size_t iteration, const Engine& engine, StepStats w, StepStats h,
                      double delta) {
  TraceEntry e;
  e.iteration = iteration;
  const Evaluation& ev = engine.eval();
  e.raw = ev.raw;
  e.normalized = ev.normalized;
  e.weighted = ev.weighted;
  e.lambda = engine.objective().weights;
  const WorstObjective worst = max_normalized(ev, engine.objective());
  e.max_normalized = worst.value;
  e.worst = worst.index;
  e.halvings_w = w.halvings;
  e.halvings_h = h.halvings;
  e.stalled = w.stalled || h.stalled;
  e.delta = delta;
  return e;
}

/// Runs cfg.max_iters iterations of (W step, H step). After each iteration
/// is recorded, `after(k, engine)` may adjust the engine (the DR weight
/// update uses this); k counts from 1.
template <class Engine, class After>
SolveTrace run_iterations(Engine& engine, const SolverConfig& cfg, After&& after) {
  SolveTrace trace;
  trace.betas = engine.objective().betas;
  trace.entries.reserve(cfg.max_iters / cfg.log_stride + 2);
  trace.entries.push_back(make_entry(0, engine, {}, {}, 0.0));

  for (std::size_t k = 1; k <= cfg.max_iters; ++k) {
    const double before = engine.eval().weighted;
    const StepStats w = mu_step(engine, Side::W);
    const StepStats h = mu_step(engine, Side::H);
    trace.total_halvings += w.halvings + h.halvings;
    trace.stalls += (w.stalled ? 1 : 0) + (h.stalled ? 1 : 0);
    if (k % cfg.log_stride == 0 || k == cfg.max_iters) {
      const double after_value = engine.eval().weighted;
      const double scale = std::max(std::abs(before), std::numeric_limits<double>::min());
      trace.entries.push_back(make_entry(k, engine, w, h, (before - after_value) / scale));
    }
    after(k, engine);
  }
  return trace;
}

}  // namespace drnmf::detail
