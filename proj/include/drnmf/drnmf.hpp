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

#include "drnmf/data.hpp"
#include "drnmf/dense_matrix.hpp"
#include "drnmf/divergence.hpp"
#include "drnmf/dr.hpp"
#include "drnmf/error.hpp"
#include "drnmf/eval.hpp"
#include "drnmf/kernels.hpp"
#include "drnmf/model_io.hpp"
#include "drnmf/mu.hpp"
#include "drnmf/pareto.hpp"
#include "drnmf/scaling.hpp"
#include "drnmf/sparse_matrix.hpp"
