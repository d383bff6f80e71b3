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

#include <ostream>
#include <string>
#include <vector>

namespace drnmf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;

/// Runs one command. `args` excludes the program name. Normal output goes to
/// `out`; warnings and the single error line go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Applies DRNMF_THREADS, if set. Throws ValidationError on a bad value.
void apply_thread_env();

}  // namespace drnmf::cli
