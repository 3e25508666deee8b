// Copyright 2026 The Miscount Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MISCOUNT_CLI_HPP_
#define MISCOUNT_CLI_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "miscount/error_model.hpp"

namespace miscount {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

// Environment variable overriding the enumeration budget.
inline constexpr const char* kBudgetEnvVar = "MISCOUNT_ENUM_BUDGET";

// Inline model syntax:
//   point:<p>:<offset>
//   geom:<p>:<decay>:<delta_min>:<delta_max>
//   file:<path to JSON mass table>
// Throws std::invalid_argument naming the offending field.
ErrorOffsetDistribution ParseModelSpec(const std::string& spec);

// Enumeration budget from kBudgetEnvVar, or the library default when unset.
// Throws std::invalid_argument when the variable is not a positive integer.
std::uint64_t EnumerationBudgetFromEnv();

// Runs one invocation. `args` excludes the program name. The document goes
// to `out`, diagnostics and usage to `err`. Returns kExitOk, kExitUsage or
// kExitBudget.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace miscount

#endif  // MISCOUNT_CLI_HPP_
