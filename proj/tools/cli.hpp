// Copyright 2026 The povmb Authors
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

namespace povmb::cli {

enum ExitCode : int {
  kExitFeasible = 0,
  kExitInfeasible = 1,
  kExitIndeterminate = 2,
  kExitInputError = 3,    // parse, validation or flag errors
  kExitRuntimeError = 4,  // unsupported inputs, failed preconditions, I/O
};

// Runs povm-broadcast with args (program name excluded). Reports go to out
// (or --out), diagnostics and logs to err. Nothing is written to the report
// destination unless the command completes.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace povmb::cli
