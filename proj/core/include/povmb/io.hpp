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

#include <nlohmann/json.hpp>

#include "povmb/channel.hpp"
#include "povmb/feasibility.hpp"
#include "povmb/matrix.hpp"
#include "povmb/povm.hpp"

namespace povmb {

// Matrix:  {"rows": n, "cols": m, "re": [[...]], "im": [[...]]}
// POVM:    {"dim": n, "outcomes": [{"label": ..., "effect": <matrix>}]}
// Kernel:  {"source": [...], "target": [...], "weights": [[...]]}
// Channel: {"dim_in": n, "dim_out": m, "choi": <matrix>}
// Report:  {"verdict", "residual", "iterations", "margin", "certificate", "witness"}
//
// Parsers throw InvalidInput on structural problems only. POVM invariants
// (positivity, normalization, ...) are left to validate_povm so that all
// violations can be listed together.

nlohmann::json to_json(const ComplexMatrix& a);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DiscretePOVM& m);
DiscretePOVM povm_from_json(const nlohmann::json& j);
// Joint POVMs travel as POVMs with pair labels.
nlohmann::json to_json(const JointPOVM& g);
JointPOVM joint_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MarkovKernel& k);
MarkovKernel kernel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Channel& phi);
// Checks CPTP at the default tolerances.
Channel channel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FeasibilityReport& r);
FeasibilityReport report_from_json(const nlohmann::json& j);

// Reads and parses a JSON file; InvalidInput on I/O or syntax errors.
nlohmann::json read_json_file(const std::string& path);

}  // namespace povmb
