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

#include "povmb/label.hpp"

#include "povmb/errors.hpp"

namespace povmb {

namespace {

bool label_shaped(const nlohmann::json& j) {
  if (j.is_number_integer() || j.is_string()) return true;
  if (!j.is_array() || j.empty()) return false;
  for (const auto& e : j)
    if (!label_shaped(e)) return false;
  return true;
}

}  // namespace

Label Label::from_json(const nlohmann::json& j) {
  if (!label_shaped(j))
    throw InvalidInput("label must be an integer, a string, or an array of labels: " +
                       j.dump());
  // Normalize unsigned storage so 3u and 3 compare equal.
  if (j.is_number_unsigned()) return Label(nlohmann::json(j.get<std::int64_t>()), 0);
  return Label(j, 0);
}

Label Label::pair(const Label& x, const Label& y) {
  return Label(nlohmann::json::array({x.v_, y.v_}), 0);
}

Label Label::first() const {
  if (!is_pair()) throw InvalidInput("label " + str() + " is not a pair");
  return Label(v_[0], 0);
}

Label Label::second() const {
  if (!is_pair()) throw InvalidInput("label " + str() + " is not a pair");
  return Label(v_[1], 0);
}

}  // namespace povmb
