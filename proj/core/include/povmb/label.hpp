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

#include <cstdint>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace povmb {

// Outcome label: an integer, a string, or an array of labels (pairs for
// joint outcomes). Compared structurally.
class Label {
 public:
  Label() : v_(0) {}
  Label(int v) : v_(v) {}                  // NOLINT(google-explicit-constructor)
  Label(std::int64_t v) : v_(v) {}         // NOLINT
  Label(std::size_t v) : v_(static_cast<std::int64_t>(v)) {}  // NOLINT
  Label(const char* s) : v_(std::string(s)) {}                // NOLINT
  Label(std::string s) : v_(std::move(s)) {}                  // NOLINT

  // Throws InvalidInput unless j is an integer, string or array thereof.
  static Label from_json(const nlohmann::json& j);
  static Label pair(const Label& x, const Label& y);

  const nlohmann::json& json() const { return v_; }
  bool is_pair() const { return v_.is_array() && v_.size() == 2; }
  Label first() const;
  Label second() const;
  std::string str() const { return v_.dump(); }

  friend bool operator==(const Label& a, const Label& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Label& a, const Label& b) { return !(a == b); }
  friend bool operator<(const Label& a, const Label& b) { return a.v_ < b.v_; }

 private:
  explicit Label(nlohmann::json v, int) : v_(std::move(v)) {}
  nlohmann::json v_;
};

}  // namespace povmb
