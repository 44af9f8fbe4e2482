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

#include "povmb/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "povmb/errors.hpp"

namespace povmb {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InvalidInput(where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

std::size_t count_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    fail(where, std::string("\"") + key + "\" must be a non-negative integer");
  return v.get<std::size_t>();
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number, got " + v.dump());
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "non-finite number");
  return x;
}

std::vector<Label> labels_from(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of labels");
  std::vector<Label> out;
  for (const auto& l : j) out.push_back(Label::from_json(l));
  return out;
}

json labels_to(const std::vector<Label>& ls) {
  json a = json::array();
  for (const auto& l : ls) a.push_back(l.json());
  return a;
}

}  // namespace

json to_json(const ComplexMatrix& a) {
  json re = json::array(), im = json::array();
  for (std::size_t r = 0; r < a.rows(); ++r) {
    json rr = json::array(), ri = json::array();
    for (std::size_t c = 0; c < a.cols(); ++c) {
      rr.push_back(a(r, c).real());
      ri.push_back(a(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return json{{"rows", a.rows()}, {"cols", a.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::string where = "matrix";
  const std::size_t rows = count_field(j, "rows", where);
  const std::size_t cols = count_field(j, "cols", where);
  const json& re = field(j, "re", where);
  const json& im = field(j, "im", where);
  if (!re.is_array() || re.size() != rows || !im.is_array() || im.size() != rows)
    fail(where, "\"re\"/\"im\" must have " + std::to_string(rows) + " rows");
  ComplexMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!re[r].is_array() || re[r].size() != cols || !im[r].is_array() ||
        im[r].size() != cols)
      fail(where, "row " + std::to_string(r) + " must have " + std::to_string(cols) +
                      " entries");
    for (std::size_t c = 0; c < cols; ++c)
      a(r, c) = cplx(number(re[r][c], where), number(im[r][c], where));
  }
  return a;
}

json to_json(const DiscretePOVM& m) {
  json outs = json::array();
  for (std::size_t x = 0; x < m.size(); ++x)
    outs.push_back(json{{"label", m.labels[x].json()}, {"effect", to_json(m.effects[x])}});
  return json{{"dim", m.dim}, {"outcomes", outs}};
}

DiscretePOVM povm_from_json(const json& j) {
  const std::string where = "povm";
  DiscretePOVM m;
  m.dim = count_field(j, "dim", where);
  const json& outs = field(j, "outcomes", where);
  if (!outs.is_array()) fail(where, "\"outcomes\" must be an array");
  for (std::size_t x = 0; x < outs.size(); ++x) {
    const std::string w = where + " outcome " + std::to_string(x);
    m.labels.push_back(Label::from_json(field(outs[x], "label", w)));
    m.effects.push_back(matrix_from_json(field(outs[x], "effect", w)));
  }
  return m;
}

json to_json(const JointPOVM& g) { return to_json(g.to_povm()); }

JointPOVM joint_from_json(const json& j) { return JointPOVM::from_povm(povm_from_json(j)); }

json to_json(const MarkovKernel& k) {
  return json{{"source", labels_to(k.source)},
              {"target", labels_to(k.target)},
              {"weights", k.weights}};
}

MarkovKernel kernel_from_json(const json& j) {
  const std::string where = "kernel";
  MarkovKernel k;
  k.source = labels_from(field(j, "source", where), where);
  k.target = labels_from(field(j, "target", where), where);
  const json& w = field(j, "weights", where);
  if (!w.is_array()) fail(where, "\"weights\" must be an array");
  for (const auto& row : w) {
    if (!row.is_array()) fail(where, "weight rows must be arrays");
    std::vector<double> r;
    for (const auto& v : row) r.push_back(number(v, where));
    k.weights.push_back(std::move(r));
  }
  validate_kernel(k);
  return k;
}

json to_json(const Channel& phi) {
  return json{{"dim_in", phi.dim_in()}, {"dim_out", phi.dim_out()}, {"choi", to_json(phi.choi())}};
}

namespace {
Channel channel_parts(const json& j, bool checked) {
  const std::string where = "channel";
  const std::size_t din = count_field(j, "dim_in", where);
  const std::size_t dout = count_field(j, "dim_out", where);
  ComplexMatrix choi = matrix_from_json(field(j, "choi", where));
  return checked ? Channel::from_choi(din, dout, std::move(choi))
                 : Channel::from_choi_unchecked(din, dout, std::move(choi));
}

// JSON has no infinities; an unbounded residual or margin travels as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double finite_or_inf(const json& v, const std::string& where) {
  return v.is_null() ? INFINITY : number(v, where);
}

}  // namespace

Channel channel_from_json(const json& j) { return channel_parts(j, true); }

json to_json(const FeasibilityReport& r) {
  json j{{"verdict", to_string(r.verdict)},
         {"residual", finite_or_null(r.residual)},
         {"iterations", r.iterations},
         {"margin", finite_or_null(r.margin)}};
  j["certificate"] = r.certificate ? json(*r.certificate) : json(nullptr);
  j["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return j;
}

FeasibilityReport report_from_json(const json& j) {
  const std::string where = "report";
  FeasibilityReport r;
  const json& v = field(j, "verdict", where);
  if (!v.is_string()) fail(where, "\"verdict\" must be a string");
  r.verdict = verdict_from_string(v.get<std::string>());
  r.residual = finite_or_inf(field(j, "residual", where), where);
  r.iterations = count_field(j, "iterations", where);
  if (j.contains("margin")) r.margin = finite_or_inf(j.at("margin"), where);
  const json& c = field(j, "certificate", where);
  if (c.is_string()) r.certificate = c.get<std::string>();
  else if (!c.is_null()) fail(where, "\"certificate\" must be a string or null");
  // Witnesses are carried as data; near the boundary they may sit a hair
  // outside the CPTP tolerance.
  const json& w = field(j, "witness", where);
  if (!w.is_null()) r.witness = channel_parts(w, false);
  return r;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

}  // namespace povmb
