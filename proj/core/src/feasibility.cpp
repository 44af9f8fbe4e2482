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

#include "povmb/feasibility.hpp"

#include <cmath>
#include <sstream>

#include "povmb/errors.hpp"
#include "povmb/linalg.hpp"

namespace povmb {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

std::string cell_name(const JointPOVM& g, std::size_t x, std::size_t y) {
  return Label::pair(g.x_labels[x], g.y_labels[y]).str();
}

// Effects of `m` reordered to follow `labels`.
std::vector<ComplexMatrix> aligned(const DiscretePOVM& m,
                                   const std::vector<Label>& labels,
                                   const char* what) {
  if (labels.size() != m.size())
    throw InvalidInput(std::string(what) + ": grid size does not match outcome count");
  std::vector<ComplexMatrix> out;
  for (const auto& l : labels) out.push_back(m.effect(l));
  return out;
}

template <class Vec>
Vec aligned_vec(const DiscretePOVM& m, const std::vector<Label>& labels,
                const Vec& v) {
  Vec out;
  for (const auto& l : labels) out.push_back(v[m.index_of(l)]);
  return out;
}

struct CellScan {
  double margin = 0.0;
  std::size_t x = 0, y = 0;
  bool ok = true;
  std::vector<std::vector<ComplexMatrix>> ops;
};

// Cell operators C_xy = G_xy - cy_y G1_x - cx_x G2_y + cx_x cy_y I.
CellScan scan_cells(const JointPOVM& g, const std::vector<double>& cx,
                    const std::vector<double>& cy, double tol) {
  const auto [g1, g2] = margins(g);
  const auto id = ComplexMatrix::identity(g.dim);
  CellScan s;
  s.margin = INFINITY;
  s.ops.assign(g.nx(), std::vector<ComplexMatrix>(g.ny()));
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y) {
      ComplexMatrix c = g(x, y) - g1.effects[x] * cy[y] - g2.effects[y] * cx[x] +
                        id * (cx[x] * cy[y]);
      c = c.hermitian_part();
      const double lmin = min_eigenvalue(c);
      if (lmin < s.margin) {
        s.margin = lmin;
        s.x = x;
        s.y = y;
      }
      if (lmin < -tol * (1.0 + c.frobenius_norm())) s.ok = false;
      s.ops[x][y] = std::move(c);
    }
  return s;
}

void check_weight(double w, const char* name) {
  if (!std::isfinite(w) || w < 0.0 || w > 1.0)
    throw InvalidInput(std::string(name) + " must lie in (0,1]");
  if (w == 0.0)
    throw UnsupportedInput(std::string(name) + " = 0 is outside the noisy-PVM condition");
}

void require_nonzero(const DiscretePOVM& m, const char* what) {
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m.effects[k].frobenius_norm() <= 1e-12)
      throw UnsupportedInput(std::string(what) + ": effect " + m.labels[k].str() +
                             " is zero");
}

// Witness for a feasible scan: measure-and-prepare from the rescaled cell
// operators, then verified against the noisy pair.
FeasibilityReport finish_scan(CellScan scan, const JointPOVM& g,
                              const DiscretePOVM& sharp_x,
                              const DiscretePOVM& sharp_y,
                              const DiscretePOVM& noisy_x,
                              const DiscretePOVM& noisy_y, double scale) {
  FeasibilityReport r;
  r.margin = scan.margin;
  if (!scan.ok) {
    r.verdict = Verdict::kInfeasible;
    r.certificate = "cell " + cell_name(g, scan.x, scan.y) +
                    ": minimal eigenvalue " + num(scan.margin);
    return r;
  }
  r.verdict = Verdict::kFeasible;
  // Built directly rather than through measure_and_prepare_broadcaster: at
  // the boundary the rescaled operators may dip below zero by ~tol/scale.
  std::vector<ComplexMatrix> effects, states;
  for (std::size_t x = 0; x < g.nx(); ++x) {
    const auto& px = sharp_x.effect(g.x_labels[x]);
    const auto sx = px * (1.0 / px.trace().real());
    for (std::size_t y = 0; y < g.ny(); ++y) {
      const auto& qy = sharp_y.effect(g.y_labels[y]);
      effects.push_back(scan.ops[x][y] * (1.0 / scale));
      states.push_back(kron(sx, qy * (1.0 / qy.trace().real())));
    }
  }
  r.witness = measure_and_prepare(effects, states);
  r.residual = verify_generation(*r.witness, noisy_x, noisy_y, g);
  return r;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kIndeterminate: return "indeterminate";
  }
  return "indeterminate";
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "feasible") return Verdict::kFeasible;
  if (s == "infeasible") return Verdict::kInfeasible;
  if (s == "indeterminate") return Verdict::kIndeterminate;
  throw InvalidInput("unknown verdict '" + s + "'");
}

bool support_condition(const JointPOVM& g, const DiscretePOVM& p,
                       const DiscretePOVM& q) {
  const auto px = aligned(p, g.x_labels, "support_condition");
  const auto qy = aligned(q, g.y_labels, "support_condition");
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y) {
      const bool vanishes =
          px[x].frobenius_norm() <= 1e-12 || qy[y].frobenius_norm() <= 1e-12;
      if (vanishes && g(x, y).frobenius_norm() > 1e-12) return false;
    }
  return true;
}

FeasibilityReport fuzzy_pvm_condition(const DiscretePOVM& p,
                                      const DiscretePOVM& q, double lambda,
                                      double mu, const std::vector<double>& pv,
                                      const std::vector<double>& qv,
                                      const JointPOVM& g, double tol) {
  check_weight(lambda, "lambda");
  check_weight(mu, "mu");
  if (!is_pvm(p) || !is_pvm(q)) throw InvalidInput("fuzzy_pvm_condition: P and Q must be PVMs");
  require_nonzero(p, "fuzzy_pvm_condition");
  require_nonzero(q, "fuzzy_pvm_condition");
  require_valid(g.to_povm(), "fuzzy_pvm_condition");
  const auto pp = checked_probabilities(pv, "fuzzy_pvm_condition");
  const auto qq = checked_probabilities(qv, "fuzzy_pvm_condition");
  if (pp.size() != p.size() || qq.size() != q.size())
    throw InvalidInput("fuzzy_pvm_condition: probability vector length mismatch");
  aligned(p, g.x_labels, "fuzzy_pvm_condition");
  aligned(q, g.y_labels, "fuzzy_pvm_condition");

  std::vector<double> cx = aligned_vec(p, g.x_labels, pp);
  std::vector<double> cy = aligned_vec(q, g.y_labels, qq);
  for (auto& v : cx) v *= 1.0 - lambda;
  for (auto& v : cy) v *= 1.0 - mu;
  auto scan = scan_cells(g, cx, cy, tol);
  return finish_scan(std::move(scan), g, p, q, mix_with_noise(p, lambda, pp),
                     mix_with_noise(q, mu, qq), lambda * mu);
}

DiscretePOVM unbiased_qubit(double sharpness, const std::array<double, 3>& dir) {
  const double n = std::sqrt(dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]);
  if (n <= 0.0) throw InvalidInput("unbiased_qubit: zero direction");
  BlochObservable b;
  b.a = 0.5;
  for (int k = 0; k < 3; ++k) b.avec[k] = 0.5 * sharpness * dir[k] / n;
  return bloch_to_povm(b);
}

JointPOVM ic_qubit_joint(double g) {
  if (!(g >= 0.0 && g <= 1.0)) throw InvalidInput("ic_qubit_joint: g outside [0,1]");
  const double c = g / std::sqrt(3.0);
  const std::array<double, 3> pp{c, c, c}, pm{c, -c, -c}, mp{-c, -c, c}, mm{-c, c, -c};
  JointPOVM j;
  j.dim = 2;
  j.x_labels = {kPlus, kMinus};
  j.y_labels = {kPlus, kMinus};
  auto eff = [](const std::array<double, 3>& v) {
    return bloch_operator(0.25, {0.25 * v[0], 0.25 * v[1], 0.25 * v[2]});
  };
  j.effects = {{eff(pp), eff(pm)}, {eff(mp), eff(mm)}};
  return j;
}

FeasibilityReport qubit_general_condition(const DiscretePOVM& r,
                                          const DiscretePOVM& s,
                                          const JointPOVM& g, double tol) {
  for (const auto* m : {&r, &s})
    if (m->dim != 2 || m->size() != 2)
      throw InvalidInput("qubit_general_condition: R and S must be binary qubit POVMs");
  if (g.dim != 2 || g.nx() != 2 || g.ny() != 2)
    throw InvalidInput("qubit_general_condition: G must be a 2x2-outcome qubit POVM");
  require_valid(g.to_povm(), "qubit_general_condition");
  const BlochObservable a = povm_to_bloch(r), b = povm_to_bloch(s);
  const double na = a.norm(), nb = b.norm();
  if (na <= 1e-12 || nb <= 1e-12)
    throw UnsupportedInput("qubit_general_condition: trivial observable (zero Bloch vector)");

  // Index 0 of R/S is the "+" outcome.
  auto coeffs = [](const BlochObservable& o, double n) {
    std::vector<double> c(2);
    for (int k = 0; k < 2; ++k) {
      const double sg = k == 0 ? 1.0 : -1.0;
      c[k] = 0.5 * (1.0 - sg + 2.0 * (sg * o.a - n));
    }
    return c;
  };
  const auto cr = coeffs(a, na), cs = coeffs(b, nb);
  std::vector<double> cx, cy;
  for (const auto& l : g.x_labels) cx.push_back(cr[r.index_of(l)]);
  for (const auto& l : g.y_labels) cy.push_back(cs[s.index_of(l)]);
  auto scan = scan_cells(g, cx, cy, tol);

  auto sharp = [](const DiscretePOVM& m, const BlochObservable& o, double n) {
    DiscretePOVM out = unbiased_qubit(1.0, {o.avec[0] / n, o.avec[1] / n, o.avec[2] / n});
    out.labels = m.labels;
    return out;
  };
  // R_+ = a I + avec.sigma has sharp weight 2|avec|.
  return finish_scan(std::move(scan), g, sharp(r, a, na), sharp(s, b, nb), r, s,
                     4.0 * na * nb);
}

std::optional<NoisyPvm> decompose_noisy_pvm(const DiscretePOVM& m, double tol) {
  if (!validate_povm(m, tol).valid()) return std::nullopt;
  std::vector<double> mins;
  double total = 0.0;
  for (const auto& e : m.effects) {
    const double v = std::max(0.0, min_eigenvalue(e));
    mins.push_back(v);
    total += v;
  }
  NoisyPvm out;
  out.lambda = 1.0 - total;
  if (out.lambda <= tol) return std::nullopt;
  out.pvm = m;
  const auto id = ComplexMatrix::identity(m.dim);
  for (std::size_t k = 0; k < m.size(); ++k)
    out.pvm.effects[k] = (m.effects[k] - id * mins[k]) * (1.0 / out.lambda);
  if (!is_pvm(out.pvm, 1e3 * tol)) return std::nullopt;
  if (total > tol) {
    for (double v : mins) out.p.push_back(v / total);
  } else {
    out.lambda = 1.0;
    out.p.assign(m.size(), 1.0 / double(m.size()));
  }
  return out;
}

double verify_generation(const Channel& phi, const DiscretePOVM& m,
                         const DiscretePOVM& n, const JointPOVM& g) {
  if (phi.dim_in() != g.dim || phi.dim_out() != m.dim * n.dim)
    throw InvalidInput("verify_generation: channel dimensions do not match the triple");
  const auto mx = aligned(m, g.x_labels, "verify_generation");
  const auto ny = aligned(n, g.y_labels, "verify_generation");
  double worst = 0.0;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y)
      worst = std::max(worst, frobenius_distance(dual_apply(phi, kron(mx[x], ny[y])), g(x, y)));
  return worst;
}

}  // namespace povmb
