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

#include "povmb/povm.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "povmb/errors.hpp"
#include "povmb/linalg.hpp"

namespace povmb {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

std::size_t DiscretePOVM::index_of(const Label& l) const {
  for (std::size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == l) return k;
  throw InvalidInput("no outcome with label " + l.str());
}

std::string ValidationReport::summary() const {
  if (issues.empty()) return "valid";
  std::string s;
  for (const auto& i : issues) {
    if (!s.empty()) s += "; ";
    s += i.kind + ": " + i.detail;
  }
  return s;
}

ValidationReport validate_povm(const DiscretePOVM& m, double tol) {
  ValidationReport r;
  auto add = [&](std::string kind, std::string detail, double margin) {
    r.issues.push_back({std::move(kind), std::move(detail), margin});
  };
  if (m.dim == 0) add("shape", "dimension is zero", 0.0);
  if (m.labels.size() != m.effects.size())
    add("shape", "label count " + std::to_string(m.labels.size()) +
                     " != effect count " + std::to_string(m.effects.size()),
        0.0);
  if (m.effects.empty()) add("shape", "no outcomes", 0.0);
  for (std::size_t a = 0; a < m.labels.size(); ++a)
    for (std::size_t b = a + 1; b < m.labels.size(); ++b)
      if (m.labels[a] == m.labels[b])
        add("labels", "duplicate label " + m.labels[a].str(), 0.0);

  bool shapes_ok = m.dim > 0;
  ComplexMatrix sum = ComplexMatrix::zeros(m.dim, m.dim);
  for (std::size_t k = 0; k < m.effects.size(); ++k) {
    const auto& e = m.effects[k];
    const std::string name =
        k < m.labels.size() ? m.labels[k].str() : "#" + std::to_string(k);
    if (e.rows() != m.dim || e.cols() != m.dim) {
      add("shape", "effect " + name + " is not " + std::to_string(m.dim) + "x" +
                       std::to_string(m.dim),
          0.0);
      shapes_ok = false;
      continue;
    }
    sum += e;
    if (!is_hermitian(e)) {
      const double dev = (e - e.adjoint()).max_abs();
      add("hermitian", "effect " + name + " deviates by " + fmt_double(dev), dev);
      continue;
    }
    const double lmin = min_eigenvalue(e);
    if (lmin < -tol * (1.0 + e.frobenius_norm()))
      add("positivity", "effect " + name + " has eigenvalue " + fmt_double(lmin),
          -lmin);
  }
  if (shapes_ok && !m.effects.empty()) {
    const double dev = frobenius_distance(sum, ComplexMatrix::identity(m.dim));
    if (dev > tol)
      add("normalization", "sum of effects differs from identity by " +
                               fmt_double(dev) + " (Frobenius)",
          dev);
  }
  return r;
}

bool is_pvm(const DiscretePOVM& m, double tol) {
  if (!validate_povm(m, tol).valid()) return false;
  for (const auto& e : m.effects)
    if (frobenius_distance(e * e, e) > tol * (1.0 + e.frobenius_norm())) return false;
  return true;
}

void require_valid(const DiscretePOVM& m, const char* what) {
  const auto r = validate_povm(m);
  if (!r.valid()) throw InvalidInput(std::string(what) + ": " + r.summary());
}

DiscretePOVM computational_pvm(std::size_t dim) {
  return basis_pvm(ComplexMatrix::identity(dim));
}

DiscretePOVM basis_pvm(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw InvalidInput("basis_pvm: matrix is not unitary");
  DiscretePOVM m;
  m.dim = u.rows();
  for (std::size_t k = 0; k < u.cols(); ++k) {
    m.labels.emplace_back(k);
    m.effects.push_back(ComplexMatrix::projector(u.column(k)));
  }
  return m;
}

DiscretePOVM trivial_povm(std::size_t dim, const std::vector<double>& p) {
  const auto q = checked_probabilities(p, "trivial_povm");
  DiscretePOVM m;
  m.dim = dim;
  for (std::size_t k = 0; k < q.size(); ++k) {
    m.labels.emplace_back(k);
    m.effects.push_back(ComplexMatrix::identity(dim) * q[k]);
  }
  return m;
}

JointPOVM JointPOVM::from_povm(const DiscretePOVM& m) {
  JointPOVM g;
  g.dim = m.dim;
  if (m.labels.size() != m.effects.size())
    throw InvalidInput("joint POVM: label/effect count mismatch");
  auto slot = [](std::vector<Label>& v, const Label& l) {
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] == l) return k;
    v.push_back(l);
    return v.size() - 1;
  };
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (const auto& l : m.labels) {
    if (!l.is_pair()) throw InvalidInput("joint POVM label " + l.str() + " is not a pair");
    pos.emplace_back(slot(g.x_labels, l.first()), slot(g.y_labels, l.second()));
  }
  if (g.nx() * g.ny() != m.size())
    throw InvalidInput("joint POVM labels do not form a full product grid");
  g.effects.assign(g.nx(), std::vector<ComplexMatrix>(g.ny()));
  std::vector<std::vector<bool>> seen(g.nx(), std::vector<bool>(g.ny(), false));
  for (std::size_t k = 0; k < m.size(); ++k) {
    auto [x, y] = pos[k];
    if (seen[x][y]) throw InvalidInput("joint POVM has a repeated grid cell");
    seen[x][y] = true;
    g.effects[x][y] = m.effects[k];
  }
  return g;
}

DiscretePOVM JointPOVM::to_povm() const {
  DiscretePOVM m;
  m.dim = dim;
  for (std::size_t x = 0; x < nx(); ++x)
    for (std::size_t y = 0; y < ny(); ++y) {
      m.labels.push_back(Label::pair(x_labels[x], y_labels[y]));
      m.effects.push_back(effects[x][y]);
    }
  return m;
}

std::pair<DiscretePOVM, DiscretePOVM> margins(const JointPOVM& g) {
  DiscretePOVM m1, m2;
  m1.dim = m2.dim = g.dim;
  m1.labels = g.x_labels;
  m2.labels = g.y_labels;
  m1.effects.assign(g.nx(), ComplexMatrix::zeros(g.dim, g.dim));
  m2.effects.assign(g.ny(), ComplexMatrix::zeros(g.dim, g.dim));
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y) {
      m1.effects[x] += g(x, y);
      m2.effects[y] += g(x, y);
    }
  return {m1, m2};
}

std::pair<DiscretePOVM, DiscretePOVM> margins(const DiscretePOVM& g) {
  return margins(JointPOVM::from_povm(g));
}

std::vector<double> checked_probabilities(const std::vector<double>& p,
                                          const char* what) {
  if (p.empty()) throw InvalidInput(std::string(what) + ": empty probability vector");
  std::vector<double> q = p;
  double s = 0.0;
  for (auto& v : q) {
    if (!std::isfinite(v)) throw InvalidInput(std::string(what) + ": non-finite probability");
    if (v < 0.0) {
      if (v < -1e-14)
        throw InvalidInput(std::string(what) + ": negative probability " + fmt_double(v));
      v = 0.0;
    }
    s += v;
  }
  if (std::abs(s - 1.0) > 1e-12)
    throw InvalidInput(std::string(what) + ": probabilities sum to " + fmt_double(s));
  return q;
}

DiscretePOVM mix_with_noise(const DiscretePOVM& p, double lambda,
                            const std::vector<double>& probs) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw InvalidInput("mix_with_noise: lambda outside [0,1]");
  const auto q = checked_probabilities(probs, "mix_with_noise");
  if (q.size() != p.size())
    throw InvalidInput("mix_with_noise: probability vector length != outcome count");
  DiscretePOVM out = p;
  const auto id = ComplexMatrix::identity(p.dim);
  for (std::size_t k = 0; k < p.size(); ++k)
    out.effects[k] = p.effects[k] * lambda + id * ((1.0 - lambda) * q[k]);
  return out;
}

JointPOVM tensor_povm(const DiscretePOVM& m, const DiscretePOVM& n) {
  JointPOVM g;
  g.dim = m.dim * n.dim;
  g.x_labels = m.labels;
  g.y_labels = n.labels;
  g.effects.assign(m.size(), std::vector<ComplexMatrix>(n.size()));
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y)
      g.effects[x][y] = kron(m.effects[x], n.effects[y]);
  return g;
}

void validate_kernel(const MarkovKernel& k) {
  if (k.weights.size() != k.source.size())
    throw InvalidInput("kernel: one weight row per source label required");
  for (std::size_t i = 0; i < k.weights.size(); ++i) {
    const auto& row = k.weights[i];
    if (row.size() != k.target.size())
      throw InvalidInput("kernel: row length != target count");
    double s = 0.0;
    for (double w : row) {
      if (!std::isfinite(w) || w < -1e-14 || w > 1.0 + 1e-12)
        throw InvalidInput("kernel: weight outside [0,1]");
      s += w;
    }
    if (std::abs(s - 1.0) > 1e-12)
      throw InvalidInput("kernel: row " + k.source[i].str() + " sums to " + fmt_double(s));
  }
  for (std::size_t a = 0; a < k.target.size(); ++a)
    for (std::size_t b = a + 1; b < k.target.size(); ++b)
      if (k.target[a] == k.target[b]) throw InvalidInput("kernel: duplicate target label");
}

MarkovKernel identity_kernel(const std::vector<Label>& labels) {
  MarkovKernel k{labels, labels, {}};
  k.weights.assign(labels.size(), std::vector<double>(labels.size(), 0.0));
  for (std::size_t i = 0; i < labels.size(); ++i) k.weights[i][i] = 1.0;
  return k;
}

MarkovKernel relabel_kernel(const std::vector<Label>& source,
                            const std::vector<Label>& image) {
  if (source.size() != image.size())
    throw InvalidInput("relabel_kernel: image length != source length");
  MarkovKernel k;
  k.source = source;
  std::vector<std::size_t> col;
  for (const auto& l : image) {
    std::size_t j = 0;
    while (j < k.target.size() && k.target[j] != l) ++j;
    if (j == k.target.size()) k.target.push_back(l);
    col.push_back(j);
  }
  k.weights.assign(source.size(), std::vector<double>(k.target.size(), 0.0));
  for (std::size_t i = 0; i < source.size(); ++i) k.weights[i][col[i]] = 1.0;
  return k;
}

MarkovKernel product_kernel(const MarkovKernel& b1, const MarkovKernel& b2) {
  MarkovKernel k;
  for (const auto& s1 : b1.source)
    for (const auto& s2 : b2.source) k.source.push_back(Label::pair(s1, s2));
  for (const auto& t1 : b1.target)
    for (const auto& t2 : b2.target) k.target.push_back(Label::pair(t1, t2));
  for (const auto& r1 : b1.weights)
    for (const auto& r2 : b2.weights) {
      std::vector<double> row;
      for (double w1 : r1)
        for (double w2 : r2) row.push_back(w1 * w2);
      k.weights.push_back(std::move(row));
    }
  return k;
}

DiscretePOVM post_process(const DiscretePOVM& m, const MarkovKernel& beta) {
  validate_kernel(beta);
  if (beta.source.size() != m.size())
    throw InvalidInput("post_process: kernel source count != outcome count");
  DiscretePOVM out;
  out.dim = m.dim;
  out.labels = beta.target;
  out.effects.assign(beta.target.size(), ComplexMatrix::zeros(m.dim, m.dim));
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (beta.source[i] != m.labels[i])
      throw InvalidInput("post_process: kernel source label " + beta.source[i].str() +
                         " does not match outcome " + m.labels[i].str());
    for (std::size_t z = 0; z < beta.target.size(); ++z)
      if (beta.weights[i][z] != 0.0) out.effects[z] += m.effects[i] * beta.weights[i][z];
  }
  return out;
}

MarkovKernel kernel_compose(const MarkovKernel& beta, const MarkovKernel& alpha) {
  validate_kernel(beta);
  validate_kernel(alpha);
  if (beta.source != alpha.target)
    throw InvalidInput("kernel_compose: source of beta != target of alpha");
  MarkovKernel k{alpha.source, beta.target, {}};
  k.weights.assign(alpha.source.size(), std::vector<double>(beta.target.size(), 0.0));
  for (std::size_t x = 0; x < alpha.source.size(); ++x)
    for (std::size_t y = 0; y < alpha.target.size(); ++y)
      for (std::size_t z = 0; z < beta.target.size(); ++z)
        k.weights[x][z] += beta.weights[y][z] * alpha.weights[x][y];
  return k;
}

double BlochObservable::norm() const {
  return std::sqrt(avec[0] * avec[0] + avec[1] * avec[1] + avec[2] * avec[2]);
}

const ComplexMatrix& pauli(int k) {
  static const ComplexMatrix sx{{0.0, 1.0}, {1.0, 0.0}};
  static const ComplexMatrix sy{{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}};
  static const ComplexMatrix sz{{1.0, 0.0}, {0.0, -1.0}};
  switch (k) {
    case 0: return sx;
    case 1: return sy;
    case 2: return sz;
  }
  throw InvalidInput("pauli index must be 0, 1 or 2");
}

ComplexMatrix bloch_operator(double scalar, const std::array<double, 3>& v) {
  ComplexMatrix m = ComplexMatrix::identity(2) * scalar;
  for (int k = 0; k < 3; ++k) m += pauli(k) * v[k];
  return m;
}

DiscretePOVM bloch_to_povm(const BlochObservable& b) {
  if (!(b.a >= 0.0 && b.a <= 1.0)) throw InvalidInput("bloch_to_povm: bias outside [0,1]");
  if (b.norm() > std::min(b.a, 1.0 - b.a) + 1e-12)
    throw InvalidInput("bloch_to_povm: |avec| exceeds min(a, 1-a)");
  std::array<double, 3> neg{-b.avec[0], -b.avec[1], -b.avec[2]};
  DiscretePOVM m;
  m.dim = 2;
  m.labels = {kPlus, kMinus};
  m.effects = {bloch_operator(b.a, b.avec), bloch_operator(1.0 - b.a, neg)};
  return m;
}

BlochObservable povm_to_bloch(const DiscretePOVM& m) {
  if (m.dim != 2 || m.size() != 2)
    throw InvalidInput("povm_to_bloch: need a binary qubit POVM");
  require_valid(m, "povm_to_bloch");
  const auto& e = m.effects[0];
  BlochObservable b;
  b.a = 0.5 * e.trace().real();
  for (int k = 0; k < 3; ++k) b.avec[k] = 0.5 * trace_of_product(e, pauli(k)).real();
  return b;
}

}  // namespace povmb
