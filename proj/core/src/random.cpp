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

#include "povmb/random.hpp"

#include <cmath>
#include <numeric>

#include "povmb/errors.hpp"
#include "povmb/linalg.hpp"

namespace povmb {

namespace {
cplx gaussian(Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  const double im = n(rng);
  return {re, im};
}
}  // namespace

ComplexMatrix random_ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  ComplexMatrix a(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a(r, c) = gaussian(rng);
  return a;
}

std::vector<cplx> random_vector(Rng& rng, std::size_t d) {
  std::vector<cplx> v(d);
  double norm = 0.0;
  for (auto& x : v) {
    x = gaussian(rng);
    norm += std::norm(x);
  }
  norm = std::sqrt(norm);
  for (auto& x : v) x /= norm;
  return v;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t d) {
  return random_ginibre(rng, d, d).hermitian_part();
}

ComplexMatrix random_unitary(Rng& rng, std::size_t d) {
  // Modified Gram-Schmidt; positive R diagonal gives the Haar measure.
  ComplexMatrix q = random_ginibre(rng, d, d);
  for (std::size_t c = 0; c < d; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < d; ++r) dot += std::conj(q(r, p)) * q(r, c);
      for (std::size_t r = 0; r < d; ++r) q(r, c) -= dot * q(r, p);
    }
    double n = 0.0;
    for (std::size_t r = 0; r < d; ++r) n += std::norm(q(r, c));
    n = std::sqrt(n);
    for (std::size_t r = 0; r < d; ++r) q(r, c) /= n;
  }
  return q;
}

ComplexMatrix random_state(Rng& rng, std::size_t d, std::size_t rank) {
  const ComplexMatrix g = random_ginibre(rng, d, rank == 0 ? d : rank);
  ComplexMatrix rho = g * g.adjoint();
  rho *= cplx(1.0 / rho.trace().real());
  return rho.hermitian_part();
}

DiscretePOVM random_pvm(Rng& rng, std::size_t d, const std::vector<std::size_t>& ranks) {
  if (std::accumulate(ranks.begin(), ranks.end(), std::size_t{0}) != d)
    throw InvalidInput("random_pvm: ranks must sum to the dimension");
  const ComplexMatrix u = random_unitary(rng, d);
  DiscretePOVM m;
  m.dim = d;
  std::size_t col = 0;
  for (std::size_t x = 0; x < ranks.size(); ++x) {
    ComplexMatrix p = ComplexMatrix::zeros(d, d);
    for (std::size_t k = 0; k < ranks[x]; ++k) p += ComplexMatrix::projector(u.column(col++));
    m.labels.emplace_back(x);
    m.effects.push_back(p.hermitian_part());
  }
  return m;
}

DiscretePOVM random_rank1_pvm(Rng& rng, std::size_t d) {
  return random_pvm(rng, d, std::vector<std::size_t>(d, 1));
}

DiscretePOVM random_povm(Rng& rng, std::size_t d, std::size_t outcomes) {
  std::vector<ComplexMatrix> a;
  ComplexMatrix s = ComplexMatrix::zeros(d, d);
  for (std::size_t x = 0; x < outcomes; ++x) {
    const ComplexMatrix g = random_ginibre(rng, d, d);
    a.push_back(g * g.adjoint());
    s += a.back();
  }
  const ComplexMatrix t = inverse_sqrt(s.hermitian_part());
  DiscretePOVM m;
  m.dim = d;
  for (std::size_t x = 0; x < outcomes; ++x) {
    m.labels.emplace_back(x);
    m.effects.push_back((t * a[x] * t).hermitian_part());
  }
  return m;
}

JointPOVM random_joint(Rng& rng, std::size_t d, const std::vector<Label>& x_labels,
                       const std::vector<Label>& y_labels) {
  const DiscretePOVM flat = random_povm(rng, d, x_labels.size() * y_labels.size());
  JointPOVM g;
  g.dim = d;
  g.x_labels = x_labels;
  g.y_labels = y_labels;
  std::size_t c = 0;
  for (std::size_t x = 0; x < x_labels.size(); ++x) {
    g.effects.emplace_back();
    for (std::size_t y = 0; y < y_labels.size(); ++y) g.effects[x].push_back(flat.effects[c++]);
  }
  return g;
}

Channel random_channel(Rng& rng, std::size_t din, std::size_t dout, std::size_t kraus) {
  if (kraus == 0) kraus = din * dout;
  const ComplexMatrix u = random_unitary(rng, kraus * dout);
  // First din columns form an isometry C^din -> C^kraus (x) C^dout.
  std::vector<ComplexMatrix> ops(kraus, ComplexMatrix(dout, din));
  for (std::size_t k = 0; k < kraus; ++k)
    for (std::size_t o = 0; o < dout; ++o)
      for (std::size_t i = 0; i < din; ++i) ops[k](o, i) = u(k * dout + o, i);
  return from_kraus(ops);
}

std::vector<double> random_probabilities(Rng& rng, std::size_t n) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double s = 0.0;
  for (auto& x : p) s += (x = e(rng));
  for (auto& x : p) x /= s;
  return p;
}

MarkovKernel random_kernel(Rng& rng, const std::vector<Label>& source,
                           const std::vector<Label>& target) {
  MarkovKernel k{source, target, {}};
  for (std::size_t i = 0; i < source.size(); ++i)
    k.weights.push_back(random_probabilities(rng, target.size()));
  return k;
}

}  // namespace povmb
