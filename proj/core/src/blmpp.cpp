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

#include "povmb/blmpp.hpp"

#include <cmath>
#include <string>

#include "povmb/errors.hpp"
#include "povmb/linalg.hpp"
#include "povmb/weyl.hpp"

namespace povmb {

namespace {

std::size_t zmod(long long a, std::size_t n) {
  const long long m = static_cast<long long>(n);
  return static_cast<std::size_t>(((a % m) + m) % m);
}

// |e_{i+k}><e_i| summed over i, in computational coordinates.
ComplexMatrix basis_shift(const ComplexMatrix& e, std::size_t k) {
  const std::size_t n = e.rows();
  ComplexMatrix s(n, n);
  for (std::size_t i = 0; i < n; ++i) s((i + k) % n, i) = 1.0;
  return e * s * e.adjoint();
}

// sigma in e^M (x) e^N coordinates.
ComplexMatrix sigma_in_basis(const BlmppInstance& inst) {
  const ComplexMatrix e = kron(inst.basis_m, inst.basis_n);
  return e.adjoint() * inst.sigma * e;
}

ComplexMatrix convolve(const std::vector<double>& p, const std::vector<ComplexMatrix>& q,
                       std::size_t j) {
  const std::size_t n = q.size();
  ComplexMatrix out = ComplexMatrix::zeros(q[0].rows(), q[0].cols());
  for (std::size_t l = 0; l < n; ++l) {
    const double w = p[zmod(static_cast<long long>(j) - static_cast<long long>(l), n)];
    if (w != 0.0) out += q[l] * cplx(w);
  }
  return out;
}

std::vector<double> basis_distribution(const ComplexMatrix& rho, const ComplexMatrix& e) {
  std::vector<double> p(e.cols());
  for (std::size_t b = 0; b < e.cols(); ++b) {
    const auto v = e.column(b);
    cplx acc = 0.0;
    for (std::size_t r = 0; r < rho.rows(); ++r)
      for (std::size_t c = 0; c < rho.cols(); ++c) acc += std::conj(v[r]) * rho(r, c) * v[c];
    p[b] = acc.real();
  }
  return p;
}

void check_basis(const ComplexMatrix& e, std::size_t n, const char* what) {
  if (e.rows() != n || e.cols() != n || !is_unitary(e))
    throw InvalidInput(std::string(what) + ": resource basis must be a " + std::to_string(n) +
                       "x" + std::to_string(n) + " unitary");
}

}  // namespace

BlmppInstance make_blmpp_instance(DiscretePOVM p, DiscretePOVM q, ComplexMatrix sigma,
                                  ComplexMatrix basis_m, ComplexMatrix basis_n) {
  BlmppInstance inst;
  const std::size_t m = p.size();
  const std::size_t n = q.size();
  inst.p = std::move(p);
  inst.q = std::move(q);
  inst.sigma = std::move(sigma);
  inst.basis_m = basis_m.empty() ? ComplexMatrix::identity(m) : std::move(basis_m);
  inst.basis_n = basis_n.empty() ? ComplexMatrix::identity(n) : std::move(basis_n);
  validate_instance(inst);
  return inst;
}

void validate_instance(const BlmppInstance& inst) {
  require_valid(inst.p, "blmpp target P");
  require_valid(inst.q, "blmpp target Q");
  if (inst.p.dim != inst.q.dim) throw InvalidInput("blmpp: P and Q act on different spaces");
  if (!is_pvm(inst.p) || !is_pvm(inst.q)) throw InvalidInput("blmpp: targets must be PVMs");
  check_basis(inst.basis_m, inst.m(), "blmpp e^M");
  check_basis(inst.basis_n, inst.n(), "blmpp e^N");
  const std::size_t k = inst.m() * inst.n();
  if (inst.sigma.rows() != k || inst.sigma.cols() != k)
    throw InvalidInput("blmpp: sigma must be " + std::to_string(k) + "x" + std::to_string(k));
  if (!is_hermitian(inst.sigma) || !is_psd(inst.sigma) ||
      std::abs(inst.sigma.trace() - 1.0) > 1e-9)
    throw InvalidInput("blmpp: sigma is not a state");
}

std::pair<ComplexMatrix, ComplexMatrix> coupling_unitaries(const BlmppInstance& inst) {
  validate_instance(inst);
  const std::size_t h = inst.h(), m = inst.m(), n = inst.n();
  const ComplexMatrix im = ComplexMatrix::identity(m);
  const ComplexMatrix in = ComplexMatrix::identity(n);
  ComplexMatrix u = ComplexMatrix::zeros(h * m * n, h * m * n);
  ComplexMatrix v = u;
  for (std::size_t k = 0; k < m; ++k)
    u += kron({inst.p.effects[k], basis_shift(inst.basis_m, k), in});
  for (std::size_t l = 0; l < n; ++l)
    v += kron({inst.q.effects[l], im, basis_shift(inst.basis_n, l)});
  return {u, v};
}

Channel blmpp_channel(const BlmppInstance& inst) {
  const auto [u, v] = coupling_unitaries(inst);
  const std::size_t h = inst.h(), k = inst.m() * inst.n();
  const ComplexMatrix w = v * u;
  const auto eig = hermitian_eig(inst.sigma);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t r = 0; r < k; ++r) {
    const double s = eig.values[r];
    if (s <= 1e-15) continue;
    const auto chi = eig.vectors.column(r);
    const double amp = std::sqrt(s);
    for (std::size_t a = 0; a < h; ++a) {
      ComplexMatrix op(k, h);
      for (std::size_t out = 0; out < k; ++out)
        for (std::size_t in = 0; in < h; ++in) {
          cplx acc = 0.0;
          for (std::size_t c = 0; c < k; ++c) acc += w(a * k + out, in * k + c) * chi[c];
          op(out, in) = amp * acc;
        }
      kraus.push_back(std::move(op));
    }
  }
  return from_kraus(kraus);
}

JointPOVM blmpp_joint(const BlmppInstance& inst) {
  validate_instance(inst);
  const std::size_t h = inst.h(), m = inst.m(), n = inst.n();
  const ComplexMatrix se = sigma_in_basis(inst);

  JointPOVM g;
  g.dim = h;
  g.x_labels = inst.p.labels;
  g.y_labels = inst.q.labels;
  g.effects.assign(m, std::vector<ComplexMatrix>(n, ComplexMatrix::zeros(h, h)));

  // Block S_b(a, a') = <e_a, e_b| sigma |e_a', e_b> = sum_r t_r v_r v_r^dagger
  // turns the k, k' double sum into sum_r t_r L^dagger Q L.
  for (std::size_t b = 0; b < n; ++b) {
    ComplexMatrix sb(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t a2 = 0; a2 < m; ++a2) sb(a, a2) = se(a * n + b, a2 * n + b);
    if (sb.max_abs() == 0.0) continue;
    const auto eig = hermitian_eig(sb.hermitian_part());
    for (std::size_t r = 0; r < m; ++r) {
      const double t = eig.values[r];
      if (t == 0.0) continue;
      const auto vr = eig.vectors.column(r);
      for (std::size_t i = 0; i < m; ++i) {
        ComplexMatrix l = ComplexMatrix::zeros(h, h);
        for (std::size_t k = 0; k < m; ++k) {
          const cplx c = vr[zmod(static_cast<long long>(i) - static_cast<long long>(k), m)];
          if (c != 0.0) l += inst.p.effects[k] * c;
        }
        const ComplexMatrix ld = l.adjoint();
        for (std::size_t j = 0; j < n; ++j)
          g.effects[i][j] += ld * inst.q.effects[(j + n - b) % n] * l * cplx(t);
      }
    }
  }
  for (auto& row : g.effects)
    for (auto& e : row) e = e.hermitian_part();
  return g;
}

std::pair<DiscretePOVM, DiscretePOVM> blmpp_resources(const BlmppInstance& inst) {
  DiscretePOVM qm = basis_pvm(inst.basis_m);
  DiscretePOVM qn = basis_pvm(inst.basis_n);
  qm.labels = inst.p.labels;
  qn.labels = inst.q.labels;
  return {qm, qn};
}

std::vector<cplx> h_vector(std::size_t m) {
  if (m == 0) throw InvalidInput("h_vector: M must be >= 1");
  const double sm = std::sqrt(static_cast<double>(m));
  const double c = std::sqrt(sm / (2.0 * (sm + 1.0)));
  std::vector<cplx> h(m, c / sm);
  h[0] = c * (1.0 + 1.0 / sm);
  return h;
}

double h_weight(std::size_t m) {
  const double sm = std::sqrt(static_cast<double>(m));
  return (sm + 2.0) / (2.0 * (sm + 1.0));
}

DiscretePOVM second_margin_via_kraus(const BlmppInstance& inst) {
  validate_instance(inst);
  const std::size_t h = inst.h(), m = inst.m(), n = inst.n();
  const DimensionSpec dims{{m, n}};
  const ComplexMatrix s1 = partial_trace(inst.sigma, dims, {0});
  const ComplexMatrix s2 = partial_trace(inst.sigma, dims, {1});
  const auto p2 = basis_distribution(s2, inst.basis_n);
  const auto eig = hermitian_eig(s1.hermitian_part());
  const ComplexMatrix ed = inst.basis_m.adjoint();

  DiscretePOVM out;
  out.dim = h;
  out.labels = inst.q.labels;
  std::vector<ComplexMatrix> conv(n);
  for (std::size_t j = 0; j < n; ++j) conv[j] = convolve(p2, inst.q.effects, j);
  out.effects.assign(n, ComplexMatrix::zeros(h, h));

  for (std::size_t mi = 0; mi < m; ++mi) {
    const double s = eig.values[mi];
    if (s <= 0.0) continue;
    const auto eta = ed.apply(eig.vectors.column(mi));  // <e_a|eta_m>
    for (std::size_t nn = 0; nn < m; ++nn) {
      ComplexMatrix k = ComplexMatrix::zeros(h, h);
      for (std::size_t kk = 0; kk < m; ++kk) {
        const cplx c = eta[zmod(static_cast<long long>(nn) - static_cast<long long>(kk), m)];
        if (c != 0.0) k += inst.p.effects[kk] * (std::sqrt(s) * c);
      }
      const ComplexMatrix kd = k.adjoint();
      for (std::size_t j = 0; j < n; ++j) out.effects[j] += kd * conv[j] * k;
    }
  }
  for (auto& e : out.effects) e = e.hermitian_part();
  return out;
}

std::pair<DiscretePOVM, DiscretePOVM> special_margins(const BlmppInstance& inst) {
  validate_instance(inst);
  const std::size_t h = inst.h(), m = inst.m(), n = inst.n();
  const ComplexMatrix hv = ComplexMatrix::projector(inst.basis_m.apply(h_vector(m)));
  const ComplexMatrix s2 = partial_trace(inst.sigma, DimensionSpec{{m, n}}, {1});
  if (frobenius_distance(inst.sigma, kron(hv, s2)) > 1e-10)
    throw PreconditionFailed("special_margins: sigma is not |h^M><h^M| (x) sigma_2");

  const double w = h_weight(m);
  const auto p2 = basis_distribution(s2, inst.basis_n);

  DiscretePOVM g1;
  g1.dim = h;
  g1.labels = inst.p.labels;
  const ComplexMatrix t = ComplexMatrix::identity(h) * cplx((1.0 - w) / static_cast<double>(m));
  for (const auto& pk : inst.p.effects) g1.effects.push_back(pk * cplx(w) + t);

  std::vector<ComplexMatrix> qp(n, ComplexMatrix::zeros(h, h));
  for (std::size_t j = 0; j < n; ++j)
    for (const auto& pi : inst.p.effects) qp[j] += pi * inst.q.effects[j] * pi;

  DiscretePOVM g2;
  g2.dim = h;
  g2.labels = inst.q.labels;
  for (std::size_t j = 0; j < n; ++j)
    g2.effects.push_back(convolve(p2, inst.q.effects, j) * cplx(w) +
                         convolve(p2, qp, j) * cplx(1.0 - w));
  return {g1, g2};
}

BlmppInstance mub_instance(std::size_t d) {
  if (d < 2) throw InvalidInput("mub_instance: D must be >= 2");
  const WeylSystem sys(d);
  const ComplexMatrix h = ComplexMatrix::projector(h_vector(d));
  ComplexMatrix e0 = ComplexMatrix::zeros(d, d);
  e0(0, 0) = 1.0;
  return make_blmpp_instance(sys.position_pvm(), sys.momentum_pvm(), kron(h, e0));
}

JointPOVM optimal_mub_joint(std::size_t d) { return blmpp_joint(mub_instance(d)); }

std::pair<DiscretePOVM, DiscretePOVM> mub_reference_margins(std::size_t d) {
  if (d < 2) throw InvalidInput("mub_reference_margins: D must be >= 2");
  const WeylSystem sys(d);
  const double a = 0.5 * (1.0 + 1.0 / std::sqrt(static_cast<double>(d)));
  const ComplexMatrix id = ComplexMatrix::identity(d);
  auto mix = [&](DiscretePOVM pvm) {
    for (auto& e : pvm.effects)
      e = e * cplx(a) + (id - e) * cplx((1.0 - a) / static_cast<double>(d - 1));
    return pvm;
  };
  return {mix(sys.position_pvm()), mix(sys.momentum_pvm())};
}

DiscretePOVM hybrid_process(const DiscretePOVM& m, const Channel& phi,
                            const MarkovKernel& beta) {
  require_valid(m, "hybrid_process input");
  if (m.dim != phi.dim_out())
    throw InvalidInput("hybrid_process: POVM dimension " + std::to_string(m.dim) +
                       " does not match channel output " + std::to_string(phi.dim_out()));
  DiscretePOVM pre;
  pre.dim = phi.dim_in();
  pre.labels = m.labels;
  for (const auto& e : m.effects) pre.effects.push_back(dual_apply(phi, e).hermitian_part());
  return post_process(pre, beta);
}

DiscretePOVM realize(const BlmppWitness& w, const DiscretePOVM& m, const DiscretePOVM& n) {
  return hybrid_process(tensor_povm(m, n).to_povm(), w.channel, w.kernel);
}

BlmppWitness compose_blmpp_witness(const BlmppWitness& g, const HybridWitness& m_from,
                                   const HybridWitness& n_from) {
  BlmppWitness out{compose(tensor(m_from.channel, n_from.channel), g.channel),
                   kernel_compose(g.kernel, product_kernel(m_from.kernel, n_from.kernel))};
  return out;
}

std::pair<DiscretePOVM, MarkovKernel> rank1_refinement(const DiscretePOVM& m,
                                                       double rank_tol) {
  require_valid(m, "rank1_refinement input");
  DiscretePOVM r;
  r.dim = m.dim;
  std::vector<Label> image;
  for (std::size_t x = 0; x < m.size(); ++x) {
    const auto eig = hermitian_eig(m.effects[x]);
    std::size_t rank = 0;
    for (std::size_t c = m.dim; c-- > 0;) {  // descending eigenvalues
      const double lam = eig.values[c];
      if (lam <= rank_tol) continue;
      r.labels.push_back(Label::pair(m.labels[x], Label(rank++)));
      r.effects.push_back(ComplexMatrix::projector(eig.vectors.column(c)) * cplx(lam));
      image.push_back(m.labels[x]);
    }
  }
  // Targets follow M's order, including outcomes with zero effect.
  MarkovKernel merge;
  merge.source = r.labels;
  merge.target = m.labels;
  for (const auto& l : image) {
    std::vector<double> w(m.size(), 0.0);
    w[m.index_of(l)] = 1.0;
    merge.weights.push_back(std::move(w));
  }
  return {r, merge};
}

RankOneDilation naimark_rank1(const DiscretePOVM& m, double rank_tol) {
  auto [r, merge] = rank1_refinement(m, rank_tol);
  const std::size_t big = r.size();
  // V = sum_c |c><sqrt(lambda_c) v_c|; the rank-1 effects sum to I, so V is an isometry.
  ComplexMatrix v(big, m.dim);
  for (std::size_t c = 0; c < big; ++c) {
    const auto eig = hermitian_eig(r.effects[c]);
    const double lam = eig.values[m.dim - 1];
    const auto vec = eig.vectors.column(m.dim - 1);
    for (std::size_t i = 0; i < m.dim; ++i) v(c, i) = std::sqrt(lam) * std::conj(vec[i]);
  }
  DiscretePOVM pvm = computational_pvm(big);
  pvm.labels = r.labels;
  return {pvm, v, HybridWitness{from_kraus({v}), merge}};
}

}  // namespace povmb
