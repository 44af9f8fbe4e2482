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

#include "povmb/channel.hpp"

#include <cmath>
#include <string>

#include "povmb/errors.hpp"
#include "povmb/linalg.hpp"

namespace povmb {

Channel Channel::from_choi_unchecked(std::size_t dim_in, std::size_t dim_out,
                                     ComplexMatrix choi) {
  if (dim_in == 0 || dim_out == 0) throw InvalidInput("channel: zero dimension");
  if (choi.rows() != dim_in * dim_out || !choi.square())
    throw InvalidInput("channel: Choi matrix must be (dim_in*dim_out) square");
  Channel c;
  c.dim_in_ = dim_in;
  c.dim_out_ = dim_out;
  c.choi_ = std::move(choi);
  return c;
}

Channel Channel::from_choi(std::size_t dim_in, std::size_t dim_out,
                           ComplexMatrix choi, double psd_tol, double tp_tol) {
  Channel c = from_choi_unchecked(dim_in, dim_out, std::move(choi));
  if (!is_hermitian(c.choi_)) throw InvalidInput("channel: Choi matrix is not Hermitian");
  const auto r = verify_cptp(c, psd_tol, tp_tol);
  if (!r.completely_positive)
    throw InvalidInput("channel: Choi matrix has eigenvalue " +
                       std::to_string(r.min_eigenvalue));
  if (!r.trace_preserving)
    throw InvalidInput("channel: trace-preservation defect " + std::to_string(r.tp_defect));
  return c;
}

Channel Channel::identity(std::size_t dim) {
  return unitary_channel(ComplexMatrix::identity(dim));
}

ComplexMatrix Channel::block(std::size_t i, std::size_t j) const {
  ComplexMatrix b(dim_out_, dim_out_);
  for (std::size_t a = 0; a < dim_out_; ++a)
    for (std::size_t c = 0; c < dim_out_; ++c)
      b(a, c) = choi_(i * dim_out_ + a, j * dim_out_ + c);
  return b;
}

CptpReport verify_cptp(const Channel& phi, double psd_tol, double tp_tol) {
  CptpReport r;
  const auto& j = phi.choi();
  if (!is_hermitian(j)) {
    r.min_eigenvalue = -(j - j.adjoint()).max_abs();
  } else {
    r.min_eigenvalue = min_eigenvalue(j);
  }
  r.completely_positive =
      is_hermitian(j) && r.min_eigenvalue >= -psd_tol * (1.0 + j.frobenius_norm());
  const auto t = partial_trace(j, {phi.dim_in(), phi.dim_out()}, {0});
  r.tp_defect = frobenius_distance(t, ComplexMatrix::identity(phi.dim_in()));
  r.trace_preserving = r.tp_defect <= tp_tol;
  return r;
}

Channel from_kraus(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw InvalidInput("from_kraus: no operators");
  const std::size_t dout = ops.front().rows(), din = ops.front().cols();
  ComplexMatrix norm(din, din);
  for (const auto& k : ops) {
    if (k.rows() != dout || k.cols() != din)
      throw InvalidInput("from_kraus: operators have inconsistent shapes");
    norm += k.adjoint() * k;
  }
  const double dev = frobenius_distance(norm, ComplexMatrix::identity(din));
  if (dev > 1e-9)
    throw InvalidInput("from_kraus: sum K^dagger K differs from identity by " +
                       std::to_string(dev));
  ComplexMatrix choi(din * dout, din * dout);
  for (const auto& k : ops)
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t j = 0; j < din; ++j)
        for (std::size_t a = 0; a < dout; ++a) {
          const cplx kai = k(a, i);
          if (kai == cplx(0.0)) continue;
          for (std::size_t b = 0; b < dout; ++b)
            choi(i * dout + a, j * dout + b) += kai * std::conj(k(b, j));
        }
  return Channel::from_choi_unchecked(din, dout, std::move(choi));
}

Channel unitary_channel(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw InvalidInput("unitary_channel: matrix is not unitary");
  return from_kraus({u});
}

Channel constant_channel(std::size_t dim_in, const ComplexMatrix& sigma) {
  return measure_and_prepare({ComplexMatrix::identity(dim_in)}, {sigma});
}

Channel measure_and_prepare(const std::vector<ComplexMatrix>& effects,
                            const std::vector<ComplexMatrix>& states) {
  if (effects.empty() || effects.size() != states.size())
    throw InvalidInput("measure_and_prepare: need one state per effect");
  const std::size_t din = effects.front().rows(), dout = states.front().rows();
  ComplexMatrix choi(din * dout, din * dout);
  for (std::size_t c = 0; c < effects.size(); ++c) {
    const auto& e = effects[c];
    const auto& s = states[c];
    if (e.rows() != din || !e.square() || s.rows() != dout || !s.square())
      throw InvalidInput("measure_and_prepare: inconsistent shapes");
    // Phi(|i><j|) = sum_c <j|E_c|i> sigma_c
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t j = 0; j < din; ++j) {
        const cplx w = e(j, i);
        if (w == cplx(0.0)) continue;
        for (std::size_t a = 0; a < dout; ++a)
          for (std::size_t b = 0; b < dout; ++b)
            choi(i * dout + a, j * dout + b) += w * s(a, b);
      }
  }
  return Channel::from_choi_unchecked(din, dout, std::move(choi));
}

ComplexMatrix apply(const Channel& phi, const ComplexMatrix& rho) {
  const std::size_t din = phi.dim_in(), dout = phi.dim_out();
  if (rho.rows() != din || !rho.square())
    throw InvalidInput("apply: state has the wrong dimension");
  const auto& j = phi.choi();
  ComplexMatrix out(dout, dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t k = 0; k < din; ++k) {
      const cplx r = rho(i, k);
      if (r == cplx(0.0)) continue;
      for (std::size_t a = 0; a < dout; ++a) {
        const cplx* src = j.data() + (i * dout + a) * j.cols() + k * dout;
        for (std::size_t b = 0; b < dout; ++b) out(a, b) += r * src[b];
      }
    }
  return out;
}

ComplexMatrix dual_apply(const Channel& phi, const ComplexMatrix& r) {
  const std::size_t din = phi.dim_in(), dout = phi.dim_out();
  if (r.rows() != dout || !r.square())
    throw InvalidInput("dual_apply: observable has the wrong dimension");
  const auto& j = phi.choi();
  ComplexMatrix out(din, din);
  // Phi*(R)_{ki} = tr(Phi(|i><k|) R)
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t k = 0; k < din; ++k) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < dout; ++a) {
        const cplx* src = j.data() + (i * dout + a) * j.cols() + k * dout;
        for (std::size_t b = 0; b < dout; ++b) s += src[b] * r(b, a);
      }
      out(k, i) = s;
    }
  return out;
}

Channel measure_and_prepare_broadcaster(const DiscretePOVM& p,
                                        const DiscretePOVM& q,
                                        const JointPOVM& g) {
  if (!is_pvm(p) || !is_pvm(q))
    throw InvalidInput("measure_and_prepare_broadcaster: P and Q must be PVMs");
  require_valid(g.to_povm(), "measure_and_prepare_broadcaster");
  for (const auto* m : {&p, &q})
    for (std::size_t k = 0; k < m->size(); ++k)
      if (m->effects[k].frobenius_norm() <= 1e-12)
        throw UnsupportedInput("measure_and_prepare_broadcaster: effect " +
                               m->labels[k].str() + " is zero (support condition fails)");
  if (g.nx() != p.size() || g.ny() != q.size())
    throw InvalidInput("measure_and_prepare_broadcaster: grid does not match P x Q");

  std::vector<ComplexMatrix> effects, states;
  for (std::size_t x = 0; x < g.nx(); ++x) {
    const auto& px = p.effect(g.x_labels[x]);
    const auto s1 = px * (1.0 / px.trace().real());
    for (std::size_t y = 0; y < g.ny(); ++y) {
      const auto& qy = q.effect(g.y_labels[y]);
      effects.push_back(g(x, y));
      states.push_back(kron(s1, qy * (1.0 / qy.trace().real())));
    }
  }
  return measure_and_prepare(effects, states);
}

Channel self_joint_broadcaster(const DiscretePOVM& q) {
  if (!is_pvm(q)) throw InvalidInput("self_joint_broadcaster: Q is not a PVM");
  const std::size_t n = q.dim;
  std::vector<ComplexMatrix> effects, states;
  for (const auto& e : q.effects) {
    const auto eig = hermitian_eig(e);
    for (std::size_t k = 0; k < n; ++k) {
      if (eig.values[k] < 0.5) continue;
      const auto v = eig.vectors.column(k);
      std::vector<cplx> vv(n * n);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) vv[a * n + b] = v[a] * v[b];
      effects.push_back(ComplexMatrix::projector(v));
      states.push_back(ComplexMatrix::projector(vv));
    }
  }
  return measure_and_prepare(effects, states);
}

Channel compose(const Channel& phi2, const Channel& phi1) {
  if (phi1.dim_out() != phi2.dim_in())
    throw InvalidInput("compose: output of the first channel != input of the second");
  const std::size_t din = phi1.dim_in(), dout = phi2.dim_out();
  ComplexMatrix choi(din * dout, din * dout);
  for (std::size_t i = 0; i < din; ++i)
    for (std::size_t j = 0; j < din; ++j) {
      const auto b = apply(phi2, phi1.block(i, j));
      for (std::size_t a = 0; a < dout; ++a)
        for (std::size_t c = 0; c < dout; ++c) choi(i * dout + a, j * dout + c) = b(a, c);
    }
  return Channel::from_choi_unchecked(din, dout, std::move(choi));
}

Channel tensor(const Channel& a, const Channel& b) {
  const std::size_t ia = a.dim_in(), ib = b.dim_in(), oa = a.dim_out(), ob = b.dim_out();
  const std::size_t din = ia * ib, dout = oa * ob;
  ComplexMatrix choi(din * dout, din * dout);
  for (std::size_t i1 = 0; i1 < ia; ++i1)
    for (std::size_t j1 = 0; j1 < ia; ++j1) {
      const auto ba = a.block(i1, j1);
      for (std::size_t i2 = 0; i2 < ib; ++i2)
        for (std::size_t j2 = 0; j2 < ib; ++j2) {
          const auto blk = kron(ba, b.block(i2, j2));
          const std::size_t i = i1 * ib + i2, j = j1 * ib + j2;
          for (std::size_t r = 0; r < dout; ++r)
            for (std::size_t c = 0; c < dout; ++c)
              choi(i * dout + r, j * dout + c) = blk(r, c);
        }
    }
  return Channel::from_choi_unchecked(din, dout, std::move(choi));
}

}  // namespace povmb
