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

#include "povmb/weyl.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "povmb/errors.hpp"
#include "povmb/linalg.hpp"

namespace povmb {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

cplx root_of_unity(std::size_t d, long long power) {
  const double t = kTwoPi * double(power % static_cast<long long>(d)) / double(d);
  return {std::cos(t), std::sin(t)};
}

}  // namespace

WeylSystem::WeylSystem(std::size_t d) : d_(d) {
  if (d == 0) throw InvalidInput("WeylSystem: dimension must be positive");
  u_.reserve(d);
  v_.reserve(d);
  for (std::size_t k = 0; k < d; ++k) {
    ComplexMatrix u(d, d), v(d, d);
    for (std::size_t m = 0; m < d; ++m) {
      u((m + k) % d, m) = 1.0;
      v(m, m) = root_of_unity(d, static_cast<long long>(m * k));
    }
    u_.push_back(std::move(u));
    v_.push_back(std::move(v));
  }
  w_.reserve(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const double t = std::numbers::pi * double(representative(k) * representative(l)) / double(d);
      w_.push_back(u_[k] * v_[l] * cplx(std::cos(t), std::sin(t)));
    }
  parity_ = ComplexMatrix(d, d);
  fourier_ = ComplexMatrix(d, d);
  const double s = 1.0 / std::sqrt(double(d));
  for (std::size_t m = 0; m < d; ++m) {
    parity_((d - m) % d, m) = 1.0;
    for (std::size_t n = 0; n < d; ++n)
      fourier_(m, n) = root_of_unity(d, static_cast<long long>(m * n)) * s;
  }
}

std::size_t WeylSystem::mod(long long k) const {
  const long long d = static_cast<long long>(d_);
  return static_cast<std::size_t>(((k % d) + d) % d);
}

long long WeylSystem::representative(std::size_t k) const {
  const long long kk = static_cast<long long>(k % d_);
  if (d_ % 2 == 1 && 2 * kk > static_cast<long long>(d_)) return kk - static_cast<long long>(d_);
  return kk;
}

std::vector<cplx> WeylSystem::position(std::size_t m) const {
  std::vector<cplx> v(d_);
  v[m % d_] = 1.0;
  return v;
}

std::vector<cplx> WeylSystem::momentum(std::size_t n) const {
  return fourier_.column(n % d_);
}

DiscretePOVM WeylSystem::position_pvm() const {
  return basis_pvm(ComplexMatrix::identity(d_));
}

DiscretePOVM WeylSystem::momentum_pvm() const { return basis_pvm(fourier_); }

DiscretePOVM WeylSystem::noisy_position(double lambda) const {
  return mix_with_noise(position_pvm(), lambda, std::vector<double>(d_, 1.0 / double(d_)));
}

DiscretePOVM WeylSystem::noisy_momentum(double mu) const {
  return mix_with_noise(momentum_pvm(), mu, std::vector<double>(d_, 1.0 / double(d_)));
}

ComplexMatrix WeylSystem::position_pinching(const ComplexMatrix& x) const {
  return pinch(x, ComplexMatrix::identity(d_));
}

ComplexMatrix WeylSystem::momentum_pinching(const ComplexMatrix& x) const {
  return pinch(x, fourier_);
}

void require_state(const ComplexMatrix& sigma, std::size_t d, const char* what) {
  if (!sigma.square() || sigma.rows() != d)
    throw InvalidInput(std::string(what) + ": state must be " + std::to_string(d) + "x" +
                       std::to_string(d));
  if (!is_hermitian(sigma)) throw InvalidInput(std::string(what) + ": state is not Hermitian");
  if (!is_psd(sigma)) throw InvalidInput(std::string(what) + ": state is not positive");
  if (std::abs(sigma.trace() - cplx(1.0)) > 1e-9)
    throw InvalidInput(std::string(what) + ": state does not have unit trace");
}

JointPOVM covariant_phase_povm(const WeylSystem& sys, const ComplexMatrix& sigma) {
  const std::size_t d = sys.dim();
  require_state(sigma, d, "covariant_phase_povm");
  JointPOVM g;
  g.dim = d;
  for (std::size_t k = 0; k < d; ++k) {
    g.x_labels.emplace_back(k);
    g.y_labels.emplace_back(k);
  }
  g.effects.assign(d, std::vector<ComplexMatrix>(d));
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n) {
      const auto& w = sys.weyl(m, n);
      g(m, n) = (w * sigma * w.adjoint() * (1.0 / double(d))).hermitian_part();
    }
  return g;
}

ComplexMatrix controlled_unitary(const WeylSystem& sys) {
  const std::size_t d = sys.dim();
  ComplexMatrix u(d * d, d * d);
  for (std::size_t k = 0; k < d; ++k)
    u += kron(sys.shift(k), ComplexMatrix::projector(sys.position(k)));
  return u;
}

WeylBroadcaster::WeylBroadcaster(const WeylSystem& sys, ComplexMatrix ancilla)
    : sys_(&sys), a_(std::move(ancilla)) {
  if (!a_.square() || a_.rows() != sys.dim())
    throw InvalidInput("WeylBroadcaster: ancilla has the wrong dimension");
}

ComplexMatrix WeylBroadcaster::dual(const ComplexMatrix& z) const {
  const std::size_t d = sys_->dim();
  if (!z.square() || z.rows() != d * d)
    throw InvalidInput("WeylBroadcaster::dual: observable must be D^2 x D^2");
  // Phi*(Z)_{kl} = sum_ij A_ji Z[(i+k, k), (j+l, l)]
  ComplexMatrix out(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      cplx s = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          s += a_(j, i) * z(((i + k) % d) * d + k, ((j + l) % d) * d + l);
      out(k, l) = s;
    }
  return out;
}

ComplexMatrix WeylBroadcaster::dual_product(const ComplexMatrix& r,
                                            const ComplexMatrix& s) const {
  const std::size_t d = sys_->dim();
  if (r.rows() != d || s.rows() != d || !r.square() || !s.square())
    throw InvalidInput("WeylBroadcaster::dual_product: factors must be D x D");
  // Phi*(R (x) S)_{kl} = S_kl tr(A U_k^dagger R U_l)
  ComplexMatrix out(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      if (s(k, l) == cplx(0.0)) continue;
      cplx t = 0.0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) t += a_(j, i) * r((i + k) % d, (j + l) % d);
      out(k, l) = s(k, l) * t;
    }
  return out;
}

Channel WeylBroadcaster::channel() const {
  const std::size_t d = sys_->dim();
  const auto eig = hermitian_eig(a_.hermitian_part());
  std::vector<ComplexMatrix> kraus;
  for (std::size_t e = 0; e < d; ++e) {
    if (eig.values[e] <= 0.0) continue;
    const double w = std::sqrt(eig.values[e]);
    // K |j> = w U (|v> (x) |j>) = w sum_m v_m |m+j> (x) |j>
    ComplexMatrix k(d * d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < d; ++m) k(((m + j) % d) * d + j, j) = w * eig.vectors(m, e);
    kraus.push_back(std::move(k));
  }
  return from_kraus(kraus);
}

double WeylBroadcaster::generation_residual(const DiscretePOVM& m, const DiscretePOVM& n,
                                            const JointPOVM& g) const {
  double worst = 0.0;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y) {
      const auto v = dual_product(m.effect(g.x_labels[x]), n.effect(g.y_labels[y]));
      worst = std::max(worst, frobenius_distance(v, g(x, y)));
    }
  return worst;
}

WeylBroadcaster standard_broadcaster_map(const WeylSystem& sys, const ComplexMatrix& sigma) {
  require_state(sigma, sys.dim(), "standard_broadcaster");
  const auto& p = sys.parity();
  return WeylBroadcaster(sys, p * sigma.transpose() * p);
}

Channel standard_broadcaster(const WeylSystem& sys, const ComplexMatrix& sigma) {
  return standard_broadcaster_map(sys, sigma).channel();
}

ComplexMatrix cov_noise_operator(const WeylSystem& sys, const ComplexMatrix& sigma,
                                 double lambda, double mu) {
  const std::size_t d = sys.dim();
  const auto id = ComplexMatrix::identity(d);
  ComplexMatrix c = sigma - sys.position_pinching(sigma) * (1.0 - mu) -
                    sys.momentum_pinching(sigma) * (1.0 - lambda) +
                    id * ((1.0 - lambda) * (1.0 - mu) / double(d));
  return c.hermitian_part();
}

namespace {

void check_noise_weights(double lambda, double mu) {
  for (double w : {lambda, mu})
    if (!std::isfinite(w) || w <= 0.0 || w > 1.0)
      throw InvalidInput("noise weights lambda, mu must lie in (0,1]");
}

}  // namespace

FeasibilityReport cov_noise_condition(const WeylSystem& sys, const ComplexMatrix& sigma,
                                      double lambda, double mu, double tol) {
  check_noise_weights(lambda, mu);
  require_state(sigma, sys.dim(), "cov_noise_condition");
  const auto c = cov_noise_operator(sys, sigma, lambda, mu);
  FeasibilityReport r;
  r.margin = min_eigenvalue(c);
  if (r.margin >= -tol * (1.0 + c.frobenius_norm())) {
    r.verdict = Verdict::kFeasible;
  } else {
    r.verdict = Verdict::kInfeasible;
    r.certificate = "condition operator has eigenvalue " + num(r.margin);
  }
  return r;
}

ComplexMatrix noisy_ancilla_state(const WeylSystem& sys, const ComplexMatrix& sigma,
                                  double lambda, double mu) {
  const auto r = cov_noise_condition(sys, sigma, lambda, mu);
  if (r.verdict != Verdict::kFeasible)
    throw PreconditionFailed("noisy_broadcaster: " + r.certificate.value_or("condition fails"));
  return cov_noise_operator(sys, sigma, lambda, mu) * (1.0 / (lambda * mu));
}

WeylBroadcaster noisy_broadcaster_map(const WeylSystem& sys, const ComplexMatrix& sigma,
                                      double lambda, double mu) {
  const auto st = noisy_ancilla_state(sys, sigma, lambda, mu);
  const auto& p = sys.parity();
  return WeylBroadcaster(sys, p * st.transpose() * p);
}

Channel noisy_broadcaster(const WeylSystem& sys, const ComplexMatrix& sigma, double lambda,
                          double mu) {
  return noisy_broadcaster_map(sys, sigma, lambda, mu).channel();
}

Channel covariant_channel_from_tau(const WeylSystem& sys, const ComplexMatrix& tau) {
  const auto g = covariant_phase_povm(sys, tau);
  const std::size_t d = sys.dim();
  std::vector<ComplexMatrix> effects, states;
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t s = 0; s < d; ++s) {
      effects.push_back(g(r, s));
      states.push_back(kron(ComplexMatrix::projector(sys.position(r)),
                            ComplexMatrix::projector(sys.momentum(s))));
    }
  return measure_and_prepare(effects, states);
}

ComplexMatrix weyl_convolve(const WeylSystem& sys, const ComplexMatrix& tau,
                            const std::vector<double>& mu, const std::vector<double>& nu) {
  const std::size_t d = sys.dim();
  const auto m = checked_probabilities(mu, "weyl_convolve"), n = checked_probabilities(nu, "weyl_convolve");
  if (m.size() != d || n.size() != d) throw InvalidInput("weyl_convolve: vectors must have length D");
  ComplexMatrix out(d, d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const double w = m[k] * n[l];
      if (w == 0.0) continue;
      const auto& wk = sys.weyl(k, l);
      out += wk * tau * wk.adjoint() * w;
    }
  return out;
}

cplx symplectic_weight(const WeylSystem& sys, const std::vector<double>& mu,
                       const std::vector<double>& nu, std::size_t a, std::size_t b) {
  // W_kl W_ab W_kl^dagger = exp(-i 2pi (kb - la)/D) W_ab
  const std::size_t d = sys.dim();
  cplx c = 0.0;
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      const long long ph = static_cast<long long>(l * a) - static_cast<long long>(k * b);
      c += mu[k] * nu[l] * root_of_unity(d, static_cast<long long>(sys.mod(ph)));
    }
  return c;
}

std::string to_string(TauResult::Status s) {
  switch (s) {
    case TauResult::Status::kFound: return "found";
    case TauResult::Status::kInfeasible: return "infeasible";
    case TauResult::Status::kIndeterminate: return "indeterminate";
  }
  return "indeterminate";
}

TauResult solve_tau(const WeylSystem& sys, const ComplexMatrix& sigma,
                    const std::vector<double>& mu, const std::vector<double>& nu) {
  const std::size_t d = sys.dim();
  require_state(sigma, d, "solve_tau");
  const auto m = checked_probabilities(mu, "solve_tau"), n = checked_probabilities(nu, "solve_tau");
  if (m.size() != d || n.size() != d) throw InvalidInput("solve_tau: vectors must have length D");

  TauResult res;
  const double zero_tol = 1e-9 * (1.0 + sigma.frobenius_norm());
  ComplexMatrix tau(d, d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const auto& w = sys.weyl(a, b);
      const cplx cs = hs_inner(w, sigma);
      const cplx c = symplectic_weight(sys, m, n, a, b);
      if (std::abs(c) > 1e-12) {
        tau += w * (cs / (c * double(d)));
      } else if (std::abs(cs) > zero_tol) {
        res.status = TauResult::Status::kInfeasible;
        res.detail = "Weyl coefficient (" + std::to_string(a) + "," + std::to_string(b) +
                     ") of sigma is " + num(std::abs(cs)) + " but its weight vanishes";
        return res;
      } else {
        ++res.free_coefficients;
      }
    }
  tau = tau.hermitian_part();
  res.min_eigenvalue = min_eigenvalue(tau);
  res.tau = tau;
  if (res.min_eigenvalue >= -1e-9 * (1.0 + tau.frobenius_norm())) {
    res.status = TauResult::Status::kFound;
  } else if (res.free_coefficients > 0) {
    res.status = TauResult::Status::kIndeterminate;
    res.detail = "zero completion of " + std::to_string(res.free_coefficients) +
                 " free coefficients has eigenvalue " + num(res.min_eigenvalue);
  } else {
    res.status = TauResult::Status::kInfeasible;
    res.detail = "unique preimage has eigenvalue " + num(res.min_eigenvalue);
  }
  return res;
}

std::vector<ComplexMatrix> weyl_group(const WeylSystem& sys) {
  std::vector<ComplexMatrix> g;
  for (std::size_t k = 0; k < sys.dim(); ++k)
    for (std::size_t l = 0; l < sys.dim(); ++l) g.push_back(sys.weyl(k, l));
  return g;
}

std::vector<ComplexMatrix> weyl_group_squared(const WeylSystem& sys) {
  std::vector<ComplexMatrix> g;
  for (const auto& w : weyl_group(sys)) g.push_back(kron(w, w));
  return g;
}

namespace {

void check_rep(const Channel& phi, const std::vector<ComplexMatrix>& in,
               const std::vector<ComplexMatrix>& out) {
  if (in.empty() || in.size() != out.size())
    throw InvalidInput("representations must be non-empty and of equal length");
  for (std::size_t g = 0; g < in.size(); ++g)
    if (in[g].rows() != phi.dim_in() || out[g].rows() != phi.dim_out())
      throw InvalidInput("representation dimensions do not match the channel");
}

}  // namespace

Channel twirl_channel(const Channel& phi, const std::vector<ComplexMatrix>& rep_in,
                      const std::vector<ComplexMatrix>& rep_out) {
  check_rep(phi, rep_in, rep_out);
  const auto& j = phi.choi();
  ComplexMatrix acc(j.rows(), j.cols());
  for (std::size_t g = 0; g < rep_in.size(); ++g) {
    const auto x = kron(rep_in[g].conj(), rep_out[g]);
    acc += x * j * x.adjoint();
  }
  acc *= 1.0 / double(rep_in.size());
  return Channel::from_choi_unchecked(phi.dim_in(), phi.dim_out(), acc.hermitian_part());
}

Channel twirl_channel(const Channel& phi, const WeylSystem& sys) {
  return twirl_channel(phi, weyl_group(sys), weyl_group_squared(sys));
}

double covariance_defect(const Channel& phi, const std::vector<ComplexMatrix>& in,
                         const std::vector<ComplexMatrix>& out) {
  check_rep(phi, in, out);
  double worst = 0.0;
  const auto& j = phi.choi();
  for (std::size_t g = 0; g < in.size(); ++g) {
    const auto x = kron(in[g].conj(), out[g]);
    worst = std::max(worst, frobenius_distance(j * x, x * j));
  }
  return worst;
}

double weyl_covariance_defect(const Channel& phi, const WeylSystem& sys, bool full_group) {
  if (full_group) return covariance_defect(phi, weyl_group(sys), weyl_group_squared(sys));
  std::vector<ComplexMatrix> in{sys.weyl(1, 0), sys.weyl(0, 1)};
  std::vector<ComplexMatrix> out{kron(in[0], in[0]), kron(in[1], in[1])};
  return covariance_defect(phi, in, out);
}

bool covariant_reduction_check(const WeylSystem& sys, const Channel& phi,
                               const DiscretePOVM& m, const DiscretePOVM& n,
                               const JointPOVM& g, double tol) {
  const std::size_t d = sys.dim();
  if (phi.dim_in() != d || phi.dim_out() != d * d || m.dim != d || n.dim != d || g.dim != d)
    throw InvalidInput("covariant_reduction_check: dimension mismatch");
  if (m.size() != d || n.size() != d || g.nx() != d || g.ny() != d)
    throw PreconditionFailed("covariant_reduction_check: families must be indexed by Z_D");
  auto idx = [&](const DiscretePOVM& f, std::size_t k) { return f.index_of(Label(k % d)); };
  auto gx = [&](std::size_t k) {
    for (std::size_t x = 0; x < d; ++x)
      if (g.x_labels[x] == Label(k % d)) return x;
    throw PreconditionFailed("covariant_reduction_check: G labels must be 0..D-1");
  };
  auto gy = [&](std::size_t k) {
    for (std::size_t y = 0; y < d; ++y)
      if (g.y_labels[y] == Label(k % d)) return y;
    throw PreconditionFailed("covariant_reduction_check: G labels must be 0..D-1");
  };
  const double ctol = 1e-9 * (1.0 + phi.choi().frobenius_norm());
  if (weyl_covariance_defect(phi, sys) > ctol)
    throw PreconditionFailed("covariant_reduction_check: channel is not covariant");
  const std::size_t gens[2][2] = {{1, 0}, {0, 1}};
  for (const auto& ab : gens) {
    const auto& w = sys.weyl(ab[0], ab[1]);
    for (std::size_t k = 0; k < d; ++k) {
      if (frobenius_distance(w * m.effects[idx(m, k)] * w.adjoint(), m.effects[idx(m, k + ab[0])]) > 1e-9)
        throw PreconditionFailed("covariant_reduction_check: M is not covariant");
      if (frobenius_distance(w * n.effects[idx(n, k)] * w.adjoint(), n.effects[idx(n, k + ab[1])]) > 1e-9)
        throw PreconditionFailed("covariant_reduction_check: N is not covariant");
      for (std::size_t l = 0; l < d; ++l)
        if (frobenius_distance(w * g(gx(k), gy(l)) * w.adjoint(), g(gx(k + ab[0]), gy(l + ab[1]))) > 1e-9)
          throw PreconditionFailed("covariant_reduction_check: G is not covariant");
    }
  }
  const auto v = dual_apply(phi, kron(m.effects[idx(m, 0)], n.effects[idx(n, 0)]));
  return frobenius_distance(v, g(gx(0), gy(0))) <= tol;
}

}  // namespace povmb
