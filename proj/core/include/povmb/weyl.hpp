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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "povmb/channel.hpp"
#include "povmb/feasibility.hpp"
#include "povmb/matrix.hpp"
#include "povmb/povm.hpp"

namespace povmb {

// Position/momentum pair on Z_D.
//   U_k phi_m = phi_{m+k},  V_l phi_m = w^{ml} phi_m,  w = exp(2 pi i / D)
//   psi_n = D^{-1/2} sum_m w^{mn} phi_m
//   W_{k,l} = exp(i pi k' l' / D) U_k V_l
// where k', l' are representatives in (-D/2, D/2] for odd D and in
// {0..D-1} for even D. With that choice W_{-k,-l} = W_{k,l}^dagger holds
// exactly for odd D; for even D it holds up to (-1)^{k+l} when k, l != 0.
class WeylSystem {
 public:
  explicit WeylSystem(std::size_t d);

  std::size_t dim() const { return d_; }
  std::size_t mod(long long k) const;
  long long representative(std::size_t k) const;

  const ComplexMatrix& shift(std::size_t k) const { return u_[k % d_]; }
  const ComplexMatrix& boost(std::size_t l) const { return v_[l % d_]; }
  const ComplexMatrix& weyl(std::size_t k, std::size_t l) const {
    return w_[(k % d_) * d_ + (l % d_)];
  }
  const ComplexMatrix& parity() const { return parity_; }
  // Columns are psi_0 .. psi_{D-1}.
  const ComplexMatrix& fourier() const { return fourier_; }

  std::vector<cplx> position(std::size_t m) const;
  std::vector<cplx> momentum(std::size_t n) const;

  DiscretePOVM position_pvm() const;
  DiscretePOVM momentum_pvm() const;
  // lambda Q_m + (1 - lambda) I / D
  DiscretePOVM noisy_position(double lambda) const;
  DiscretePOVM noisy_momentum(double mu) const;

  // Diagonal parts of X in the position / momentum basis.
  ComplexMatrix position_pinching(const ComplexMatrix& x) const;
  ComplexMatrix momentum_pinching(const ComplexMatrix& x) const;

 private:
  std::size_t d_;
  std::vector<ComplexMatrix> u_, v_, w_;
  ComplexMatrix parity_, fourier_;
};

// Throws InvalidInput unless sigma is a D x D state (PSD, unit trace).
void require_state(const ComplexMatrix& sigma, std::size_t d, const char* what);

// G_{m,n} = (1/D) W_{m,n} sigma W_{m,n}^dagger, labels (m, n).
JointPOVM covariant_phase_povm(const WeylSystem& sys, const ComplexMatrix& sigma);

// sum_k U_k (x) |phi_k><phi_k|; the second factor controls.
ComplexMatrix controlled_unitary(const WeylSystem& sys);

// Phi(rho) = U (A (x) rho) U^dagger with the ancilla A in the first factor.
// dual() never forms the D^3 x D^3 Choi matrix.
class WeylBroadcaster {
 public:
  WeylBroadcaster(const WeylSystem& sys, ComplexMatrix ancilla);

  const ComplexMatrix& ancilla() const { return a_; }
  // Phi*(Z) for Z on C^D (x) C^D.
  ComplexMatrix dual(const ComplexMatrix& z) const;
  // Phi*(R (x) S)
  ComplexMatrix dual_product(const ComplexMatrix& r, const ComplexMatrix& s) const;
  Channel channel() const;
  // max cell residual of G_xy = Phi*(M_x (x) N_y), cells matched by label
  double generation_residual(const DiscretePOVM& m, const DiscretePOVM& n,
                             const JointPOVM& g) const;

 private:
  const WeylSystem* sys_;
  ComplexMatrix a_;
};

// Ancilla P sigma^T P.
WeylBroadcaster standard_broadcaster_map(const WeylSystem& sys,
                                         const ComplexMatrix& sigma);
Channel standard_broadcaster(const WeylSystem& sys, const ComplexMatrix& sigma);

// sigma - (1-mu) sigma^Q - (1-lambda) sigma^P + (1-lambda)(1-mu) I/D
ComplexMatrix cov_noise_operator(const WeylSystem& sys, const ComplexMatrix& sigma,
                                 double lambda, double mu);
FeasibilityReport cov_noise_condition(const WeylSystem& sys,
                                      const ComplexMatrix& sigma, double lambda,
                                      double mu, double tol = 1e-9);

// Ancilla state sigma~ = cov_noise_operator / (lambda mu). Throws
// PreconditionFailed when the condition fails.
ComplexMatrix noisy_ancilla_state(const WeylSystem& sys, const ComplexMatrix& sigma,
                                  double lambda, double mu);
WeylBroadcaster noisy_broadcaster_map(const WeylSystem& sys,
                                      const ComplexMatrix& sigma, double lambda,
                                      double mu);
Channel noisy_broadcaster(const WeylSystem& sys, const ComplexMatrix& sigma,
                          double lambda, double mu);

// Phi(rho) = sum_{r,s} tr(rho G^tau_{r,s}) |phi_r><phi_r| (x) |psi_s><psi_s|
Channel covariant_channel_from_tau(const WeylSystem& sys, const ComplexMatrix& tau);

// sum_{k,l} mu_k nu_l W_{k,l} tau W_{k,l}^dagger
ComplexMatrix weyl_convolve(const WeylSystem& sys, const ComplexMatrix& tau,
                            const std::vector<double>& mu,
                            const std::vector<double>& nu);
// c(a,b) with coeff_sigma(a,b) = c(a,b) coeff_tau(a,b), coeff_X(a,b) = tr(W_ab^dagger X).
cplx symplectic_weight(const WeylSystem& sys, const std::vector<double>& mu,
                       const std::vector<double>& nu, std::size_t a, std::size_t b);

struct TauResult {
  enum class Status { kFound, kInfeasible, kIndeterminate };
  Status status = Status::kIndeterminate;
  std::optional<ComplexMatrix> tau;  // the reconstructed candidate
  double min_eigenvalue = 0.0;
  std::size_t free_coefficients = 0;
  std::string detail;
};
std::string to_string(TauResult::Status s);

TauResult solve_tau(const WeylSystem& sys, const ComplexMatrix& sigma,
                    const std::vector<double>& mu, const std::vector<double>& nu);

// The Weyl representation and its diagonal tensor square.
std::vector<ComplexMatrix> weyl_group(const WeylSystem& sys);
std::vector<ComplexMatrix> weyl_group_squared(const WeylSystem& sys);

// (1/|G|) sum_g O_g^dagger Phi(W_g . W_g^dagger) O_g
Channel twirl_channel(const Channel& phi, const std::vector<ComplexMatrix>& rep_in,
                      const std::vector<ComplexMatrix>& rep_out);
Channel twirl_channel(const Channel& phi, const WeylSystem& sys);

// max over the given pairs of ||J X - X J||_F with X = conj(W_g) (x) O_g.
double covariance_defect(const Channel& phi, const std::vector<ComplexMatrix>& in,
                         const std::vector<ComplexMatrix>& out);
// Generators (1,0), (0,1) only unless full_group.
double weyl_covariance_defect(const Channel& phi, const WeylSystem& sys,
                              bool full_group = false);

// For a (W, W (x) W)-covariant channel and families covariant as
// W M_m W^dagger = M_{m+a}, W N_n W^dagger = N_{n+b},
// W G_{m,n} W^dagger = G_{m+a,n+b} (W = W_{a,b}), checks the single cell
// Phi*(M_0 (x) N_0) = G_{0,0}. PreconditionFailed for non-covariant input.
bool covariant_reduction_check(const WeylSystem& sys, const Channel& phi,
                               const DiscretePOVM& m, const DiscretePOVM& n,
                               const JointPOVM& g, double tol = 1e-9);

}  // namespace povmb
