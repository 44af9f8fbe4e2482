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

#include <gtest/gtest.h>

#include <cmath>

#include "oracle.hpp"
#include "povmb/errors.hpp"
#include "povmb/linalg.hpp"
#include "povmb/random.hpp"
#include "povmb/weyl.hpp"

using namespace povmb;

namespace {

cplx omega_phase(std::size_t d, long long x) {
  const double t = 2.0 * M_PI * static_cast<double>(x) / static_cast<double>(d);
  return {std::cos(t), std::sin(t)};
}

// (1/D) sum_n W_mn sigma W_mn^dagger = U_m diag(sigma) U_m^dagger, so the
// first margin is sum_i sigma_{i-m,i-m} |i><i|.
ComplexMatrix first_margin_oracle(const ComplexMatrix& sigma, std::size_t m) {
  const std::size_t d = sigma.rows();
  ComplexMatrix out = ComplexMatrix::zeros(d, d);
  for (std::size_t i = 0; i < d; ++i) out(i, i) = sigma((i + d - m) % d, (i + d - m) % d).real();
  return out;
}

ComplexMatrix second_margin_oracle(const WeylSystem& sys, const ComplexMatrix& sigma,
                                   std::size_t n) {
  const std::size_t d = sys.dim();
  const ComplexMatrix f = sys.fourier();
  const ComplexMatrix s = f.adjoint() * sigma * f;
  ComplexMatrix diag = ComplexMatrix::zeros(d, d);
  for (std::size_t i = 0; i < d; ++i) diag(i, i) = s((i + d - n) % d, (i + d - n) % d).real();
  return f * diag * f.adjoint();
}

double grid_residual(const Channel& phi, const DiscretePOVM& m, const DiscretePOVM& n,
                     const JointPOVM& g) {
  double worst = 0.0;
  const oracle::Mat choi = oracle::to_eigen(phi.choi());
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y) {
      const oracle::Mat got = oracle::dual_from_choi(
          choi, phi.dim_in(), phi.dim_out(),
          oracle::kron(oracle::to_eigen(m.effects[x]), oracle::to_eigen(n.effects[y])));
      worst = std::max(worst, (got - oracle::to_eigen(g(x, y))).norm());
    }
  return worst;
}

std::vector<double> positive_fourier_distribution(Rng& rng, std::size_t d) {
  // Heavy mass at 0 keeps every Fourier coefficient away from zero.
  auto p = random_probabilities(rng, d);
  for (auto& v : p) v *= 0.3;
  p[0] += 0.7;
  return p;
}

}  // namespace

TEST(weyl_system, identity_and_ccr) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const WeylSystem sys(d);
    EXPECT_EQ(sys.weyl(0, 0), ComplexMatrix::identity(d));
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t m = 0; m < d; ++m)
          for (std::size_t n = 0; n < d; ++n) {
            const ComplexMatrix lhs = sys.weyl(k, l) * sys.weyl(m, n);
            const long long x = static_cast<long long>(k * n) - static_cast<long long>(l * m);
            const ComplexMatrix rhs = sys.weyl(m, n) * sys.weyl(k, l) * omega_phase(d, -x);
            worst = std::max(worst, (lhs - rhs).frobenius_norm());
          }
    EXPECT_LE(worst, 1e-12) << d;
  }
}

TEST(weyl_system, adjoint_identity) {
  for (std::size_t d = 2; d <= 5; ++d) {
    const WeylSystem sys(d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t l = 0; l < d; ++l) {
        const ComplexMatrix& w = sys.weyl((d - k) % d, (d - l) % d);
        // Odd D: exact. Even D: a sign (-1)^{k+l} when both indices are nonzero.
        double sign = 1.0;
        if (d % 2 == 0 && k != 0 && l != 0 && (k + l) % 2 == 1) sign = -1.0;
        EXPECT_LE((w - sys.weyl(k, l).adjoint() * sign).frobenius_norm(), 1e-12)
            << d << " " << k << " " << l;
      }
  }
}

TEST(weyl_system, hilbert_schmidt_orthonormal) {
  for (std::size_t d = 2; d <= 4; ++d) {
    const WeylSystem sys(d);
    for (std::size_t a = 0; a < d * d; ++a)
      for (std::size_t b = 0; b < d * d; ++b) {
        const cplx ip = hs_inner(sys.weyl(a / d, a % d), sys.weyl(b / d, b % d)) / double(d);
        EXPECT_LE(std::abs(ip - (a == b ? 1.0 : 0.0)), 1e-12);
      }
  }
}

TEST(weyl_system, bases_and_parity) {
  const WeylSystem sys(5);
  EXPECT_TRUE(is_unitary(sys.fourier(), 1e-12));
  for (std::size_t n = 0; n < 5; ++n) {
    const auto psi = sys.momentum(n);
    const auto mapped = sys.parity().apply(psi);
    const auto want = sys.momentum((5 - n) % 5);
    for (std::size_t i = 0; i < 5; ++i) EXPECT_LE(std::abs(mapped[i] - want[i]), 1e-12);
    // |<phi_m|psi_n>|^2 = 1/D
    EXPECT_NEAR(std::norm(psi[2]), 0.2, 1e-14);
  }
  EXPECT_THROW(WeylSystem(0), InvalidInput);
}

TEST(covariant_phase_povm, trivial_and_normalized) {
  const WeylSystem sys(3);
  const JointPOVM g = covariant_phase_povm(sys, ComplexMatrix::identity(3) * (1.0 / 3));
  for (std::size_t m = 0; m < 3; ++m)
    for (std::size_t n = 0; n < 3; ++n)
      EXPECT_LE(oracle::distance(g(m, n), ComplexMatrix::identity(3) * (1.0 / 9)), 1e-15);
  Rng rng(1);
  const JointPOVM h = covariant_phase_povm(sys, random_state(rng, 3));
  EXPECT_TRUE(validate_povm(h.to_povm()).valid());
  EXPECT_THROW(covariant_phase_povm(sys, ComplexMatrix::identity(3)), InvalidInput);
}

TEST(covariant_phase_povm, covariance) {
  Rng rng(2);
  for (std::size_t d : {2u, 3u, 4u}) {
    const WeylSystem sys(d);
    const JointPOVM g = covariant_phase_povm(sys, random_state(rng, d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        for (std::size_t m = 0; m < d; ++m)
          for (std::size_t n = 0; n < d; ++n) {
            const ComplexMatrix& w = sys.weyl(a, b);
            EXPECT_LE(oracle::distance(w * g(m, n) * w.adjoint(), g((m + a) % d, (n + b) % d)),
                      1e-10);
          }
  }
}

TEST(covariant_phase_povm, margins_are_convolutions) {
  Rng rng(3);
  for (std::size_t d : {2u, 3u, 5u}) {
    const WeylSystem sys(d);
    ComplexMatrix sigma = random_state(rng, d);
    if (d == 2) sigma = ComplexMatrix::diagonal({1, 0});
    const auto [g1, g2] = margins(covariant_phase_povm(sys, sigma));
    for (std::size_t m = 0; m < d; ++m) {
      EXPECT_LE(oracle::distance(g1.effects[m], first_margin_oracle(sigma, m)), 1e-10);
      EXPECT_LE(oracle::distance(g2.effects[m], second_margin_oracle(sys, sigma, m)), 1e-10);
    }
  }
}

TEST(controlled_unitary, cnot_and_both_forms) {
  const WeylSystem two(2);
  const ComplexMatrix cnot{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
  EXPECT_LE(oracle::distance(controlled_unitary(two), cnot), 1e-15);
  for (std::size_t d = 2; d <= 5; ++d) {
    const WeylSystem sys(d);
    const ComplexMatrix u = controlled_unitary(sys);
    EXPECT_TRUE(is_unitary(u, 1e-12));
    ComplexMatrix alt = ComplexMatrix::zeros(d * d, d * d);
    for (std::size_t l = 0; l < d; ++l)
      alt += kron(ComplexMatrix::projector(sys.momentum(l)), sys.boost((d - l) % d));
    EXPECT_LE(oracle::distance(u, alt), 1e-12);
    for (std::size_t m = 0; m < d; ++m)
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<cplx> in(d * d, 0.0);
        in[m * d + k] = 1.0;
        const auto out = u.apply(in);
        EXPECT_LE(std::abs(out[((m + k) % d) * d + k] - 1.0), 1e-12);
      }
  }
}

TEST(standard_broadcaster, generation_identity) {
  Rng rng(4);
  for (std::size_t d : {2u, 3u, 5u}) {
    const WeylSystem sys(d);
    for (int rep = 0; rep < 3; ++rep) {
      const ComplexMatrix sigma = (d == 2 && rep == 0) ? ComplexMatrix::diagonal({1, 0})
                                                       : random_state(rng, d);
      const Channel phi = standard_broadcaster(sys, sigma);
      EXPECT_TRUE(verify_cptp(phi).ok());
      const JointPOVM g = covariant_phase_povm(sys, sigma);
      EXPECT_LE(grid_residual(phi, sys.position_pvm(), sys.momentum_pvm(), g), 1e-10);
      const auto map = standard_broadcaster_map(sys, sigma);
      EXPECT_LE(map.generation_residual(sys.position_pvm(), sys.momentum_pvm(), g), 1e-10);
    }
  }
  EXPECT_THROW(standard_broadcaster(WeylSystem(2), ComplexMatrix::identity(2)), InvalidInput);
}

TEST(standard_broadcaster, matrix_free_dual_matches_channel) {
  Rng rng(5);
  const WeylSystem sys(3);
  const auto map = standard_broadcaster_map(sys, random_state(rng, 3));
  const Channel phi = map.channel();
  const ComplexMatrix z = random_hermitian(rng, 9);
  EXPECT_LE(oracle::distance(map.dual(z), dual_apply(phi, z)), 1e-12);
}

TEST(cov_noise_condition, examples) {
  Rng rng(6);
  const WeylSystem sys(3);
  const ComplexMatrix sigma = random_state(rng, 3);
  EXPECT_EQ(cov_noise_condition(sys, sigma, 1.0, 1.0).verdict, Verdict::kFeasible);
  const ComplexMatrix pure = ComplexMatrix::projector(random_vector(rng, 3));
  const auto bad = cov_noise_condition(sys, pure, 0.9, 0.95);
  EXPECT_EQ(bad.verdict, Verdict::kInfeasible);
  EXPECT_TRUE(bad.certificate);
  EXPECT_LT(bad.margin, 0.0);
  for (double l : {0.1, 0.5, 1.0})
    for (double m : {0.2, 0.7}) {
      const ComplexMatrix mixed = ComplexMatrix::identity(3) * (1.0 / 3);
      const auto rep = cov_noise_condition(sys, mixed, l, m);
      EXPECT_EQ(rep.verdict, Verdict::kFeasible);
      EXPECT_NEAR(rep.margin, l * m / 3, 1e-12);
    }
  EXPECT_THROW(noisy_broadcaster(sys, pure, 0.9, 0.95), PreconditionFailed);
}

TEST(noisy_broadcaster, reaches_g_sigma_from_noisy_pair) {
  Rng rng(7);
  const WeylSystem two(2);
  const ComplexMatrix half = ComplexMatrix::identity(2) * 0.5;
  const Channel phi = noisy_broadcaster(two, half, 0.5, 0.5);
  EXPECT_TRUE(verify_cptp(phi).ok());
  EXPECT_LE(grid_residual(phi, two.noisy_position(0.5), two.noisy_momentum(0.5),
                          covariant_phase_povm(two, half)),
            1e-9);

  const WeylSystem sys(3);
  int hit = 0;
  for (int rep = 0; rep < 6; ++rep) {
    const ComplexMatrix tau = random_state(rng, 3);
    const ComplexMatrix orbit =
        weyl_convolve(sys, tau, random_probabilities(rng, 3), random_probabilities(rng, 3));
    const ComplexMatrix sigma = orbit * 0.7 + ComplexMatrix::identity(3) * (0.3 / 3);
    if (cov_noise_condition(sys, sigma, 0.8, 0.8).verdict != Verdict::kFeasible) continue;
    ++hit;
    const Channel noisy = noisy_broadcaster(sys, sigma, 0.8, 0.8);
    EXPECT_TRUE(verify_cptp(noisy).ok());
    EXPECT_LE(grid_residual(noisy, sys.noisy_position(0.8), sys.noisy_momentum(0.8),
                            covariant_phase_povm(sys, sigma)),
              1e-9);
  }
  EXPECT_GT(hit, 0);
}

TEST(noisy_broadcaster, unit_noise_is_standard) {
  Rng rng(8);
  const WeylSystem sys(3);
  const ComplexMatrix sigma = random_state(rng, 3);
  EXPECT_LE(oracle::distance(noisy_broadcaster(sys, sigma, 1.0, 1.0).choi(),
                             standard_broadcaster(sys, sigma).choi()),
            1e-12);
}

TEST(noisy_broadcaster, ancilla_mixture_round_trip) {
  Rng rng(9);
  const WeylSystem sys(3);
  const double l = 0.85, m = 0.9;
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix sigma =
        random_state(rng, 3) * 0.5 + ComplexMatrix::identity(3) * (0.5 / 3);
    if (cov_noise_condition(sys, sigma, l, m).verdict != Verdict::kFeasible) continue;
    const ComplexMatrix t = noisy_ancilla_state(sys, sigma, l, m);
    const ComplexMatrix back = t * (l * m) + sys.position_pinching(t) * (l * (1 - m)) +
                               sys.momentum_pinching(t) * ((1 - l) * m) +
                               ComplexMatrix::identity(3) * ((1 - l) * (1 - m) / 3);
    EXPECT_LE(oracle::distance(back, sigma), 1e-10);
  }
}

TEST(covariant_channel_from_tau, covariance_and_generation) {
  Rng rng(10);
  for (std::size_t d : {2u, 3u}) {
    const WeylSystem sys(d);
    const ComplexMatrix tau = random_state(rng, d);
    const Channel phi = covariant_channel_from_tau(sys, tau);
    EXPECT_TRUE(verify_cptp(phi).ok());
    EXPECT_LE(weyl_covariance_defect(phi, sys), 1e-10);
    EXPECT_LE(weyl_covariance_defect(phi, sys, true), 1e-10);
    for (std::size_t gen = 0; gen < 2; ++gen) {
      const ComplexMatrix& w = gen == 0 ? sys.weyl(1, 0) : sys.weyl(0, 1);
      const ComplexMatrix ww = kron(w, w);
      const ComplexMatrix rho = random_state(rng, d);
      EXPECT_LE(oracle::distance(apply(phi, w * rho * w.adjoint()),
                                 ww * apply(phi, rho) * ww.adjoint()),
                1e-10);
    }
    EXPECT_LE(grid_residual(phi, sys.position_pvm(), sys.momentum_pvm(),
                            covariant_phase_povm(sys, tau)),
              1e-10);
  }
  const WeylSystem two(2);
  const Channel flat = covariant_channel_from_tau(two, ComplexMatrix::identity(2) * 0.5);
  EXPECT_LE(oracle::distance(dual_apply(flat, kron(two.position_pvm().effects[0],
                                                   two.momentum_pvm().effects[1])),
                             ComplexMatrix::identity(2) * 0.25),
            1e-12);
  const Channel pure = covariant_channel_from_tau(two, ComplexMatrix::diagonal({1, 0}));
  EXPECT_EQ(pure.choi().rows(), 8u);
  EXPECT_TRUE(verify_cptp(pure).ok());
}

TEST(solve_tau, round_trip) {
  Rng rng(11);
  for (std::size_t d : {2u, 3u}) {
    const WeylSystem sys(d);
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix tau = random_state(rng, d);
      const auto mu = positive_fourier_distribution(rng, d);
      const auto nu = positive_fourier_distribution(rng, d);
      const ComplexMatrix sigma = weyl_convolve(sys, tau, mu, nu);
      const auto res = solve_tau(sys, sigma, mu, nu);
      ASSERT_EQ(res.status, TauResult::Status::kFound) << res.detail;
      EXPECT_LE(oracle::distance(*res.tau, tau), 1e-9);
    }
  }
}

TEST(solve_tau, symplectic_weight_matches_forward_map) {
  Rng rng(12);
  const WeylSystem sys(3);
  const auto mu = random_probabilities(rng, 3), nu = random_probabilities(rng, 3);
  const ComplexMatrix tau = random_state(rng, 3);
  const ComplexMatrix sigma = weyl_convolve(sys, tau, mu, nu);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b) {
      const cplx cs = hs_inner(sys.weyl(a, b), sigma);
      const cplx ct = hs_inner(sys.weyl(a, b), tau);
      EXPECT_LE(std::abs(cs - symplectic_weight(sys, mu, nu, a, b) * ct), 1e-12);
    }
}

TEST(solve_tau, point_masses_and_uniform) {
  Rng rng(13);
  const WeylSystem sys(3);
  const std::vector<double> delta{1, 0, 0};
  const ComplexMatrix sigma = random_state(rng, 3);
  const auto same = solve_tau(sys, sigma, delta, delta);
  ASSERT_EQ(same.status, TauResult::Status::kFound);
  EXPECT_LE(oracle::distance(*same.tau, sigma), 1e-12);

  const std::vector<double> uni(3, 1.0 / 3);
  EXPECT_LE(oracle::distance(weyl_convolve(sys, sigma, uni, uni),
                             ComplexMatrix::identity(3) * (1.0 / 3)),
            1e-12);
  EXPECT_EQ(solve_tau(sys, sigma, uni, uni).status, TauResult::Status::kInfeasible);
  // I/D itself is reached, but tau is not pinned down.
  const auto free = solve_tau(sys, ComplexMatrix::identity(3) * (1.0 / 3), uni, uni);
  EXPECT_NE(free.status, TauResult::Status::kInfeasible);
  EXPECT_EQ(free.free_coefficients, 8u);
}

TEST(solve_tau, non_psd_reconstruction) {
  // A sharp-ish sigma cannot come from smoothing: the deconvolved tau leaves the cone.
  const WeylSystem sys(2);
  const std::vector<double> mu{0.6, 0.4};
  const auto res = solve_tau(sys, ComplexMatrix::diagonal({1, 0}), mu, mu);
  EXPECT_EQ(res.status, TauResult::Status::kInfeasible);
  EXPECT_LT(res.min_eigenvalue, 0.0);
}

TEST(twirl_channel, covariant_input_unchanged) {
  Rng rng(14);
  const WeylSystem sys(3);
  const Channel phi = covariant_channel_from_tau(sys, random_state(rng, 3));
  EXPECT_LE(oracle::distance(twirl_channel(phi, sys).choi(), phi.choi()), 1e-10);
}

TEST(twirl_channel, random_channel_becomes_covariant) {
  Rng rng(15);
  for (std::size_t d : {2u, 3u}) {
    const WeylSystem sys(d);
    const Channel phi = random_channel(rng, d, d * d, 3);
    const Channel t = twirl_channel(phi, sys);
    EXPECT_TRUE(verify_cptp(t).ok());
    EXPECT_LE(weyl_covariance_defect(t, sys, true), 1e-10);
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix rho = random_state(rng, d);
      const ComplexMatrix& w = sys.weyl(rep % d, (rep / d) % d);
      const ComplexMatrix ww = kron(w, w);
      EXPECT_LE(oracle::distance(apply(t, w * rho * w.adjoint()), ww * apply(t, rho) * ww.adjoint()),
                1e-10);
    }
  }
  EXPECT_THROW(twirl_channel(Channel::identity(3), WeylSystem(3)), InvalidInput);
}

TEST(twirl_channel, keeps_generating_g_sigma) {
  Rng rng(16);
  for (std::size_t d : {2u, 3u}) {
    const WeylSystem sys(d);
    const ComplexMatrix sigma = random_state(rng, d);
    const Channel t = twirl_channel(standard_broadcaster(sys, sigma), sys);
    EXPECT_LE(verify_generation(t, sys.position_pvm(), sys.momentum_pvm(),
                                covariant_phase_povm(sys, sigma)),
              1e-9);
  }
}

TEST(covariant_reduction_check, examples_and_equivalence) {
  Rng rng(17);
  const WeylSystem sys(3);
  const DiscretePOVM q = sys.position_pvm();
  const DiscretePOVM p = sys.momentum_pvm();
  const ComplexMatrix sigma = random_state(rng, 3);
  const JointPOVM g = covariant_phase_povm(sys, sigma);
  const Channel phi = twirl_channel(standard_broadcaster(sys, sigma), sys);
  EXPECT_TRUE(covariant_reduction_check(sys, phi, q, p, g));
  EXPECT_LE(verify_generation(phi, q, p, g), 1e-9);

  // Wrong ancilla: still covariant, fails at (0,0) and everywhere else.
  const Channel other = covariant_channel_from_tau(sys, random_state(rng, 3));
  EXPECT_FALSE(covariant_reduction_check(sys, other, q, p, g));
  EXPECT_GT(verify_generation(other, q, p, g), 1e-9);

  const ComplexMatrix flat = ComplexMatrix::identity(3) * (1.0 / 3);
  EXPECT_TRUE(covariant_reduction_check(sys, covariant_channel_from_tau(sys, flat), q, p,
                                        covariant_phase_povm(sys, flat)));

  EXPECT_THROW(covariant_reduction_check(sys, random_channel(rng, 3, 9), q, p, g),
               PreconditionFailed);
  EXPECT_THROW(covariant_reduction_check(sys, phi, random_rank1_pvm(rng, 3), p, g),
               PreconditionFailed);

  // Equivalence with the full check over random covariant channels.
  for (int rep = 0; rep < 5; ++rep) {
    const ComplexMatrix tau = random_state(rng, 3);
    const Channel c = covariant_channel_from_tau(sys, tau);
    const JointPOVM target = rep % 2 ? covariant_phase_povm(sys, tau) : g;
    EXPECT_EQ(covariant_reduction_check(sys, c, q, p, target),
              verify_generation(c, q, p, target) <= 1e-9);
  }
}
