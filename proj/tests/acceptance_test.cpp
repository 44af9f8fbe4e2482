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

// One [PASS]/[FAIL] line per acceptance criterion; exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "povmb.hpp"

using namespace povmb;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Vec3 = std::array<double, 3>;
const Vec3 kZ{0, 0, 1};
const Vec3 kX{1, 0, 0};

JointPOVM generated_joint(const Channel& phi, const DiscretePOVM& m, const DiscretePOVM& n) {
  JointPOVM g;
  g.dim = phi.dim_in();
  g.x_labels = m.labels;
  g.y_labels = n.labels;
  g.effects.assign(m.size(), std::vector<ComplexMatrix>(n.size()));
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y)
      g.effects[x][y] = dual_apply(phi, kron(m.effects[x], n.effects[y])).hermitian_part();
  return g;
}

JointPOVM mix(const JointPOVM& a, const JointPOVM& b, double t) {
  JointPOVM g = a;
  for (std::size_t x = 0; x < g.nx(); ++x)
    for (std::size_t y = 0; y < g.ny(); ++y) g.effects[x][y] = a(x, y) * t + b(x, y) * (1 - t);
  return g;
}

// Residual of Phi*(M_x (x) N_y) - G_xy computed with the Eigen oracle.
double oracle_residual(const Channel& phi, const DiscretePOVM& m, const DiscretePOVM& n,
                       const JointPOVM& g) {
  const oracle::Mat choi = oracle::to_eigen(phi.choi());
  double worst = 0.0;
  for (std::size_t x = 0; x < m.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y) {
      const oracle::Mat d = oracle::dual_from_choi(
          choi, phi.dim_in(), phi.dim_out(),
          oracle::kron(oracle::to_eigen(m.effects[x]), oracle::to_eigen(n.effects[y])));
      worst = std::max(worst, (d - oracle::to_eigen(g(x, y))).norm());
    }
  return worst;
}

// --- AC1 -------------------------------------------------------------------
void ac1(Outcome& o) {
  const JointPOVM g = ic_qubit_joint(1.0);
  const DiscretePOVM p = unbiased_qubit(1.0, kZ), q = unbiased_qubit(1.0, kX);
  const std::vector<double> half{0.5, 0.5};
  o.require(fuzzy_pvm_condition(p, q, 1, 1, half, half, g).verdict == Verdict::kFeasible,
            "r=s=1 not feasible");
  int indeterminate = 0;
  for (double r : {0.5, 0.8, 0.9, 0.99})
    for (double s : {0.5, 0.8, 0.9, 0.99}) {
      const auto a = fuzzy_pvm_condition(p, q, r, s, half, half, g);
      o.require(a.verdict == Verdict::kInfeasible, "analytic not infeasible");
      SdpOptions opts;
      opts.feas_tol = 1e-7;
      const auto n = sdp_broadcast_feasibility(unbiased_qubit(r, kZ), unbiased_qubit(s, kX), g, opts);
      o.require(n.verdict != Verdict::kFeasible, "solver feasible on infeasible instance");
      indeterminate += n.verdict == Verdict::kIndeterminate;
    }
  o.detail << "16 noisy pairs infeasible, solver indeterminate on " << indeterminate;
}

// --- AC2 -------------------------------------------------------------------
void ac2(Outcome& o) {
  int checked = 0, skipped = 0, feasible = 0;
  for (int gi = 1; gi <= 5; ++gi)
    for (int ri = 1; ri <= 10; ++ri)
      for (int si = 1; si <= 10; ++si) {
        const double g = 0.2 * gi, r = 0.1 * ri, s = 0.1 * si;
        const double slack =
            (3 * r * r / (g * g) - 1) * (3 * s * s / (g * g) - 1) - (1 + 3 / (g * g));
        const bool direct = slack >= 0;
        if (std::abs(slack) <= 1e-10) {
          ++skipped;
          continue;
        }
        const auto rep = qubit_general_condition(unbiased_qubit(r, kZ), unbiased_qubit(s, kX),
                                                 ic_qubit_joint(g));
        const bool got = rep.verdict == Verdict::kFeasible;
        std::ostringstream w;
        w << "(r,s,g)=(" << r << "," << s << "," << g << ")";
        o.require(got == direct, w.str());
        feasible += got;
        ++checked;
      }
  o.detail << checked << " grid points agree (" << feasible << " feasible), " << skipped
           << " boundary points skipped";
}

// --- AC3 -------------------------------------------------------------------
void ac3(Outcome& o) {
  Rng rng(20260301);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::vector<double> noise{0.3, 0.6, 0.9, 1.0};
  int total = 0, qutrit = 0, feas = 0, indet = 0;
  double worst_residual = 0.0;
  for (std::size_t d : {2u, 3u})
    for (double lambda : noise)
      for (double mu : noise)
        for (int kind = 0; kind < 2; ++kind) {
          const DiscretePOVM p = random_rank1_pvm(rng, d), q = random_rank1_pvm(rng, d);
          const auto pv = random_probabilities(rng, d), qv = random_probabilities(rng, d);
          const DiscretePOVM m = mix_with_noise(p, lambda, pv);
          const DiscretePOVM n = mix_with_noise(q, mu, qv);
          JointPOVM g = generated_joint(random_channel(rng, d, d * d), m, n);
          // kind 1: pull the generated target toward an arbitrary joint.
          if (kind == 1) g = mix(g, random_joint(rng, d, p.labels, q.labels), unit(rng));
          const auto a = fuzzy_pvm_condition(p, q, lambda, mu, pv, qv, g);
          const auto s = sdp_broadcast_feasibility(m, n, g);
          std::ostringstream w;
          w << "d=" << d << " lambda=" << lambda << " mu=" << mu << " kind=" << kind
            << " analytic=" << to_string(a.verdict) << " margin=" << a.margin
            << " solver=" << to_string(s.verdict);
          if (s.verdict == Verdict::kIndeterminate) {
            ++indet;
            o.require(std::abs(a.margin) <= 1e-5, w.str());
          } else {
            o.require(s.verdict == a.verdict, w.str());
          }
          if (s.verdict == Verdict::kFeasible) {
            o.require(s.witness.has_value() && verify_cptp(*s.witness).ok(), "witness not CPTP");
            if (s.witness) {
              const double res = oracle_residual(*s.witness, m, n, g);
              worst_residual = std::max(worst_residual, res);
              o.require(res <= 1e-6, w.str() + " residual");
            }
          }
          feas += a.verdict == Verdict::kFeasible;
          qutrit += d == 3;
          ++total;
        }
  o.require(total >= 50, "too few instances");
  o.detail << total << " instances (" << qutrit << " qutrit, " << feas
           << " analytically feasible), solver indeterminate " << indet
           << ", max witness residual " << worst_residual;
}

// --- AC4 -------------------------------------------------------------------
void ac4(Outcome& o) {
  Rng rng(4);
  double worst = 0.0, worst_margin = 0.0;
  for (std::size_t d : {2u, 3u, 5u}) {
    const WeylSystem sys(d);
    const oracle::Mat f = oracle::to_eigen(sys.fourier());
    for (int rep = 0; rep < 10; ++rep) {
      const ComplexMatrix sigma = random_state(rng, d, 1 + rep % d);
      const Channel phi = standard_broadcaster(sys, sigma);
      const JointPOVM g = covariant_phase_povm(sys, sigma);
      worst = std::max(worst, oracle_residual(phi, sys.position_pvm(), sys.momentum_pvm(), g));
      // Margins: position pinching shifted by m, momentum pinching shifted by n.
      const oracle::Mat s = oracle::to_eigen(sigma);
      const oracle::Mat sf = f.adjoint() * s * f;
      const auto [g1, g2] = margins(g);
      for (std::size_t k = 0; k < d; ++k) {
        oracle::Mat a = oracle::Mat::Zero(d, d), b = oracle::Mat::Zero(d, d);
        for (std::size_t i = 0; i < d; ++i) {
          a(i, i) = s((i + d - k) % d, (i + d - k) % d).real();
          b(i, i) = sf((i + d - k) % d, (i + d - k) % d).real();
        }
        b = f * b * f.adjoint();
        worst_margin = std::max(worst_margin, (oracle::to_eigen(g1.effects[k]) - a).norm());
        worst_margin = std::max(worst_margin, (oracle::to_eigen(g2.effects[k]) - b).norm());
      }
    }
  }
  o.require(worst <= 1e-10, "generation residual");
  o.require(worst_margin <= 1e-10, "margin convolution");
  o.detail << "30 states, max residual " << worst << ", max margin deviation " << worst_margin;
}

// --- AC5 -------------------------------------------------------------------
void ac5(Outcome& o) {
  Rng rng(5);
  int psd = 0, neg = 0, between = 0;
  double worst = 0.0;
  for (std::size_t d : {2u, 3u}) {
    const WeylSystem sys(d);
    for (int rep = 0; rep < 8; ++rep) {
      // Ranks from pure to full, with and without a white-noise floor.
      ComplexMatrix sigma = random_state(rng, d, 1 + rep % d);
      if (rep >= 4) sigma = sigma * 0.6 + ComplexMatrix::identity(d) * (0.4 / d);
      for (double lambda : {0.5, 0.8, 1.0})
        for (double mu : {0.6, 0.9}) {
          const auto cond = cov_noise_condition(sys, sigma, lambda, mu);
          const DiscretePOVM m = sys.noisy_position(lambda), n = sys.noisy_momentum(mu);
          const JointPOVM g = covariant_phase_povm(sys, sigma);
          std::ostringstream w;
          w << "d=" << d << " rep=" << rep << " lambda=" << lambda << " mu=" << mu
            << " margin=" << cond.margin;
          if (cond.margin >= 1e-8) {
            ++psd;
            const Channel phi = noisy_broadcaster(sys, sigma, lambda, mu);
            const double r = oracle_residual(phi, m, n, g);
            worst = std::max(worst, r);
            o.require(verify_cptp(phi).ok() && r <= 1e-9, w.str());
          } else if (cond.margin <= -1e-6) {
            ++neg;
            o.require(sdp_broadcast_feasibility(m, n, g).verdict != Verdict::kFeasible, w.str());
          } else {
            ++between;
          }
        }
    }
  }
  o.require(psd > 0 && neg > 0, "one side of the condition never exercised");
  o.detail << psd << " PSD cases (max residual " << worst << "), " << neg
           << " negative cases never solver-feasible, " << between << " in the gap";
}

// --- AC6 -------------------------------------------------------------------
void ac6(Outcome& o) {
  Rng rng(6);
  double worst = 0.0, weakest = INFINITY;
  int done = 0;
  for (std::size_t d : {2u, 3u})
    for (int rep = 0; rep < 10; ++rep) {
      const WeylSystem sys(d);
      const ComplexMatrix tau = random_state(rng, d, 1 + rep % d);
      auto mu = random_probabilities(rng, d), nu = random_probabilities(rng, d);
      // Mass concentrated at 0 keeps every symplectic weight away from zero.
      for (auto* v : {&mu, &nu}) {
        for (auto& x : *v) x *= 0.4;
        (*v)[0] += 0.6;
      }
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b)
          weakest = std::min(weakest, std::abs(symplectic_weight(sys, mu, nu, a, b)));
      const auto res = solve_tau(sys, weyl_convolve(sys, tau, mu, nu), mu, nu);
      o.require(res.status == TauResult::Status::kFound, res.detail);
      if (res.tau) worst = std::max(worst, oracle::distance(*res.tau, tau));
      ++done;
    }
  o.require(worst <= 1e-9, "tau recovery");
  o.detail << done << " round trips, max deviation " << worst << ", min |weight| " << weakest;
}

// --- AC7 -------------------------------------------------------------------
void ac7(Outcome& o) {
  double worst = 0.0;
  for (std::size_t d : {2u, 3u, 4u}) {
    const auto [g1, g2] = margins(optimal_mub_joint(d));
    const auto [r1, r2] = mub_reference_margins(d);
    for (std::size_t k = 0; k < d; ++k) {
      worst = std::max(worst, oracle::distance(g1.effects[k], r1.effects[k]));
      worst = std::max(worst, oracle::distance(g2.effects[k], r2.effects[k]));
    }
    // Reference weights recomputed here from the closed expression.
    const double w = 0.5 * (1 + 1 / std::sqrt(double(d)));
    worst = std::max(worst, std::abs(g1.effects[0](0, 0).real() - w));
  }
  const auto [m1, m2] = margins(optimal_mub_joint(4));
  const double w4 = m1.effects[0](0, 0).real();
  o.require(worst <= 1e-10, "margins differ from mixtures");
  o.require(std::abs(w4 - 0.75) <= 1e-12, "D=4 weight");
  // G1 = w P + (1 - w) I/D puts w + (1 - w)/D on the target projection.
  o.require(std::abs(h_weight(4) + (1 - h_weight(4)) / 4 - 0.75) <= 1e-12, "h_weight(4)");
  o.detail << "max deviation " << worst << ", D=4 weight " << w4;
}

// --- AC8 -------------------------------------------------------------------
void ac8(Outcome& o) {
  Rng rng(8);
  const std::vector<std::vector<std::size_t>> rank_sets{{1, 1}, {2, 1}, {1, 2}, {2, 2}, {1, 1, 2}};
  double worst = 0.0;
  for (const auto& ranks : rank_sets) {
    std::size_t d = 0;
    for (auto r : ranks) d += r;
    const DiscretePOVM q = random_pvm(rng, d, ranks);
    const Channel phi = self_joint_broadcaster(q);
    o.require(verify_cptp(phi).ok(), "not CPTP");
    const oracle::Mat choi = oracle::to_eigen(phi.choi());
    for (std::size_t a = 0; a < q.size(); ++a)
      for (std::size_t b = 0; b < q.size(); ++b) {
        const oracle::Mat got = oracle::dual_from_choi(
            choi, d, d * d,
            oracle::kron(oracle::to_eigen(q.effects[a]), oracle::to_eigen(q.effects[b])));
        const oracle::Mat want =
            a == b ? oracle::to_eigen(q.effects[a]) : oracle::Mat::Zero(d, d);
        worst = std::max(worst, (got - want).norm());
      }
  }
  o.require(worst <= 1e-10, "self-joint grid");
  o.detail << "5 PVMs (dims 2-4, rank-2 projections included), max deviation " << worst;
}

// --- AC9 -------------------------------------------------------------------
void ac9(Outcome& o) {
  Rng rng(9);
  double gen = 0.0, cov = 0.0;
  int count = 0;
  for (std::size_t d : {2u, 3u}) {
    const WeylSystem sys(d);
    const DiscretePOVM m = sys.position_pvm(), n = sys.momentum_pvm();
    for (int rep = 0; rep < 3; ++rep) {
      const ComplexMatrix sigma = random_state(rng, d, 1 + rep % d);
      const JointPOVM g = covariant_phase_povm(sys, sigma);
      const Channel a = standard_broadcaster(sys, sigma);
      const Channel b = measure_and_prepare_broadcaster(m, n, g);
      const double t = std::uniform_real_distribution<double>(0, 1)(rng);
      const Channel c = Channel::from_choi(d, d * d, a.choi() * t + b.choi() * (1 - t));
      for (const Channel* w : {&a, &b, &c}) {
        o.require(oracle_residual(*w, m, n, g) <= 1e-10, "input is not a witness");
        const Channel tw = twirl_channel(*w, sys);
        gen = std::max(gen, oracle_residual(tw, m, n, g));
        cov = std::max(cov, weyl_covariance_defect(tw, sys, true));
        ++count;
      }
    }
  }
  o.require(gen <= 1e-9, "twirled witness lost generation");
  o.require(cov <= 1e-10, "twirled witness not covariant");
  o.detail << count << " witnesses, max generation residual " << gen << ", max covariance defect "
           << cov;
}

// --- AC10 ------------------------------------------------------------------
void ac10(Outcome& o) {
  Rng rng(10);
  double worst = 0.0;
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t d = 2 + rep % 2;
    const std::vector<std::size_t> pr = rep % 4 == 3 ? std::vector<std::size_t>{2, 1}
                                                     : std::vector<std::size_t>(d, 1);
    const DiscretePOVM p = random_pvm(rng, d, pr), q = random_rank1_pvm(rng, d);
    const JointPOVM g = random_joint(rng, d, p.labels, q.labels);
    const Channel phi = measure_and_prepare_broadcaster(p, q, g);
    o.require(verify_cptp(phi).ok(), "not CPTP");
    worst = std::max(worst, oracle_residual(phi, p, q, g));
  }
  o.require(worst <= 1e-10, "measure-and-prepare residual");
  o.detail << "10 random targets, max residual " << worst;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Outcome&)>>> criteria{
      {"AC1 qubit sharpness threshold", ac1},
      {"AC2 IC-family boundary", ac2},
      {"AC3 solver vs analytic oracle", ac3},
      {"AC4 Weyl generation identity", ac4},
      {"AC5 noisy Weyl condition", ac5},
      {"AC6 covariant tau inversion", ac6},
      {"AC7 MUB optimal joint", ac7},
      {"AC8 self-joint channel", ac8},
      {"AC9 symmetrization", ac9},
      {"AC10 measure-and-prepare universality", ac10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("[%s] %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(),
                secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
