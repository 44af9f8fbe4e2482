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

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "povmb/channel.hpp"
#include "povmb/povm.hpp"

namespace povmb {

enum class Verdict { kFeasible, kInfeasible, kIndeterminate };

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct FeasibilityReport {
  Verdict verdict = Verdict::kIndeterminate;
  std::optional<Channel> witness;
  double residual = 0.0;  // max_xy ||Phi*(M_x (x) N_y) - G_xy||_F of the witness
  std::optional<std::string> certificate;
  std::size_t iterations = 0;
  // Analytic checks: smallest eigenvalue of the condition operator over all
  // cells. Numeric solver: last affine-to-cone distance.
  double margin = 0.0;
};

// G_xy = 0 wherever P_x (x) Q_y = 0 (Frobenius 1e-12).
bool support_condition(const JointPOVM& g, const DiscretePOVM& p,
                       const DiscretePOVM& q);

// G from the noisy pair lambda P + (1-lambda) p T, mu Q + (1-mu) q T.
// Feasible iff every cell operator
//   G_xy - (1-mu) q_y G1_x - (1-lambda) p_x G2_y + (1-lambda)(1-mu) p_x q_y I
// is PSD at `tol`. A feasible report carries the measure-and-prepare
// witness built from those operators rescaled by 1/(lambda mu).
FeasibilityReport fuzzy_pvm_condition(const DiscretePOVM& p,
                                      const DiscretePOVM& q, double lambda,
                                      double mu, const std::vector<double>& pv,
                                      const std::vector<double>& qv,
                                      const JointPOVM& g, double tol = 1e-9);

// Binary qubit R, S (first outcome = "+" side), possibly biased. Each is
// split as |a| R# + (1 - |a|) p T with the PVM R# along avec.
FeasibilityReport qubit_general_condition(const DiscretePOVM& r,
                                          const DiscretePOVM& s,
                                          const JointPOVM& g,
                                          double tol = 1e-9);

// The unbiased tetrahedral family G^g on labels {+,-} x {+,-}.
JointPOVM ic_qubit_joint(double g);
// Unbiased binary qubit POVM (1/2)(I +- s n.sigma).
DiscretePOVM unbiased_qubit(double sharpness, const std::array<double, 3>& dir);

// M_x = lambda P_x + (1 - lambda) p_x I with P a PVM. Empty if M has no
// such form.
struct NoisyPvm {
  DiscretePOVM pvm;
  double lambda = 1.0;
  std::vector<double> p;
};
std::optional<NoisyPvm> decompose_noisy_pvm(const DiscretePOVM& m,
                                            double tol = 1e-9);

struct SdpProgress {
  std::size_t iteration = 0;
  double gap = 0.0;  // ||P_A(x) - P_C(.)||_F
};

struct SdpOptions {
  std::size_t max_iter = 20000;
  double feas_tol = 1e-7;
  double cert_tol = 1e-6;
  std::size_t stall_window = 500;
  double stall_progress = 1e-12;
  std::size_t cert_every = 100;
  std::function<void(const SdpProgress&)> progress;
  std::size_t progress_every = 1000;
};

inline constexpr std::size_t kMaxSdpDimension = 4096;

// Searches for a Choi matrix J >= 0 with tr_out J = I and
// Phi*(M_x (x) N_y) = G_xy by Dykstra projections between the PSD cone and
// that affine set.
FeasibilityReport sdp_broadcast_feasibility(const DiscretePOVM& m,
                                            const DiscretePOVM& n,
                                            const JointPOVM& g,
                                            const SdpOptions& opts = {});

// max_xy ||Phi*(M_x (x) N_y) - G_xy||_F, cells matched by label.
double verify_generation(const Channel& phi, const DiscretePOVM& m,
                         const DiscretePOVM& n, const JointPOVM& g);

}  // namespace povmb
