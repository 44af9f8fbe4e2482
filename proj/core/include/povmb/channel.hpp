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
#include <vector>

#include "povmb/matrix.hpp"
#include "povmb/povm.hpp"

namespace povmb {

// CPTP map C^{dim_in} -> C^{dim_out} stored as
//   choi = sum_ij |i><j| (x) Phi(|i><j|)   (input factor first).
class Channel {
 public:
  Channel() = default;

  // Throws InvalidInput unless the Choi matrix is CPTP at the given
  // tolerances.
  static Channel from_choi(std::size_t dim_in, std::size_t dim_out,
                           ComplexMatrix choi, double psd_tol = 1e-9,
                           double tp_tol = 1e-9);
  // No CPTP check; shape is still enforced.
  static Channel from_choi_unchecked(std::size_t dim_in, std::size_t dim_out,
                                     ComplexMatrix choi);
  static Channel identity(std::size_t dim);

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  const ComplexMatrix& choi() const { return choi_; }

  // Phi(|i><j|)
  ComplexMatrix block(std::size_t i, std::size_t j) const;

 private:
  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  ComplexMatrix choi_;
};

struct CptpReport {
  double min_eigenvalue = 0.0;  // of the Choi matrix
  double tp_defect = 0.0;       // ||tr_out(choi) - I||_F
  bool completely_positive = false;
  bool trace_preserving = false;
  bool ok() const { return completely_positive && trace_preserving; }
};

CptpReport verify_cptp(const Channel& phi, double psd_tol = 1e-9,
                       double tp_tol = 1e-9);

// Sum_k K rho K^dagger. Throws InvalidInput unless sum K^dagger K = I.
Channel from_kraus(const std::vector<ComplexMatrix>& ops);
Channel unitary_channel(const ComplexMatrix& u);
// rho -> tr(rho) sigma
Channel constant_channel(std::size_t dim_in, const ComplexMatrix& sigma);
// rho -> sum_c tr(rho E_c) sigma_c
Channel measure_and_prepare(const std::vector<ComplexMatrix>& effects,
                            const std::vector<ComplexMatrix>& states);

ComplexMatrix apply(const Channel& phi, const ComplexMatrix& rho);
ComplexMatrix dual_apply(const Channel& phi, const ComplexMatrix& r);

// Phi(rho) = sum_xy tr(rho G_xy) P_x/tr P_x (x) Q_y/tr Q_y.
// G's grid labels must be the labels of P and Q.
Channel measure_and_prepare_broadcaster(const DiscretePOVM& p,
                                        const DiscretePOVM& q,
                                        const JointPOVM& g);

// Copies an orthonormal eigenbasis of Q onto both outputs; the dual maps
// Q_a (x) Q_b to delta_ab Q_a.
Channel self_joint_broadcaster(const DiscretePOVM& q);

// Phi2 o Phi1
Channel compose(const Channel& phi2, const Channel& phi1);
Channel tensor(const Channel& a, const Channel& b);

}  // namespace povmb
