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
#include <utility>
#include <vector>

#include "povmb/channel.hpp"
#include "povmb/matrix.hpp"
#include "povmb/povm.hpp"

namespace povmb {

// Targets P (M outcomes) and Q (N outcomes) on C^h, read as indexed by
// Z_M and Z_N in their stored order. The resource PVMs are the rank-1
// PVMs of the bases e^M, e^N (columns of basis_m, basis_n); sigma lives
// on C^M (x) C^N.
struct BlmppInstance {
  DiscretePOVM p;
  DiscretePOVM q;
  ComplexMatrix basis_m;
  ComplexMatrix basis_n;
  ComplexMatrix sigma;

  std::size_t h() const { return p.dim; }
  std::size_t m() const { return p.size(); }
  std::size_t n() const { return q.size(); }
};

// Fills default (computational) resource bases and checks the invariants.
BlmppInstance make_blmpp_instance(DiscretePOVM p, DiscretePOVM q, ComplexMatrix sigma,
                                  ComplexMatrix basis_m = {}, ComplexMatrix basis_n = {});
void validate_instance(const BlmppInstance& inst);

// U = sum_k P_k (x) U^M_k (x) 1,  V = sum_l Q_l (x) 1 (x) U^N_l
// on C^h (x) C^M (x) C^N.
std::pair<ComplexMatrix, ComplexMatrix> coupling_unitaries(const BlmppInstance& inst);

// rho -> tr_1[V U (rho (x) sigma) U^dagger V^dagger]
Channel blmpp_channel(const BlmppInstance& inst);

// G_ij = sum_{k,k',l} <e_{i-k'}, e_{j-l}| sigma |e_{i-k}, e_{j-l}> P_k Q_l P_k',
// labels (P label, Q label).
JointPOVM blmpp_joint(const BlmppInstance& inst);
// Resource pair (Q^M, Q^N) as POVMs on C^M and C^N, labelled like P and Q.
std::pair<DiscretePOVM, DiscretePOVM> blmpp_resources(const BlmppInstance& inst);

// Coordinates of h^M in the e^M basis.
std::vector<cplx> h_vector(std::size_t m);
// (sqrt(M) + 2) / (2 (sqrt(M) + 1))
double h_weight(std::size_t m);

// Spectral form of the second margin:
// G2_j = sum_{m,n} K_mn^dagger (p_{sigma_2} * Q)_j K_mn.
DiscretePOVM second_margin_via_kraus(const BlmppInstance& inst);

// For sigma = |h^M><h^M| (x) sigma_2 (PreconditionFailed otherwise):
//   G1 = w P + (1 - w) T
//   G2 = w (p * Q) + (1 - w) (p * Q^P),   Q^P_j = sum_i P_i Q_j P_i
// where p is the e^N distribution of sigma_2; for sigma_2 = |e_0><e_0| the
// convolution is trivial.
std::pair<DiscretePOVM, DiscretePOVM> special_margins(const BlmppInstance& inst);

// P computational, Q its discrete Fourier basis, M = N = D,
// sigma = |h^D><h^D| (x) |e_0><e_0|.
BlmppInstance mub_instance(std::size_t d);
JointPOVM optimal_mub_joint(std::size_t d);
// (1/2)(1 + 1/sqrt(D)) P + (1/2)(1 - 1/sqrt(D)) (I - P)/(D - 1), same for Q.
std::pair<DiscretePOVM, DiscretePOVM> mub_reference_margins(std::size_t d);

// beta[Phi* o M]
DiscretePOVM hybrid_process(const DiscretePOVM& m, const Channel& phi,
                            const MarkovKernel& beta);

// M' = kernel[channel* o M]
struct HybridWitness {
  Channel channel;
  MarkovKernel kernel;
};
// G = kernel[channel* o (M (x) N)], kernel on grid labels (x, y).
struct BlmppWitness {
  Channel channel;
  MarkovKernel kernel;
};

DiscretePOVM realize(const BlmppWitness& w, const DiscretePOVM& m, const DiscretePOVM& n);

// From G in the class of (M', N') and M' <=h M, N' <=h N, the witness of G
// in the class of (M, N): channel (Phi1 (x) Phi2) o Phi, kernel
// beta * (beta1 (x) beta2).
BlmppWitness compose_blmpp_witness(const BlmppWitness& g, const HybridWitness& m_from,
                                   const HybridWitness& n_from);

// Rank-1 PVM on C^{sum of ranks} with isometry V and merge kernel such that
// M = merge[Phi_V* o pvm]. Outcome labels of pvm are (x, r).
struct RankOneDilation {
  DiscretePOVM pvm;
  ComplexMatrix isometry;
  HybridWitness witness;
};
RankOneDilation naimark_rank1(const DiscretePOVM& m, double rank_tol = 1e-10);

// Rank-1 POVM with outcomes (x, r) and the merge kernel back to M.
std::pair<DiscretePOVM, MarkovKernel> rank1_refinement(const DiscretePOVM& m,
                                                       double rank_tol = 1e-10);

}  // namespace povmb
