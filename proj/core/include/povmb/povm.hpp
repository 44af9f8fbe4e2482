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
#include <string>
#include <utility>
#include <vector>

#include "povmb/label.hpp"
#include "povmb/matrix.hpp"

namespace povmb {

struct DiscretePOVM {
  std::size_t dim = 0;
  std::vector<Label> labels;
  std::vector<ComplexMatrix> effects;

  std::size_t size() const { return effects.size(); }
  // Position of `l`, or throws InvalidInput.
  std::size_t index_of(const Label& l) const;
  const ComplexMatrix& effect(const Label& l) const {
    return effects[index_of(l)];
  }
};

struct ValidationIssue {
  std::string kind;  // "shape", "hermitian", "positivity", "normalization", "labels"
  std::string detail;
  double margin = 0.0;  // size of the violation
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const { return issues.empty(); }
  std::string summary() const;
};

ValidationReport validate_povm(const DiscretePOVM& m, double tol = 1e-9);
// validate_povm plus effects idempotent within tol.
bool is_pvm(const DiscretePOVM& m, double tol = 1e-9);
void require_valid(const DiscretePOVM& m, const char* what);

DiscretePOVM computational_pvm(std::size_t dim);
// Rank-1 PVM from the columns of a unitary, labels 0..n-1.
DiscretePOVM basis_pvm(const ComplexMatrix& unitary);
// Effects p_x * I.
DiscretePOVM trivial_povm(std::size_t dim, const std::vector<double>& p);

// Outcomes on a full product grid X x Y.
struct JointPOVM {
  std::size_t dim = 0;
  std::vector<Label> x_labels;
  std::vector<Label> y_labels;
  std::vector<std::vector<ComplexMatrix>> effects;  // [x][y]

  std::size_t nx() const { return x_labels.size(); }
  std::size_t ny() const { return y_labels.size(); }
  const ComplexMatrix& operator()(std::size_t x, std::size_t y) const {
    return effects[x][y];
  }
  ComplexMatrix& operator()(std::size_t x, std::size_t y) { return effects[x][y]; }

  // Labels must be pairs covering X x Y exactly once (InvalidInput otherwise).
  static JointPOVM from_povm(const DiscretePOVM& m);
  DiscretePOVM to_povm() const;
};

std::pair<DiscretePOVM, DiscretePOVM> margins(const JointPOVM& g);
std::pair<DiscretePOVM, DiscretePOVM> margins(const DiscretePOVM& g);

// Checks sum-to-one within 1e-12, clamps entries in [-1e-14, 0) to 0.
std::vector<double> checked_probabilities(const std::vector<double>& p,
                                          const char* what);

// lambda * P_x + (1 - lambda) * p_x * I
DiscretePOVM mix_with_noise(const DiscretePOVM& p, double lambda,
                            const std::vector<double>& probs);

JointPOVM tensor_povm(const DiscretePOVM& m, const DiscretePOVM& n);

// weights[i][j] = beta(target j | source i)
struct MarkovKernel {
  std::vector<Label> source;
  std::vector<Label> target;
  std::vector<std::vector<double>> weights;
};

void validate_kernel(const MarkovKernel& k);
MarkovKernel identity_kernel(const std::vector<Label>& labels);
// Deterministic x -> f(x); targets in order of first appearance.
MarkovKernel relabel_kernel(const std::vector<Label>& source,
                            const std::vector<Label>& image);
// Product kernel on grids: (b1 (x) b2)((z1,z2)|(x1,x2)).
MarkovKernel product_kernel(const MarkovKernel& b1, const MarkovKernel& b2);

DiscretePOVM post_process(const DiscretePOVM& m, const MarkovKernel& beta);
// (beta * alpha)(z|x) = sum_y beta(z|y) alpha(y|x)
MarkovKernel kernel_compose(const MarkovKernel& beta, const MarkovKernel& alpha);

// R_+ = a I + avec.sigma, R_- = (1 - a) I - avec.sigma
struct BlochObservable {
  double a = 0.5;
  std::array<double, 3> avec{0.0, 0.0, 0.0};
  double norm() const;
};

inline const Label kPlus = Label("+");
inline const Label kMinus = Label("-");

DiscretePOVM bloch_to_povm(const BlochObservable& b);
// Binary qubit POVM; the first outcome is read as R_+.
BlochObservable povm_to_bloch(const DiscretePOVM& m);

// Pauli matrices, index 0..2 = x, y, z.
const ComplexMatrix& pauli(int k);
ComplexMatrix bloch_operator(double scalar, const std::array<double, 3>& v);

}  // namespace povmb
