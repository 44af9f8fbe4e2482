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

namespace povmb {

inline constexpr double kPsdTol = 1e-9;

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

struct JacobiOptions {
  double rel_tol = 1e-14;
  int max_sweeps = 100;
};

// Cyclic complex Jacobi. Throws InvalidInput for non-square or
// non-Hermitian input.
EigenDecomposition hermitian_eig(const ComplexMatrix& a,
                                 const JacobiOptions& opts = {});

// Same, but rotates A into the basis `guess` first. When guess nearly
// diagonalizes A only a sweep or two is needed.
EigenDecomposition hermitian_eig_from(const ComplexMatrix& a,
                                      const ComplexMatrix& guess,
                                      const JacobiOptions& opts = {});

std::vector<double> eigenvalues(const ComplexMatrix& a);
double min_eigenvalue(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double rel_tol = 1e-12);
bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

// min eigenvalue >= -tol * (1 + ||A||_F)
bool is_psd(const ComplexMatrix& a, double tol = kPsdTol);

ComplexMatrix reconstruct(const EigenDecomposition& e);
// Apply f to the spectrum of a Hermitian matrix.
template <class F>
ComplexMatrix spectral_map(const EigenDecomposition& e, F f) {
  const std::size_t n = e.values.size();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double fk = f(e.values[k]);
    if (fk == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = e.vectors(i, k) * fk;
      for (std::size_t j = 0; j < n; ++j)
        out(i, j) += vik * std::conj(e.vectors(j, k));
    }
  }
  return out;
}

// Nearest PSD matrix in Frobenius norm (negative eigenvalues clamped).
ComplexMatrix project_psd(const ComplexMatrix& a);
ComplexMatrix psd_sqrt(const ComplexMatrix& a);
// Inverse square root; throws InvalidInput if not positive definite.
ComplexMatrix inverse_sqrt(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const std::vector<ComplexMatrix>& ms);

// Traces out every factor not listed in `keep`. Kept factors stay in
// their original order.
ComplexMatrix partial_trace(const ComplexMatrix& a, const DimensionSpec& dims,
                            const std::vector<std::size_t>& keep);

// basis * (basis^dagger A basis)^T * basis^dagger
ComplexMatrix transpose_in_basis(const ComplexMatrix& a,
                                 const ComplexMatrix& basis);

// Diagonal part of A in the orthonormal basis given by the columns.
ComplexMatrix pinch(const ComplexMatrix& a, const ComplexMatrix& basis);

}  // namespace povmb
