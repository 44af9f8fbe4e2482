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

#include "povmb/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "povmb/errors.hpp"

namespace povmb {

namespace {

double off_diagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

void require_hermitian(const ComplexMatrix& a, const char* what) {
  if (!a.square())
    throw InvalidInput(std::string(what) + ": matrix is not square");
  if (!is_hermitian(a))
    throw InvalidInput(std::string(what) + ": matrix is not Hermitian");
}

// Rotates a (in place) and accumulates into v until the off-diagonal
// mass drops below rel_tol * scale.
void jacobi_sweeps(ComplexMatrix& a, ComplexMatrix& v, double scale,
                   const JacobiOptions& opts) {
  const std::size_t n = a.rows();
  const double target = opts.rel_tol * scale;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    if (off_diagonal_mass(a) <= target) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300 || mag <= 1e-18 * scale) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const cplx e = apq / mag;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        if (theta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx se = s * e;               // R(p,q)
        const cplx sec = s * std::conj(e);   // -R(q,p)

        // A <- A R
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sec * akq;
          a(k, q) = se * akp + c * akq;
        }
        // A <- R^dagger A
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - se * aqk;
          a(q, k) = sec * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        // V <- V R
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sec * vkq;
          v(k, q) = se * vkp + c * vkq;
        }
      }
    }
  }
}

EigenDecomposition finish(const ComplexMatrix& a, const ComplexMatrix& v) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  EigenDecomposition out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    out.values[k] = a(src, src).real();
    // Fix the phase: largest-magnitude component real and positive.
    std::size_t piv = 0;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double m = std::abs(v(i, src));
      if (m > best + 1e-12) {
        best = m;
        piv = i;
      }
    }
    const cplx ph = best > 0.0 ? std::conj(v(piv, src)) / best : cplx(1.0);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * ph;
  }
  return out;
}

}  // namespace

bool is_hermitian(const ComplexMatrix& a, double rel_tol) {
  if (!a.square()) return false;
  const double tol = rel_tol * (1.0 + a.max_abs());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
  return true;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (!u.square()) return false;
  const ComplexMatrix d = u.adjoint() * u - ComplexMatrix::identity(u.rows());
  return d.frobenius_norm() <= tol * (1.0 + std::sqrt(double(u.rows())));
}

EigenDecomposition hermitian_eig(const ComplexMatrix& a,
                                 const JacobiOptions& opts) {
  require_hermitian(a, "hermitian_eig");
  ComplexMatrix work = a.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(a.rows());
  jacobi_sweeps(work, v, a.frobenius_norm(), opts);
  return finish(work, v);
}

EigenDecomposition hermitian_eig_from(const ComplexMatrix& a,
                                      const ComplexMatrix& guess,
                                      const JacobiOptions& opts) {
  require_hermitian(a, "hermitian_eig_from");
  if (guess.rows() != a.rows() || !guess.square())
    throw InvalidInput("hermitian_eig_from: guess has the wrong shape");
  ComplexMatrix work = (guess.adjoint() * a * guess).hermitian_part();
  ComplexMatrix v = guess;
  jacobi_sweeps(work, v, a.frobenius_norm(), opts);
  return finish(work, v);
}

std::vector<double> eigenvalues(const ComplexMatrix& a) {
  return hermitian_eig(a).values;
}

double min_eigenvalue(const ComplexMatrix& a) {
  const auto v = eigenvalues(a);
  return v.empty() ? 0.0 : v.front();
}

bool is_psd(const ComplexMatrix& a, double tol) {
  require_hermitian(a, "is_psd");
  if (a.rows() == 0) return true;
  return min_eigenvalue(a) >= -tol * (1.0 + a.frobenius_norm());
}

ComplexMatrix reconstruct(const EigenDecomposition& e) {
  return spectral_map(e, [](double x) { return x; });
}

ComplexMatrix project_psd(const ComplexMatrix& a) {
  return spectral_map(hermitian_eig(a.hermitian_part()),
                      [](double x) { return x > 0.0 ? x : 0.0; });
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
  return spectral_map(hermitian_eig(a.hermitian_part()),
                      [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

ComplexMatrix inverse_sqrt(const ComplexMatrix& a) {
  const auto e = hermitian_eig(a.hermitian_part());
  if (!e.values.empty() && e.values.front() <= 0.0)
    throw InvalidInput("inverse_sqrt: matrix is not positive definite");
  return spectral_map(e, [](double x) { return 1.0 / std::sqrt(x); });
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  ComplexMatrix out(ar * br, ac * bc);
  for (std::size_t i = 0; i < ar; ++i)
    for (std::size_t j = 0; j < ac; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (std::size_t k = 0; k < br; ++k)
        for (std::size_t l = 0; l < bc; ++l)
          out(i * br + k, j * bc + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix kron(const std::vector<ComplexMatrix>& ms) {
  if (ms.empty()) return ComplexMatrix::identity(1);
  ComplexMatrix out = ms.front();
  for (std::size_t k = 1; k < ms.size(); ++k) out = kron(out, ms[k]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a, const DimensionSpec& dims,
                            const std::vector<std::size_t>& keep) {
  if (!a.square()) throw InvalidInput("partial_trace: matrix is not square");
  if (dims.factors.empty() || dims.total() != a.rows())
    throw InvalidInput("partial_trace: dimension spec does not match matrix");
  for (auto f : dims.factors)
    if (f == 0) throw InvalidInput("partial_trace: zero-dimensional factor");
  std::vector<bool> kept(dims.count(), false);
  for (std::size_t idx = 0; idx < keep.size(); ++idx) {
    const std::size_t k = keep[idx];
    if (k >= dims.count() || kept[k] || (idx > 0 && keep[idx - 1] > k))
      throw InvalidInput("partial_trace: keep must be sorted, distinct, in range");
    kept[k] = true;
  }

  const std::size_t n = a.rows();
  std::size_t kdim = 1, tdim = 1;
  for (std::size_t f = 0; f < dims.count(); ++f)
    (kept[f] ? kdim : tdim) *= dims.factors[f];

  // Split each flat index into kept / traced parts.
  std::vector<std::size_t> kidx(n), tidx(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rem = i, kv = 0, tv = 0, kmul = 1, tmul = 1;
    for (std::size_t f = dims.count(); f-- > 0;) {
      const std::size_t d = dims.factors[f];
      const std::size_t digit = rem % d;
      rem /= d;
      if (kept[f]) {
        kv += digit * kmul;
        kmul *= d;
      } else {
        tv += digit * tmul;
        tmul *= d;
      }
    }
    kidx[i] = kv;
    tidx[i] = tv;
  }
  std::vector<std::vector<std::size_t>> buckets(tdim);
  for (std::size_t i = 0; i < n; ++i) buckets[tidx[i]].push_back(i);

  ComplexMatrix out(kdim, kdim);
  for (const auto& b : buckets)
    for (std::size_t i : b)
      for (std::size_t j : b) out(kidx[i], kidx[j]) += a(i, j);
  return out;
}

ComplexMatrix transpose_in_basis(const ComplexMatrix& a,
                                 const ComplexMatrix& basis) {
  if (!a.square() || basis.rows() != a.rows())
    throw InvalidInput("transpose_in_basis: shape mismatch");
  if (!is_unitary(basis)) throw InvalidInput("transpose_in_basis: basis is not unitary");
  return basis * (basis.adjoint() * a * basis).transpose() * basis.adjoint();
}

ComplexMatrix pinch(const ComplexMatrix& a, const ComplexMatrix& basis) {
  if (!a.square() || basis.rows() != a.rows() || !basis.square())
    throw InvalidInput("pinch: shape mismatch");
  const std::size_t n = a.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto b = basis.column(k);
    const cplx w = std::inner_product(
        b.begin(), b.end(), a.apply(b).begin(), cplx(0.0), std::plus<>(),
        [](cplx x, cplx y) { return std::conj(x) * y; });
    out += ComplexMatrix::projector(b) * w;
  }
  return out;
}

}  // namespace povmb
