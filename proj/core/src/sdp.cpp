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

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "povmb/errors.hpp"
#include "povmb/feasibility.hpp"
#include "povmb/linalg.hpp"

namespace povmb {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// {J : tr(B_ij F_c) = t_c(i,j)} where B_ij is the (i,j) block of J. The
// constraint functionals are orthonormalized once; the same basis serves
// every block.
class AffineSet {
 public:
  AffineSet(std::size_t h, std::size_t k) : h_(h), k_(k) {}

  // Returns a description of the violated dependency if the targets are
  // inconsistent, empty otherwise.
  std::string build(const std::vector<ComplexMatrix>& functionals,
                    const std::vector<ComplexMatrix>& targets,
                    const std::vector<std::string>& names) {
    const std::size_t m = functionals.size();
    ComplexMatrix gram(m, m);
    for (std::size_t c = 0; c < m; ++c)
      for (std::size_t d = 0; d < m; ++d)
        gram(c, d) = hs_inner(functionals[c], functionals[d]).real();
    const auto eig = hermitian_eig(gram);
    const double cut = 1e-10 * std::max(1.0, eig.values.back());
    for (std::size_t a = 0; a < m; ++a) {
      const double lam = eig.values[a];
      ComplexMatrix f(k_, k_), t(h_, h_);
      double weight = 0.0;
      for (std::size_t c = 0; c < m; ++c) {
        const double u = eig.vectors(c, a).real();
        if (u == 0.0) continue;
        f += functionals[c] * u;
        t += targets[c] * u;
        weight += std::abs(u) * (1.0 + targets[c].frobenius_norm());
      }
      if (lam > cut) {
        const double s = 1.0 / std::sqrt(lam);
        basis_.push_back(f * s);
        rhs_.push_back(t * s);
        continue;
      }
      const double bad = t.frobenius_norm();
      if (bad > 1e-9 * weight) {
        std::string msg = "linear dependence sum_c v_c F_c = 0 with sum_c v_c G_c != 0 (norm " +
                          num(bad) + "); v =";
        for (std::size_t c = 0; c < m; ++c) {
          const double u = eig.vectors(c, a).real();
          if (std::abs(u) > 1e-12) msg += " " + names[c] + ":" + num(u);
        }
        return msg;
      }
    }
    return {};
  }

  void project(ComplexMatrix& j) const {
    for (std::size_t i = 0; i < h_; ++i)
      for (std::size_t l = 0; l < h_; ++l)
        for (std::size_t a = 0; a < basis_.size(); ++a) {
          const cplx d = block_inner(a, j, i, l) - rhs_[a](i, l);
          add_block(j, i, l, a, -d);
        }
  }

  // Component of j in the span of the constraint functionals.
  ComplexMatrix normal_component(const ComplexMatrix& j) const {
    ComplexMatrix out(j.rows(), j.cols());
    for (std::size_t i = 0; i < h_; ++i)
      for (std::size_t l = 0; l < h_; ++l)
        for (std::size_t a = 0; a < basis_.size(); ++a)
          add_block(out, i, l, a, block_inner(a, j, i, l));
    return out;
  }

 private:
  cplx block_inner(std::size_t a, const ComplexMatrix& j, std::size_t i,
                   std::size_t l) const {
    const auto& e = basis_[a];
    cplx s = 0.0;
    for (std::size_t r = 0; r < k_; ++r) {
      const cplx* row = j.data() + (i * k_ + r) * j.cols() + l * k_;
      for (std::size_t c = 0; c < k_; ++c) s += std::conj(e(r, c)) * row[c];
    }
    return s;
  }

  void add_block(ComplexMatrix& j, std::size_t i, std::size_t l, std::size_t a,
                 cplx w) const {
    if (w == cplx(0.0)) return;
    const auto& e = basis_[a];
    for (std::size_t r = 0; r < k_; ++r) {
      cplx* row = j.data() + (i * k_ + r) * j.cols() + l * k_;
      for (std::size_t c = 0; c < k_; ++c) row[c] += w * e(r, c);
    }
  }

  std::size_t h_, k_;
  std::vector<ComplexMatrix> basis_;  // orthonormal, Hermitian
  std::vector<ComplexMatrix> rhs_;    // rhs_[a](i,l) = <E_a, B_il> on the set
};

struct Candidate {
  Channel channel;
  double residual = INFINITY;
};

class Solver {
 public:
  Solver(const DiscretePOVM& m, const DiscretePOVM& n, const JointPOVM& g,
         const SdpOptions& opts)
      : m_(m), n_(n), g_(g), opts_(opts), h_(g.dim), k_(m.dim * n.dim),
        affine_(h_, k_) {}

  FeasibilityReport run() {
    FeasibilityReport rep;
    if (const auto bad = build_constraints(); !bad.empty()) {
      rep.verdict = Verdict::kInfeasible;
      rep.certificate = bad;
      rep.margin = INFINITY;
      rep.residual = INFINITY;
      return rep;
    }
    const std::size_t dim = h_ * k_;
    ComplexMatrix x = kron(ComplexMatrix::identity(h_),
                           ComplexMatrix::identity(k_) * (1.0 / double(k_)));
    ComplexMatrix p(dim, dim);
    ComplexMatrix y;
    basis_ = ComplexMatrix::identity(dim);
    std::deque<double> history;
    double gap = INFINITY;

    for (std::size_t it = 1; it <= opts_.max_iter; ++it) {
      y = x;
      affine_.project(y);
      y = y.hermitian_part();
      ComplexMatrix w = y + p;
      const auto eig = hermitian_eig_from(w, basis_);
      basis_ = eig.vectors;
      ComplexMatrix z = spectral_map(eig, [](double v) { return v > 0.0 ? v : 0.0; });
      p = w - z;
      gap = frobenius_distance(y, z);
      x = std::move(z);
      rep.iterations = it;
      rep.margin = gap;

      if (opts_.progress && it % opts_.progress_every == 0) opts_.progress({it, gap});

      if (eig.values.front() >= 0.0 || (it % 10 == 0 && gap <= 100.0 * opts_.feas_tol)) {
        auto c = extract(y);
        if (c.residual <= opts_.feas_tol) return feasible(std::move(rep), std::move(c));
      }

      history.push_back(gap);
      bool stalled = false;
      if (history.size() > opts_.stall_window) {
        stalled = history.front() - gap < opts_.stall_progress;
        history.pop_front();
      }
      if ((it % opts_.cert_every == 0 && gap >= opts_.cert_tol) || stalled) {
        if (auto cert = certificate(y)) {
          rep.verdict = Verdict::kInfeasible;
          rep.certificate = *cert;
          rep.residual = extract(y).residual;
          return rep;
        }
        if (stalled) break;
      }
    }
    auto c = extract(y);
    if (c.residual <= opts_.feas_tol) return feasible(std::move(rep), std::move(c));
    if (auto cert = certificate(y)) {
      rep.verdict = Verdict::kInfeasible;
      rep.certificate = *cert;
    } else {
      rep.verdict = Verdict::kIndeterminate;
    }
    rep.residual = c.residual;
    return rep;
  }

 private:
  std::string build_constraints() {
    std::vector<ComplexMatrix> fs, ts;
    std::vector<std::string> names;
    for (std::size_t x = 0; x < g_.nx(); ++x)
      for (std::size_t y = 0; y < g_.ny(); ++y) {
        fs.push_back(kron(m_.effect(g_.x_labels[x]), n_.effect(g_.y_labels[y])));
        // tr(B_il F) = <l| Phi*(F) |i> = (G_xy)_{li}
        ts.push_back(g_(x, y).transpose());
        names.push_back(Label::pair(g_.x_labels[x], g_.y_labels[y]).str());
      }
    fs.push_back(ComplexMatrix::identity(k_));
    ts.push_back(ComplexMatrix::identity(h_));
    names.push_back("trace");
    return affine_.build(fs, ts, names);
  }

  // TP-feasible y -> clamp -> TP renormalize -> measured residual.
  Candidate extract(const ComplexMatrix& y) const {
    const auto eig = hermitian_eig_from(y.hermitian_part(), basis_);
    ComplexMatrix j = spectral_map(eig, [](double v) { return v > 0.0 ? v : 0.0; });
    const auto t = partial_trace(j, {h_, k_}, {0});
    Candidate c;
    const auto te = hermitian_eig(t.hermitian_part());
    if (te.values.front() <= 1e-12) return c;
    const auto s = kron(spectral_map(te, [](double v) { return 1.0 / std::sqrt(v); }),
                        ComplexMatrix::identity(k_));
    j = (s * j * s).hermitian_part();
    c.channel = Channel::from_choi_unchecked(h_, k_, std::move(j));
    c.residual = verify_generation(c.channel, m_, n_, g_);
    return c;
  }

  FeasibilityReport feasible(FeasibilityReport rep, Candidate c) const {
    rep.verdict = Verdict::kFeasible;
    rep.residual = c.residual;
    rep.witness = std::move(c.channel);
    return rep;
  }

  // Y in the span of the constraint functionals takes the constant value
  // <Y, y> on the affine set, while <Y, J> >= -h max(0, -lmin(Y)) for
  // every PSD J of trace h. A sufficiently negative constant separates.
  std::optional<std::string> certificate(const ComplexMatrix& y) const {
    const auto eig = hermitian_eig_from(y.hermitian_part(), basis_);
    const ComplexMatrix neg = spectral_map(eig, [](double v) { return v < 0.0 ? -v : 0.0; });
    ComplexMatrix yn = affine_.normal_component(neg).hermitian_part();
    const double norm = yn.frobenius_norm();
    if (norm <= 1e-300) return std::nullopt;
    yn *= 1.0 / norm;
    const double on_affine = hs_inner(yn, y).real();
    const double floor = double(h_) * std::max(0.0, -min_eigenvalue(yn));
    const double value = on_affine + floor;
    if (value >= -opts_.cert_tol) return std::nullopt;
    return "separating operator Y (||Y||_F = 1): <Y,J> = " + num(on_affine) +
           " on the affine set, but >= " + num(-floor) +
           " for every PSD trace-" + std::to_string(h_) + " J";
  }

  const DiscretePOVM& m_;
  const DiscretePOVM& n_;
  const JointPOVM& g_;
  SdpOptions opts_;
  std::size_t h_, k_;
  AffineSet affine_;
  ComplexMatrix basis_;
};

}  // namespace

FeasibilityReport sdp_broadcast_feasibility(const DiscretePOVM& m,
                                            const DiscretePOVM& n,
                                            const JointPOVM& g,
                                            const SdpOptions& opts) {
  require_valid(m, "sdp_broadcast_feasibility (M)");
  require_valid(n, "sdp_broadcast_feasibility (N)");
  require_valid(g.to_povm(), "sdp_broadcast_feasibility (G)");
  if (g.nx() != m.size() || g.ny() != n.size())
    throw InvalidInput("sdp_broadcast_feasibility: grid does not match M x N");
  for (const auto& l : g.x_labels) m.index_of(l);
  for (const auto& l : g.y_labels) n.index_of(l);
  const std::size_t total = g.dim * m.dim * n.dim;
  if (total > kMaxSdpDimension)
    throw UnsupportedInput("sdp_broadcast_feasibility: h*k1*k2 = " + std::to_string(total) +
                           " exceeds " + std::to_string(kMaxSdpDimension));
  if (opts.max_iter == 0 || !(opts.feas_tol > 0.0) || !(opts.cert_tol > 0.0))
    throw InvalidInput("sdp_broadcast_feasibility: bad solver options");
  return Solver(m, n, g, opts).run();
}

}  // namespace povmb
