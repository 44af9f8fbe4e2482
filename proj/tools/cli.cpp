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

#include "cli.hpp"

#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "povmb.hpp"

namespace povmb::cli {

using nlohmann::json;

namespace {

// Every violated invariant, one line each.
struct ValidationFailed {
  std::vector<std::string> lines;
};

struct IoFailure : Error {
  using Error::Error;
};

struct Context {
  std::ostream& out;
  std::ostream& err;
  std::shared_ptr<spdlog::logger> log;
  std::string out_path;
};

std::shared_ptr<spdlog::logger> make_logger(std::ostream& err) {
  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto log = std::make_shared<spdlog::logger>("povm-broadcast", sink);
  log->set_pattern("[%l] %v");
  const char* env = std::getenv("POVM_BROADCAST_LOG");
  const std::string level = env ? env : "info";
  if (level == "quiet") {
    log->set_level(spdlog::level::off);
  } else if (level == "debug") {
    log->set_level(spdlog::level::debug);
  } else {
    log->set_level(spdlog::level::info);
    if (level != "info") log->warn("POVM_BROADCAST_LOG={} not recognized, using info", level);
  }
  return log;
}

void emit(const Context& ctx, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (ctx.out_path.empty()) {
    ctx.out << text << std::flush;
    return;
  }
  std::ofstream f(ctx.out_path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoFailure("cannot write " + ctx.out_path);
  f << text;
  if (!f.flush()) throw IoFailure("write failed for " + ctx.out_path);
}

void collect(std::vector<std::string>& lines, const std::string& what, const ValidationReport& r) {
  for (const auto& i : r.issues) lines.push_back(what + ": " + i.kind + ": " + i.detail);
}

DiscretePOVM load_povm(const std::string& path) { return povm_from_json(read_json_file(path)); }

ComplexMatrix load_sigma(const std::string& spec, std::size_t d,
                         const std::optional<std::uint64_t>& seed) {
  if (spec == "maximally-mixed") return ComplexMatrix::identity(d) * (1.0 / double(d));
  if (spec == "rank-1") {
    ComplexMatrix s = ComplexMatrix::zeros(d, d);
    s(0, 0) = 1.0;
    return s;
  }
  if (spec == "random") {
    if (!seed) throw InvalidInput("--sigma random requires --seed");
    Rng rng(*seed);
    return random_state(rng, d);
  }
  const ComplexMatrix s = matrix_from_json(read_json_file(spec));
  require_state(s, d, "--sigma");
  return s;
}

std::vector<double> parse_distribution(const std::string& text, std::size_t d, const char* what) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidInput(std::string(what) + ": not a number: \"" + item + "\"");
    }
  }
  if (v.size() != d)
    throw InvalidInput(std::string(what) + ": expected " + std::to_string(d) + " weights");
  return checked_probabilities(v, what);
}

json margins_json(const JointPOVM& g) {
  const auto [g1, g2] = margins(g);
  return json::array({to_json(g1), to_json(g2)});
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kFeasible: return kExitFeasible;
    case Verdict::kInfeasible: return kExitInfeasible;
    default: return kExitIndeterminate;
  }
}

// --- check ------------------------------------------------------------------

struct CheckArgs {
  std::string m, n, g;
  bool analytic = false;
  SdpOptions sdp;
};

FeasibilityReport analytic_check(const DiscretePOVM& m, const DiscretePOVM& n,
                                 const JointPOVM& g, const Context& ctx) {
  const auto pm = decompose_noisy_pvm(m), pn = decompose_noisy_pvm(n);
  if (pm && pn) {
    ctx.log->info("analytic: noisy PVM pair, lambda={} mu={}", pm->lambda, pn->lambda);
    return fuzzy_pvm_condition(pm->pvm, pn->pvm, pm->lambda, pn->lambda, pm->p, pn->p, g);
  }
  if (m.dim == 2 && m.size() == 2 && n.size() == 2) {
    ctx.log->info("analytic: binary qubit pair");
    return qubit_general_condition(m, n, g);
  }
  throw UnsupportedInput(
      "--analytic needs M and N of noisy-PVM form or binary qubit observables");
}

int cmd_check(const CheckArgs& a, const Context& ctx) {
  const DiscretePOVM m = load_povm(a.m), n = load_povm(a.n);
  const JointPOVM g = joint_from_json(read_json_file(a.g));
  ValidationFailed bad;
  collect(bad.lines, a.m, validate_povm(m));
  collect(bad.lines, a.n, validate_povm(n));
  collect(bad.lines, a.g, validate_povm(g.to_povm()));
  if (!bad.lines.empty()) throw bad;

  ctx.log->debug("M: {} outcomes on dim {}; N: {} outcomes on dim {}; G: {}x{} grid", m.size(),
                 m.dim, n.size(), n.dim, g.nx(), g.ny());
  FeasibilityReport rep;
  if (a.analytic) {
    rep = analytic_check(m, n, g, ctx);
  } else {
    SdpOptions opts = a.sdp;
    ctx.log->debug("solver: feas_tol {:.1e} cert_tol {:.1e} max_iter {}", opts.feas_tol,
                   opts.cert_tol, opts.max_iter);
    opts.progress = [&](const SdpProgress& p) {
      ctx.log->debug("iteration {} gap {:.3e}", p.iteration, p.gap);
    };
    rep = sdp_broadcast_feasibility(m, n, g, opts);
  }
  ctx.log->info("verdict {} after {} iterations, residual {:.3e}", to_string(rep.verdict),
                rep.iterations, rep.residual);
  if (rep.certificate) ctx.log->info("certificate: {}", *rep.certificate);
  emit(ctx, to_json(rep));
  return verdict_exit(rep.verdict);
}

// --- weyl-demo --------------------------------------------------------------

struct SigmaArgs {
  std::size_t dim = 2;
  std::string sigma = "maximally-mixed";
};

struct WeylArgs {
  SigmaArgs s;
  std::optional<double> lambda, mu;
};

int cmd_weyl_demo(const WeylArgs& a, const std::optional<std::uint64_t>& seed,
                  const Context& ctx) {
  const WeylSystem sys(a.s.dim);
  const ComplexMatrix sigma = load_sigma(a.s.sigma, a.s.dim, seed);
  const JointPOVM g = covariant_phase_povm(sys, sigma);
  json j{{"dim", a.s.dim}, {"sigma", to_json(sigma)}, {"joint", to_json(g)},
         {"margins", margins_json(g)}};

  const bool noisy = a.lambda || a.mu;
  const double lambda = a.lambda.value_or(1.0), mu = a.mu.value_or(1.0);
  double residual = 0.0;
  if (noisy) {
    j["lambda"] = lambda;
    j["mu"] = mu;
    const auto cond = cov_noise_condition(sys, sigma, lambda, mu);
    j["condition"] = to_json(cond);
    if (cond.verdict != Verdict::kFeasible) {
      ctx.log->error("noise condition fails: minimal eigenvalue {:.6e}", cond.margin);
      j["residual"] = nullptr;
      emit(ctx, j);
      return kExitInfeasible;
    }
    residual = noisy_broadcaster_map(sys, sigma, lambda, mu)
                   .generation_residual(sys.noisy_position(lambda), sys.noisy_momentum(mu), g);
  } else {
    residual = standard_broadcaster_map(sys, sigma)
                   .generation_residual(sys.position_pvm(), sys.momentum_pvm(), g);
  }
  j["residual"] = residual;
  ctx.log->info("generation residual {:.3e}", residual);
  emit(ctx, j);
  if (residual > 1e-8) {
    ctx.log->error("residual above 1e-8");
    return kExitInfeasible;
  }
  return kExitFeasible;
}

// --- blmpp-mub --------------------------------------------------------------

int cmd_blmpp_mub(std::size_t d, const Context& ctx) {
  const JointPOVM g = optimal_mub_joint(d);
  const auto [g1, g2] = margins(g);
  const auto [r1, r2] = mub_reference_margins(d);
  double dev = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    dev = std::max(dev, (g1.effects[k] - r1.effects[k]).frobenius_norm());
    dev = std::max(dev, (g2.effects[k] - r2.effects[k]).frobenius_norm());
  }
  // Weight of G1_0 on the target projection and on its complement.
  const double target = g1.effects[0](0, 0).real();
  json j{{"dim", d},
         {"joint", to_json(g)},
         {"margins", json::array({to_json(g1), to_json(g2)})},
         {"reference_margins", json::array({to_json(r1), to_json(r2)})},
         {"weights", {{"target", target}, {"complement", g1.effects[0].trace().real() - target}}},
         {"max_deviation", dev}};
  ctx.log->info("max deviation from reference margins {:.3e}", dev);
  emit(ctx, j);
  return dev <= 1e-9 ? kExitFeasible : kExitInfeasible;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string channel, m, n, g;
  double tol = 1e-9;
};

int cmd_verify(const VerifyArgs& a, const Context& ctx) {
  const Channel phi = channel_from_json(read_json_file(a.channel));
  const DiscretePOVM m = load_povm(a.m), n = load_povm(a.n);
  const JointPOVM g = joint_from_json(read_json_file(a.g));
  ValidationFailed bad;
  collect(bad.lines, a.m, validate_povm(m));
  collect(bad.lines, a.n, validate_povm(n));
  collect(bad.lines, a.g, validate_povm(g.to_povm()));
  if (!bad.lines.empty()) throw bad;
  const CptpReport c = verify_cptp(phi);
  const double r = verify_generation(phi, m, n, g);
  emit(ctx, json{{"residual", r},
                 {"tolerance", a.tol},
                 {"cptp",
                  {{"ok", c.ok()}, {"min_eigenvalue", c.min_eigenvalue}, {"tp_defect", c.tp_defect}}}});
  ctx.log->info("generation residual {:.3e}", r);
  return c.ok() && r <= a.tol ? kExitFeasible : kExitInfeasible;
}

// --- twirl ------------------------------------------------------------------

int cmd_twirl(const std::string& path, const Context& ctx) {
  const Channel phi = channel_from_json(read_json_file(path));
  const WeylSystem sys(phi.dim_in());
  const Channel t = twirl_channel(phi, sys);
  const double before = weyl_covariance_defect(phi, sys, true);
  const double after = weyl_covariance_defect(t, sys, true);
  ctx.log->info("covariance defect {:.3e} -> {:.3e}", before, after);
  emit(ctx, json{{"channel", to_json(t)},
                 {"covariance_defect_before", before},
                 {"covariance_defect_after", after}});
  return kExitFeasible;
}

// --- solve-tau --------------------------------------------------------------

struct TauArgs {
  SigmaArgs s;
  std::string mu, nu;
};

int cmd_solve_tau(const TauArgs& a, const std::optional<std::uint64_t>& seed, const Context& ctx) {
  const WeylSystem sys(a.s.dim);
  const ComplexMatrix sigma = load_sigma(a.s.sigma, a.s.dim, seed);
  const auto mu = parse_distribution(a.mu, a.s.dim, "--mu-dist");
  const auto nu = parse_distribution(a.nu, a.s.dim, "--nu-dist");
  const TauResult r = solve_tau(sys, sigma, mu, nu);
  ctx.log->info("solve-tau {}: {}", to_string(r.status), r.detail);
  emit(ctx, json{{"status", to_string(r.status)},
                 {"tau", r.tau ? to_json(*r.tau) : json(nullptr)},
                 {"min_eigenvalue", r.min_eigenvalue},
                 {"free_coefficients", r.free_coefficients},
                 {"detail", r.detail}});
  switch (r.status) {
    case TauResult::Status::kFound: return kExitFeasible;
    case TauResult::Status::kInfeasible: return kExitInfeasible;
    default: return kExitIndeterminate;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Broadcasting feasibility checks for joint quantum measurements",
               "povm-broadcast"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  std::optional<std::uint64_t> seed;
  app.add_option("--out", out_path, "Write the report here instead of stdout");
  app.add_option("--seed", seed, "Seed for randomized inputs");

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide whether G can be generated from (M, N)");
  c->add_option("M", check.m, "POVM M (JSON)")->required()->check(CLI::ExistingFile);
  c->add_option("N", check.n, "POVM N (JSON)")->required()->check(CLI::ExistingFile);
  c->add_option("G", check.g, "Joint POVM G (JSON)")->required()->check(CLI::ExistingFile);
  c->add_flag("--analytic", check.analytic, "Use the closed-form condition");
  c->add_option("--feas-tol", check.sdp.feas_tol)->check(CLI::PositiveNumber);
  c->add_option("--cert-tol", check.sdp.cert_tol)->check(CLI::PositiveNumber);
  c->add_option("--max-iter", check.sdp.max_iter)->check(CLI::Range(1, 10000000));

  WeylArgs weyl;
  auto* w = app.add_subcommand("weyl-demo", "Covariant phase-space joint and its broadcaster");
  w->add_option("--dim", weyl.s.dim)->check(CLI::Range(2, 16));
  w->add_option("--sigma", weyl.s.sigma, "file, maximally-mixed, rank-1 or random");
  w->add_option("--lambda", weyl.lambda)->check(CLI::Range(0.0, 1.0));
  w->add_option("--mu", weyl.mu)->check(CLI::Range(0.0, 1.0));

  std::size_t mub_dim = 2;
  auto* b = app.add_subcommand("blmpp-mub", "Optimal joint for a mutually unbiased pair");
  b->add_option("--dim", mub_dim)->check(CLI::Range(2, 16));

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "Generation residual of a channel");
  v->add_option("channel", verify.channel)->required()->check(CLI::ExistingFile);
  v->add_option("M", verify.m)->required()->check(CLI::ExistingFile);
  v->add_option("N", verify.n)->required()->check(CLI::ExistingFile);
  v->add_option("G", verify.g)->required()->check(CLI::ExistingFile);
  v->add_option("--tol", verify.tol)->check(CLI::PositiveNumber);

  std::string twirl_path;
  auto* t = app.add_subcommand("twirl", "Weyl-covariant average of a channel");
  t->add_option("channel", twirl_path)->required()->check(CLI::ExistingFile);

  TauArgs tau;
  auto* s = app.add_subcommand("solve-tau", "Recover tau from a Weyl-smoothed state");
  s->add_option("--dim", tau.s.dim)->check(CLI::Range(2, 16));
  s->add_option("--sigma", tau.s.sigma, "file, maximally-mixed, rank-1 or random");
  s->add_option("--mu-dist", tau.mu, "Comma-separated weights")->required();
  s->add_option("--nu-dist", tau.nu, "Comma-separated weights")->required();

  std::vector<std::string> argv_store{"povm-broadcast"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInputError;
  }

  Context ctx{out, err, make_logger(err), out_path};
  try {
    if (c->parsed()) return cmd_check(check, ctx);
    if (w->parsed()) return cmd_weyl_demo(weyl, seed, ctx);
    if (b->parsed()) return cmd_blmpp_mub(mub_dim, ctx);
    if (v->parsed()) return cmd_verify(verify, ctx);
    if (t->parsed()) return cmd_twirl(twirl_path, ctx);
    if (s->parsed()) return cmd_solve_tau(tau, seed, ctx);
  } catch (const ValidationFailed& e) {
    for (const auto& l : e.lines) ctx.log->error("{}", l);
    if (ctx.log->level() == spdlog::level::off)
      for (const auto& l : e.lines) err << l << "\n";
    return kExitInputError;
  } catch (const InvalidInput& e) {
    ctx.log->error("{}", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    ctx.log->error("{}", e.what());
    return kExitRuntimeError;
  }
  return kExitInputError;
}

}  // namespace povmb::cli
