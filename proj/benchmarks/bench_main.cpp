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

#include <benchmark/benchmark.h>

#include "povmb.hpp"

using namespace povmb;

static void BM_HermitianEig(benchmark::State& state) {
  Rng rng(1);
  const ComplexMatrix a = random_hermitian(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(a));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(8)->Arg(16)->Arg(27)->Arg(64);

static void BM_SdpQubitGenerated(benchmark::State& state) {
  Rng rng(2);
  const DiscretePOVM m = random_povm(rng, 2, 2), n = random_povm(rng, 2, 2);
  const Channel phi = random_channel(rng, 2, 4);
  JointPOVM g;
  g.dim = 2;
  g.x_labels = m.labels;
  g.y_labels = n.labels;
  g.effects.assign(2, std::vector<ComplexMatrix>(2));
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y)
      g.effects[x][y] = dual_apply(phi, kron(m.effects[x], n.effects[y])).hermitian_part();
  for (auto _ : state) benchmark::DoNotOptimize(sdp_broadcast_feasibility(m, n, g));
}
BENCHMARK(BM_SdpQubitGenerated)->Unit(benchmark::kMillisecond);

static void BM_SdpQubitInfeasible(benchmark::State& state) {
  const DiscretePOVM m = unbiased_qubit(0.9, {0, 0, 1}), n = unbiased_qubit(0.9, {1, 0, 0});
  const JointPOVM g = ic_qubit_joint(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(sdp_broadcast_feasibility(m, n, g));
}
BENCHMARK(BM_SdpQubitInfeasible)->Unit(benchmark::kMillisecond);

static void BM_BlmppJoint(benchmark::State& state) {
  Rng rng(3);
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const DiscretePOVM p = random_rank1_pvm(rng, d), q = random_rank1_pvm(rng, d);
  const BlmppInstance inst = make_blmpp_instance(p, q, random_state(rng, d * d));
  for (auto _ : state) benchmark::DoNotOptimize(blmpp_joint(inst));
}
BENCHMARK(BM_BlmppJoint)->Arg(2)->Arg(3)->Arg(5);

static void BM_WeylBroadcasterResidual(benchmark::State& state) {
  Rng rng(4);
  const std::size_t d = static_cast<std::size_t>(state.range(0));
  const WeylSystem sys(d);
  const ComplexMatrix sigma = random_state(rng, d);
  const JointPOVM g = covariant_phase_povm(sys, sigma);
  const WeylBroadcaster phi = standard_broadcaster_map(sys, sigma);
  for (auto _ : state)
    benchmark::DoNotOptimize(phi.generation_residual(sys.position_pvm(), sys.momentum_pvm(), g));
}
BENCHMARK(BM_WeylBroadcasterResidual)->Arg(3)->Arg(5)->Arg(8)->Arg(16);
BENCHMARK_MAIN();
