//
// Copyright 2026 The pmlgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <benchmark/benchmark.h>

#include "pmlgame/accountant.h"
#include "pmlgame/adversary.h"
#include "pmlgame/density_table.h"

namespace pmlgame {
namespace {

PlayerCost RandomCost(int dim, Rng& rng) {
  Vec a(dim);
  Mat b(dim, dim);
  for (int r = 0; r < dim; ++r) a[r] = rng.Uniform01();
  for (Eigen::Index e = 0; e < b.size(); ++e) b(e) = rng.Uniform01();
  return PlayerCost::Disease(a, b);
}

Mechanism DiseaseMechanism(int n, int horizon) {
  const AggregativeGame game =
      AggregativeGame::WithDefaults(n, 2, CostFamily::kDisease);
  return Mechanism{game,
                   UpdateRule::FullAveraging(n),
                   NoiseSchedule::Polynomial(1, 0.5, 1),
                   StepSchedule::Harmonic(1, 1, 1),
                   horizon,
                   InitialStrategies(game, 1)};
}

DiscretePrior BinaryPrior(int n, Rng& rng) {
  std::vector<std::vector<std::pair<PlayerCost, double>>> marginals;
  for (int i = 0; i < n; ++i) {
    marginals.push_back({{RandomCost(2, rng), 0.3}, {RandomCost(2, rng), 0.7}});
  }
  return DiscretePrior::IndependentProduct(marginals);
}

void BM_Run(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int horizon = static_cast<int>(state.range(1));
  const Mechanism m = DiseaseMechanism(n, horizon);
  Rng rng(1);
  CostProfile f;
  for (int i = 0; i < n; ++i) f.entries.push_back(RandomCost(2, rng));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Run(m.game, f, m.rule, m.noise, m.steps, m.horizon, m.x0, ++seed));
  }
  state.SetItemsProcessed(state.iterations() * n * horizon);
}
BENCHMARK(BM_Run)->Args({4, 50})->Args({20, 200});

void BM_DensityTable(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Mechanism m = DiseaseMechanism(n, 50);
  Rng rng(2);
  const DiscretePrior prior = BinaryPrior(n, rng);
  const Sequence o = Run(m.game, prior.profile(0), m.rule, m.noise, m.steps,
                         m.horizon, m.x0, 3)
                         .o;
  for (auto _ : state) {
    benchmark::DoNotOptimize(DensityTable(m, prior, o));
  }
}
BENCHMARK(BM_DensityTable)->Arg(4)->Arg(12);

void BM_ExactPml(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Mechanism m = DiseaseMechanism(n, 10);
  Rng rng(4);
  const DiscretePrior prior = BinaryPrior(n, rng);
  const Sequence o = Run(m.game, prior.profile(0), m.rule, m.noise, m.steps,
                         m.horizon, m.x0, 5)
                         .o;
  const DensityTable table(m, prior, o);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ExactPml(prior, table));
  }
  state.SetItemsProcessed(state.iterations() * prior.size());
}
BENCHMARK(BM_ExactPml)->Arg(8)->Arg(16);

void BM_ComputeBounds(benchmark::State& state) {
  const Mechanism m = DiseaseMechanism(3, 5);
  Rng rng(6);
  const DiscretePrior prior = BinaryPrior(3, rng);
  SamplerConfig cfg;
  cfg.n_runs = 50;
  cfg.probes_per_run = 1;
  const auto samples = SampleObservations(m, prior, cfg);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ComputeBounds(m, prior, samples));
  }
}
BENCHMARK(BM_ComputeBounds);

void BM_AttackStep(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Mechanism m = DiseaseMechanism(n, 2);
  Rng rng(7);
  CostProfile f;
  for (int i = 0; i < n; ++i) f.entries.push_back(RandomCost(2, rng));
  const Trajectory t =
      Run(m.game, f, m.rule, m.noise, m.steps, m.horizon, m.x0, 8);
  const AdversaryState s = InitAdversary(t.o[0], 9);
  AttackOptions opts;
  opts.safeguard = true;
  for (auto _ : state) {
    benchmark::DoNotOptimize(AttackStep(s, t.o[0], t.o[1], m.steps, 0, opts));
  }
}
BENCHMARK(BM_AttackStep)->Arg(4)->Arg(20);

}  // namespace
}  // namespace pmlgame

BENCHMARK_MAIN();
