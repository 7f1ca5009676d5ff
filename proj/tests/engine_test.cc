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

#include "pmlgame/engine.h"

#include <gtest/gtest.h>

#include <cmath>

#include "pmlgame/error.h"
#include "support/instances.h"

namespace pmlgame {
namespace {

using testing::RandomDisease;
using testing::StraightLineEstimates;

struct Drawn {
  AggregativeGame game;
  CostProfile f;
  Profile x0;
};

Drawn RandomSetup(int n, int dim, std::uint64_t seed) {
  Rng rng(seed);
  Drawn s{AggregativeGame::WithDefaults(n, dim, CostFamily::kDisease), {}, {}};
  for (int i = 0; i < n; ++i) s.f.entries.push_back(RandomDisease(dim, rng));
  s.x0 = InitialStrategies(s.game, DeriveSeed(seed, 1));
  return s;
}

TEST(ScheduleTest, Values) {
  EXPECT_DOUBLE_EQ(NoiseSchedule::Polynomial(1, 0.5, 1).Scale(4), 3.0);
  EXPECT_DOUBLE_EQ(NoiseSchedule::Geometric(2, 0.5).Scale(3), 0.25);
  EXPECT_EQ(NoiseSchedule::Zero().Scale(7), 0.0);
  EXPECT_DOUBLE_EQ(StepSchedule::Harmonic(2, 1, 1).Step(3), 0.5);
  EXPECT_DOUBLE_EQ(StepSchedule::Geometric(1, 0.5).Step(2), 0.25);
}

TEST(ScheduleTest, RejectsInvalidParameters) {
  EXPECT_THROW(NoiseSchedule::Geometric(1, 1.0), Error);
  EXPECT_THROW(NoiseSchedule::Geometric(0, 0.5), Error);
  EXPECT_THROW(NoiseSchedule::Polynomial(0, 0, 1), Error);
  EXPECT_THROW(StepSchedule::Geometric(1, 1.5), Error);
  EXPECT_THROW(StepSchedule::Harmonic(0, 1, 1), Error);
}

TEST(SampleNoiseTest, ZeroScheduleGivesZero) {
  Rng rng(1);
  EXPECT_EQ(SampleNoise(NoiseSchedule::Zero(), 3, 4, rng), Vec::Zero(4));
}

TEST(RunTest, DeterministicForSeed) {
  const Drawn s = RandomSetup(3, 2, 1);
  const UpdateRule rule = UpdateRule::FullAveraging(3);
  const NoiseSchedule noise = NoiseSchedule::Polynomial(1, 1, 1);
  const StepSchedule steps = StepSchedule::Harmonic(1, 1, 1);
  const Trajectory a =
      pmlgame::Run(s.game, s.f, rule, noise, steps, 20, s.x0, 9);
  const Trajectory b =
      pmlgame::Run(s.game, s.f, rule, noise, steps, 20, s.x0, 9);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.v, b.v);
  EXPECT_EQ(a.o, b.o);
  const Trajectory c =
      pmlgame::Run(s.game, s.f, rule, noise, steps, 20, s.x0, 10);
  EXPECT_NE(a.o, c.o);
}

TEST(RunTest, ZeroGradientKeepsStrategies) {
  const AggregativeGame game =
      AggregativeGame::WithDefaults(3, 2, CostFamily::kDisease);
  const PlayerCost zero = PlayerCost::Disease(Vec::Zero(2), Mat::Zero(2, 2));
  const CostProfile f{{zero, zero, zero}, ""};
  const Profile x0 = InitialStrategies(game, 4);
  const Trajectory t =
      pmlgame::Run(game, f, UpdateRule::FullAveraging(3), NoiseSchedule::Zero(),
                   StepSchedule::Harmonic(1, 1, 1), 10, x0, 1);
  for (const Profile& xk : t.x) EXPECT_EQ(xk, x0);
}

TEST(RunTest, InitialEstimatesEqualStrategies) {
  const Drawn s = RandomSetup(4, 3, 2);
  for (const Vec& xi : s.x0) EXPECT_TRUE(s.game.constraint(0).Contains(xi));
  const Trajectory t =
      pmlgame::Run(s.game, s.f, UpdateRule::FullAveraging(4),
                   NoiseSchedule::Polynomial(1, 1, 1),
                   StepSchedule::Harmonic(1, 1, 1), 3, s.x0, 5);
  EXPECT_EQ(t.x[0], s.x0);
  EXPECT_EQ(t.v[0], s.x0);
  EXPECT_EQ(static_cast<int>(t.o.size()), 4);
}

TEST(RunTest, NoiselessEstimatesAverageToAggregate) {
  // Without noise the estimates need not equal the aggregate one by one,
  // but their mean tracks it exactly: mean v^{k+1} = mean v^k + mean(dx).
  const Drawn s = RandomSetup(5, 2, 3);
  const Trajectory t = pmlgame::Run(
      s.game, s.f, UpdateRule::FullAveraging(5), NoiseSchedule::Zero(),
      StepSchedule::Harmonic(1, 1, 1), 30, s.x0, 1);
  for (int k = 0; k <= 30; ++k) {
    EXPECT_LT((Aggregate(t.v[k]) - Aggregate(t.x[k])).norm(), 1e-12);
  }
}

TEST(RunTest, DivergentStepsRaiseNonFinite) {
  const Drawn s = RandomSetup(2, 2, 4);
  try {
    pmlgame::Run(s.game, s.f, UpdateRule::FullAveraging(2),
                 NoiseSchedule::Polynomial(1, 0, 0),
                 StepSchedule::Harmonic(1e300, 1, 0), 50, s.x0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
}

TEST(ReplayTest, ReproducesRunBitExactly) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Drawn s = RandomSetup(2 + seed % 3, 1 + seed % 3, seed);
    const int n = s.game.n_players();
    const UpdateRule rule = seed % 2 ? UpdateRule::FullAveraging(n)
                                     : UpdateRule::CompleteConsensus(n);
    const StepSchedule steps = StepSchedule::Harmonic(1, 2, 1);
    const Trajectory t =
        pmlgame::Run(s.game, s.f, rule, NoiseSchedule::Polynomial(1, 1, 1),
                     steps, 15, s.x0, seed);
    const Replayed r = Replay(s.game, s.f, t.o, rule, steps, s.x0);
    ASSERT_EQ(r.x, t.x) << "seed " << seed;
    ASSERT_EQ(r.v, t.v) << "seed " << seed;
  }
}

TEST(ReplayTest, MatchesStraightLineOracle) {
  const Drawn s = RandomSetup(3, 2, 7);
  const StepSchedule steps = StepSchedule::Harmonic(1, 1, 1);
  const Trajectory t =
      pmlgame::Run(s.game, s.f, UpdateRule::FullAveraging(3),
                   NoiseSchedule::Polynomial(1, 1, 1), steps, 10, s.x0, 2);
  const Sequence oracle = StraightLineEstimates(s.f, t.o, steps, s.x0);
  for (int k = 0; k <= 10; ++k) {
    for (int i = 0; i < 3; ++i) {
      EXPECT_LT((oracle[k][i] - t.v[k][i]).norm(), 1e-13);
    }
  }
}

TEST(ReplayTest, HorizonZeroReturnsInitialState) {
  const Drawn s = RandomSetup(2, 2, 8);
  const Sequence o = {s.x0};
  const Replayed r = Replay(s.game, s.f, o, UpdateRule::FullAveraging(2),
                            StepSchedule::Harmonic(1, 1, 1), s.x0);
  ASSERT_EQ(r.x.size(), 1u);
  EXPECT_EQ(r.x[0], s.x0);
  EXPECT_EQ(r.v[0], s.x0);
}

TEST(ReplayTest, DifferentCostsGiveDifferentEstimates) {
  const Drawn s = RandomSetup(2, 2, 9);
  const StepSchedule steps = StepSchedule::Harmonic(1, 1, 1);
  const UpdateRule rule = UpdateRule::FullAveraging(2);
  const Trajectory t = pmlgame::Run(
      s.game, s.f, rule, NoiseSchedule::Polynomial(1, 1, 1), steps, 3, s.x0, 1);
  CostProfile g = s.f;
  Rng rng(99);
  g.entries[0] = RandomDisease(2, rng);
  const Replayed a = Replay(s.game, s.f, t.o, rule, steps, s.x0);
  const Replayed b = Replay(s.game, g, t.o, rule, steps, s.x0);
  EXPECT_NE(a.v[1][0], b.v[1][0]);
}

TEST(ReplayTest, ChangingOnePlayerLeavesOthersUntouched) {
  const Drawn s = RandomSetup(4, 2, 10);
  const StepSchedule steps = StepSchedule::Harmonic(1, 1, 1);
  const UpdateRule rule = UpdateRule::FullAveraging(4);
  const Trajectory t = pmlgame::Run(
      s.game, s.f, rule, NoiseSchedule::Polynomial(1, 1, 1), steps, 8, s.x0, 3);
  CostProfile g = s.f;
  Rng rng(5);
  g.entries[2] = RandomDisease(2, rng);
  const Replayed a = Replay(s.game, s.f, t.o, rule, steps, s.x0);
  const Replayed b = Replay(s.game, g, t.o, rule, steps, s.x0);
  for (int k = 0; k <= 8; ++k) {
    for (int j : {0, 1, 3}) {
      EXPECT_EQ(a.x[k][j], b.x[k][j]);
      EXPECT_EQ(a.v[k][j], b.v[k][j]);
    }
  }
}

TEST(LogDensityTest, ModeOfSingleTerm) {
  EXPECT_DOUBLE_EQ(LaplaceLogDensity(Vec::Zero(1), Vec::Zero(1), 1.0),
                   std::log(0.5));
}

TEST(LogDensityTest, NoiselessObservationsAtHorizonZero) {
  const Drawn s = RandomSetup(2, 1, 11);
  const Sequence o = {s.x0};
  const double ld = LogDensity(s.game, s.f, o, UpdateRule::FullAveraging(2),
                               NoiseSchedule::Polynomial(1, 0, 0),
                               StepSchedule::Harmonic(1, 1, 1), s.x0);
  EXPECT_DOUBLE_EQ(ld, 2 * std::log(0.5));
}

TEST(LogDensityTest, DoublingScaleShiftsModeDensity) {
  const Drawn s = RandomSetup(3, 2, 12);
  const StepSchedule steps = StepSchedule::Harmonic(1, 1, 1);
  const UpdateRule rule = UpdateRule::FullAveraging(3);
  const int horizon = 6;
  // Noiseless observations sit at the mode of every term.
  const Sequence o = pmlgame::Run(s.game, s.f, rule, NoiseSchedule::Zero(),
                                  steps, horizon, s.x0, 1)
                         .o;
  const double a = LogDensity(s.game, s.f, o, rule,
                              NoiseSchedule::Polynomial(1, 1, 1), steps, s.x0);
  const double b = LogDensity(s.game, s.f, o, rule,
                              NoiseSchedule::Polynomial(2, 2, 1), steps, s.x0);
  EXPECT_NEAR(a - b, (horizon + 1) * 3 * 2 * std::log(2.0), 1e-10);
}

TEST(LogDensityTest, RatioMatchesProductOracleAndSandwich) {
  Rng pick(13);
  const StepSchedule steps = StepSchedule::Harmonic(1, 1, 1);
  const NoiseSchedule noise = NoiseSchedule::Polynomial(1, 0.5, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Drawn s = RandomSetup(2 + trial % 2, 2, 1000 + trial);
    const int n = s.game.n_players();
    const UpdateRule rule = UpdateRule::FullAveraging(n);
    CostProfile g = s.f;
    g.entries[trial % n] = RandomDisease(2, pick);
    const int horizon = 1 + trial % 5;
    const Sequence o =
        pmlgame::Run(s.game, s.f, rule, noise, steps, horizon, s.x0, trial).o;
    const double log_ratio =
        LogDensity(s.game, s.f, o, rule, noise, steps, s.x0) -
        LogDensity(s.game, g, o, rule, noise, steps, s.x0);
    const Sequence v = StraightLineEstimates(s.f, o, steps, s.x0);
    const Sequence w = StraightLineEstimates(g, o, steps, s.x0);
    double q = 0.0, sandwich = 0.0;
    for (int k = 0; k <= horizon; ++k) {
      const double m = noise.Scale(k);
      for (int i = 0; i < n; ++i) {
        q -= ((o[k][i] - v[k][i]).lpNorm<1>() -
              (o[k][i] - w[k][i]).lpNorm<1>()) /
             m;
        sandwich += (v[k][i] - w[k][i]).lpNorm<1>() / m;
      }
    }
    EXPECT_NEAR(std::exp(log_ratio), std::exp(q), 1e-12 * std::exp(q))
        << "trial " << trial;
    EXPECT_LE(std::fabs(log_ratio), sandwich + 1e-12);
  }
}

TEST(RuleTest, ValidatesWeights) {
  EXPECT_THROW(UpdateRule::FullAveraging(Mat::Ones(2, 2), false).Validate(2),
               Error);
  EXPECT_NO_THROW(UpdateRule::FullAveraging(3).Validate(3));
  Mat w = Mat::Ones(3, 3) / 3.0;
  w(0, 1) = 0.5;
  EXPECT_THROW(UpdateRule::Consensus(w).Validate(3), Error);
}

}  // namespace
}  // namespace pmlgame
