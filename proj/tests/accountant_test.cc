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

#include "pmlgame/accountant.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "pmlgame/error.h"
#include "support/instances.h"

namespace pmlgame {
namespace {

using testing::BinaryInstance;
using testing::BinaryKind;
using testing::Instance;
using testing::LinearCorrelatedInstance;
using testing::SoundnessInstances;

double FullLogDensity(const Mechanism& m, const CostProfile& f,
                      const Sequence& o) {
  return LogDensity(m.game, f, o, m.rule, m.noise, m.steps, m.x0);
}

double OracleLogSumExp(const std::vector<double>& v) {
  const double top = *std::max_element(v.begin(), v.end());
  double s = 0.0;
  for (double x : v) s += std::exp(x - top);
  return top + std::log(s);
}

// log sup_f P(o|f) / P(o) from full-profile densities.
double OracleExactPml(const Instance& in, const Sequence& o) {
  std::vector<double> joint, cond;
  for (std::size_t s = 0; s < in.prior.size(); ++s) {
    const double l = FullLogDensity(in.mech, in.prior.profile(s), o);
    cond.push_back(l);
    joint.push_back(in.prior.log_probability(s) + l);
  }
  return *std::max_element(cond.begin(), cond.end()) - OracleLogSumExp(joint);
}

double OracleIndividualPml(const Instance& in, int i, const Sequence& o) {
  std::vector<double> all;
  std::map<int, std::vector<double>> by_entry;
  std::map<int, std::vector<double>> prior_by_entry;
  for (std::size_t s = 0; s < in.prior.size(); ++s) {
    const double lp = in.prior.log_probability(s);
    const double j = lp + FullLogDensity(in.mech, in.prior.profile(s), o);
    all.push_back(j);
    by_entry[in.prior.entry_index(s, i)].push_back(j);
    prior_by_entry[in.prior.entry_index(s, i)].push_back(lp);
  }
  double best = -INFINITY;
  for (const auto& [e, js] : by_entry) {
    best = std::max(best,
                    OracleLogSumExp(js) - OracleLogSumExp(prior_by_entry[e]));
  }
  return best - OracleLogSumExp(all);
}

// Largest |log ratio| over support pairs differing in one player.
double OracleAdjacent(const Instance& in, const Sequence& o) {
  double worst = 0.0;
  for (std::size_t s = 0; s < in.prior.size(); ++s) {
    for (std::size_t t = s + 1; t < in.prior.size(); ++t) {
      const CostProfile f = in.prior.profile(s), g = in.prior.profile(t);
      if (Hamming(f, g) != 1) continue;
      worst = std::max(worst, std::fabs(FullLogDensity(in.mech, f, o) -
                                        FullLogDensity(in.mech, g, o)));
    }
  }
  return worst;
}

SamplerConfig Sampler(int runs, int probes) {
  SamplerConfig cfg;
  cfg.n_runs = runs;
  cfg.probes_per_run = probes;
  return cfg;
}

TEST(AccountantTest, PointMassLeaksNothing) {
  const Instance in = BinaryInstance(2, 3, 0.3, BinaryKind::kIndependent, 1);
  const DiscretePrior point = DiscretePrior::PointMass(in.prior.profile(0));
  const auto samples = SampleObservations(in.mech, point, Sampler(10, 2));
  const PmlBounds b = ComputeBounds(in.mech, point, samples);
  EXPECT_EQ(b.expectation.epsilon, 0.0);
  EXPECT_EQ(b.per_profile.epsilon, 0.0);
  EXPECT_EQ(b.uniform.epsilon, 0.0);
  for (const auto& s : samples) {
    EXPECT_EQ(ExactPml(in.mech, point, s.o), 0.0);
  }
}

TEST(AccountantTest, SensitivityVanishesAtStart) {
  const Instance in = BinaryInstance(3, 4, 0.3, BinaryKind::kIndependent, 2);
  const auto samples = SampleObservations(in.mech, in.prior, Sampler(2, 0));
  const CostProfile f = in.prior.profile(0);
  const CostProfile g = in.prior.profile(in.prior.size() - 1);
  EXPECT_EQ(Sensitivity(in.mech, f, g, samples[0].o, 0), 0.0);
  EXPECT_GT(Sensitivity(in.mech, f, g, samples[0].o, 1), 0.0);
  EXPECT_EQ(Sensitivity(in.mech, f, f, samples[0].o, 3), 0.0);
}

TEST(AccountantTest, ExactLeakageMatchesOracle) {
  for (const Instance& in : SoundnessInstances()) {
    const auto samples = SampleObservations(in.mech, in.prior, Sampler(6, 2));
    for (const auto& s : samples) {
      if (s.kind == ObservationSample::Kind::kMatchedProbe) continue;
      EXPECT_NEAR(ExactPml(in.mech, in.prior, s.o), OracleExactPml(in, s.o),
                  1e-9)
          << in.name;
      for (int i = 0; i < in.prior.n_players(); ++i) {
        EXPECT_NEAR(ExactPmlIndividual(in.mech, in.prior, i, s.o),
                    OracleIndividualPml(in, i, s.o), 1e-9)
            << in.name;
      }
      const DensityTable table(in.mech, in.prior, s.o);
      EXPECT_NEAR(AdjacentLogRatio(table, in.mech.horizon),
                  OracleAdjacent(in, s.o), 1e-9)
          << in.name;
    }
  }
}

TEST(AccountantTest, BoundsCoverExactLeakageAndAreOrdered) {
  for (const Instance& in : SoundnessInstances()) {
    const auto samples = SampleObservations(in.mech, in.prior, Sampler(40, 2));
    const PmlBounds b = ComputeBounds(in.mech, in.prior, samples);
    EXPECT_LE(b.expectation.epsilon, b.per_profile.epsilon + 1e-12) << in.name;
    EXPECT_LE(b.per_profile.epsilon, b.uniform.epsilon + 1e-12) << in.name;
    EXPECT_LE(b.expectation.epsilon, b.group_dp + 1e-9) << in.name;
    EXPECT_DOUBLE_EQ(b.group_dp, in.prior.n_players() * b.adjacent.epsilon);
    for (std::size_t t = 0; t + 1 < b.expectation.series.size(); ++t) {
      EXPECT_LE(b.expectation.series[t], b.expectation.series[t + 1] + 1e-12);
    }
    for (const auto& s : samples) {
      if (s.kind == ObservationSample::Kind::kMatchedProbe) continue;
      const double exact = ExactPml(in.mech, in.prior, s.o);
      EXPECT_GE(exact, 0.0);
      EXPECT_LE(exact, b.expectation.epsilon + 1e-9) << in.name << " " << s.id;
      double cap = 0.0;
      for (double p : in.prior.probabilities())
        cap = std::max(cap, -std::log(p));
      EXPECT_LE(exact, cap + 1e-12);
      for (int i = 0; i < in.prior.n_players(); ++i) {
        const double ind = ExactPmlIndividual(in.mech, in.prior, i, s.o);
        EXPECT_GE(ind, -1e-12);
        EXPECT_LE(ind, EpsilonMax(in.prior, i) + 1e-12);
        EXPECT_LE(ind, exact + 1e-9);
      }
      const DensityTable table(in.mech, in.prior, s.o);
      EXPECT_LE(AdjacentLogRatio(table, in.mech.horizon),
                b.adjacent.epsilon + 1e-12);
    }
  }
}

TEST(AccountantTest, EpsilonOIsForBinarySupports) {
  const Instance ind = BinaryInstance(2, 2, 0.3, BinaryKind::kIndependent, 5);
  const Sequence o = EqualObservationProbe(ind.mech, ind.prior, 0);
  EXPECT_THROW(EpsilonO(ind.mech, ind.prior, o), Error);
  const Instance cor = BinaryInstance(2, 2, 0.3, BinaryKind::kCorrelated, 5);
  const Sequence p = EqualObservationProbe(cor.mech, cor.prior, 0);
  EXPECT_NEAR(EpsilonO(cor.mech, cor.prior, p), OracleAdjacent(cor, p), 1e-9);
}

TEST(AccountantTest, TwoStepNeighboursComposeAdjacentLevel) {
  const Instance in = BinaryInstance(3, 4, 0.3, BinaryKind::kCorrelated, 3);
  const auto samples = SampleObservations(in.mech, in.prior, Sampler(8, 2));
  for (const auto& s : samples) {
    const DensityTable table(in.mech, in.prior, s.o);
    const double adj = AdjacentLogRatio(table, in.mech.horizon);
    for (std::size_t a = 0; a < in.prior.size(); ++a) {
      for (std::size_t c = 0; c < in.prior.size(); ++c) {
        const CostProfile f = in.prior.profile(a), g = in.prior.profile(c);
        if (Hamming(f, g) != 2) continue;
        EXPECT_LE(std::fabs(FullLogDensity(in.mech, f, s.o) -
                            FullLogDensity(in.mech, g, s.o)),
                  2 * adj + 1e-9);
      }
    }
  }
}

TEST(AccountantTest, MatchedProbesAttainSensitivity) {
  const Instance in = LinearCorrelatedInstance(3, 1.0, 0.25, 0.5);
  SamplerConfig cfg = Sampler(20, 2);
  const auto samples = SampleObservations(in.mech, in.prior, cfg);
  const BoundEstimate adj = AdjacentEpsilon(in.mech, in.prior, samples);
  const double exact_level = DpBoundGeometricAtHorizon(
      in.prior.entry(0).disease().a[0], 1, 0.5, 1, 0.75, in.mech.horizon);
  EXPECT_LE(adj.epsilon, exact_level + 1e-9);
  EXPECT_GE(adj.epsilon, exact_level - 1e-9);
  const BoundEstimate plain =
      AdjacentEpsilon(in.mech, in.prior, samples, false);
  EXPECT_LE(plain.epsilon, adj.epsilon + 1e-12);
}

TEST(DpFormulaTest, GeometricLevels) {
  EXPECT_DOUBLE_EQ(DpBoundGeometric(1, 1, 0.5, 1, 0.75), 6.0);
  EXPECT_EQ(DpBoundGeometric(0, 1, 0.5, 1, 0.75), 0.0);
  EXPECT_DOUBLE_EQ(DpBoundGeometric(1, 1, 0.5, 2, 0.75), 3.0);
  EXPECT_DOUBLE_EQ(DpBoundGeometric(2, 3, 0.5, 1, 0.75), 36.0);
  EXPECT_THROW(DpBoundGeometric(1, 1, 0.75, 1, 0.5), Error);
  EXPECT_THROW(DpBoundGeometric(-1, 1, 0.5, 1, 0.75), Error);
}

TEST(DpFormulaTest, HorizonCoverage) {
  EXPECT_EQ(GeometricDpHorizon(0.5, 0.75), 3);
  EXPECT_LE(DpBoundGeometricAtHorizon(1, 1, 0.5, 1, 0.75, 3), 6.0);
  EXPECT_GT(DpBoundGeometricAtHorizon(1, 1, 0.5, 1, 0.75, 4), 6.0);
  EXPECT_NEAR(DpBoundGeometricAtHorizon(1, 1, 0.5, 1, 0.75, 200), 8.0, 1e-12);
  EXPECT_EQ(DpBoundGeometricAtHorizon(1, 1, 0.5, 1, 0.75, 0), 0.0);
  for (double q : {0.1, 0.3, 0.5, 0.7}) {
    for (double qbar : {0.75, 0.9, 0.99}) {
      if (q >= qbar) continue;
      const int t = GeometricDpHorizon(q, qbar);
      EXPECT_LE(DpBoundGeometricAtHorizon(1, 1, q, 1, qbar, t),
                DpBoundGeometric(1, 1, q, 1, qbar) + 1e-12);
      EXPECT_GT(DpBoundGeometricAtHorizon(1, 1, q, 1, qbar, t + 1),
                DpBoundGeometric(1, 1, q, 1, qbar));
    }
  }
}

TEST(DpFormulaTest, AnalyticUniformBound) {
  const StepSchedule steps = StepSchedule::Geometric(1, 0.5);
  const NoiseSchedule noise = NoiseSchedule::Geometric(1, 0.75);
  EXPECT_NEAR(PmlBoundUniformAnalytic(1, 2, steps, noise, -1), 16.0, 1e-12);
  EXPECT_NEAR(PmlBoundUniformAnalytic(1, 2, steps, noise, 1), 4.0 / 0.75,
              1e-12);
  EXPECT_EQ(PmlBoundUniformAnalytic(0, 2, steps, noise, -1), 0.0);
  EXPECT_THROW(
      PmlBoundUniformAnalytic(1, 2, StepSchedule::Harmonic(1, 1, 1), noise, -1),
      Error);
}

TEST(DpFormulaTest, GroupComposition) {
  EXPECT_DOUBLE_EQ(GroupDpBound(0.3, 7), 2.1);
  EXPECT_THROW(GroupDpBound(-1, 2), Error);
  EXPECT_THROW(GroupDpBound(1, 0), Error);
}

TEST(LogSumExpTest, StableForLargeMagnitudes) {
  EXPECT_NEAR(LogSumExp({-1000, -1000}), -1000 + std::log(2.0), 1e-12);
  EXPECT_NEAR(LogSumExp({1000, 0}), 1000, 1e-12);
}

}  // namespace
}  // namespace pmlgame
