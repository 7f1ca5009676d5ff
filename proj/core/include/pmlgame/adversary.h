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

#ifndef PMLGAME_ADVERSARY_H_
#define PMLGAME_ADVERSARY_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "pmlgame/engine.h"
#include "pmlgame/prior.h"

namespace pmlgame {

// Guessed disease-cost parameters and the dummy strategies the attacker
// simulates alongside the observed run.
struct AdversaryState {
  std::vector<Vec> a_hat;
  std::vector<Mat> b_hat;
  std::vector<Vec> x_hat;
  double nu = 0.01;
  int iteration = 0;
};

struct AttackOptions {
  double nu = 0.01;
  // Gradient steps per observed iteration.
  int inner_epochs = 1;
  // Include the (1/N) b (1 - x) term of the pseudo-gradient.
  bool chain_rule = true;
  // After each new observation, sweep this many times over every pair
  // observed so far, re-simulating x_hat from o^0. Zero is the plain online
  // attack.
  int replay_passes = 0;
  // Cap each player's step at 1/L, where L bounds the curvature of that
  // player's loss term. Plain gradient descent whenever nu is already small
  // enough; keeps the update stable when observations are large.
  bool safeguard = false;
  // Scale each pair's step by 1 / (M^{k+1})^2, the inverse noise variance of
  // the observation being matched. The schedule is public, so an attacker
  // can weight early, cleaner pairs more. Ignored for the zero schedule.
  bool noise_weighting = false;
  NoiseSchedule noise;
  // Halvings of nu allowed after a divergent attack.
  int max_retries = 5;
};

// a_hat and b_hat standard normal from the seed; x_hat = o^0.
AdversaryState InitAdversary(const Profile& o0, std::uint64_t seed,
                             double nu = 0.01);

// sum_i || mean_j o_j^k - lambda^k Fhat_i(x_hat_i, o_i^k) - o_i^{k+1} ||^2,
// the distance between the simulated estimate update and what player i
// broadcast next.
double AttackLoss(const AdversaryState& s, const Profile& ok,
                  const Profile& ok1, const StepSchedule& steps, int k,
                  bool chain_rule = true);

struct AttackGradient {
  std::vector<Vec> a;
  std::vector<Mat> b;
};

AttackGradient AttackLossGradient(const AdversaryState& s, const Profile& ok,
                                  const Profile& ok1, const StepSchedule& steps,
                                  int k, bool chain_rule = true);

// inner_epochs gradient steps on (a_hat, b_hat), then x_hat advances by the
// simulated strategy update under the new parameters.
AdversaryState AttackStep(const AdversaryState& s, const Profile& ok,
                          const Profile& ok1, const StepSchedule& steps, int k,
                          const AttackOptions& options = {});

// Parameter vector: every player's a, then every player's b column by
// column.
Vec FlattenTheta(const std::vector<Vec>& a, const std::vector<Mat>& b);
Vec ThetaOf(const CostProfile& f);
Vec ThetaOf(const AdversaryState& s);
// a_i followed by b_i column by column.
Vec PlayerTheta(const std::vector<Vec>& a, const std::vector<Mat>& b, int i);

struct AttackResult {
  // Estimate after observing iterations 0..k, k = 0..T.
  std::vector<Vec> theta_hat;
  std::vector<Vec> player0_theta_hat;
  double effective_nu = 0.0;
  int retries = 0;
};

AttackResult RunAttack(const Sequence& o, const StepSchedule& steps,
                       int horizon, std::uint64_t seed,
                       const AttackOptions& options = {});

// cos(theta, theta_hat) + 1.
double Gain(const Vec& theta, const Vec& theta_hat);

struct LeakageSeries {
  // Index k is the mean gain after k observed update steps. Entry 0 is the
  // uninformed baseline: an isotropic random guess has expected cosine 0,
  // so the expected gain is exactly 1.
  std::vector<double> mean_gain;
  std::vector<double> log_mean_gain;
  std::vector<double> mean_gain_player0;
  std::vector<double> log_mean_gain_player0;
  std::vector<std::uint64_t> seeds;
  double min_effective_nu = 0.0;
};

struct LeakageConfig {
  int horizon = 200;
  int n_samples = 100;
  std::uint64_t seed = 1;
  AttackOptions attack;
  int threads = 1;
  // When non-empty, one sample per listed seed; seed and n_samples are
  // ignored.
  std::vector<std::uint64_t> sample_seeds;
  // Shared initial strategies; drawn per sample when unset.
  std::optional<Profile> x0;
};

// Draws profiles from the prior, runs the algorithm from seeded initial
// strategies, attacks each run and averages the gains per iteration.
LeakageSeries EmpiricalLeakage(const AggregativeGame& game,
                               const DiscretePrior& prior,
                               const UpdateRule& rule,
                               const NoiseSchedule& noise,
                               const StepSchedule& steps,
                               const LeakageConfig& config);

}  // namespace pmlgame

#endif  // PMLGAME_ADVERSARY_H_
