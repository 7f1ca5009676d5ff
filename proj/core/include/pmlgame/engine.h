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

#ifndef PMLGAME_ENGINE_H_
#define PMLGAME_ENGINE_H_

#include <cstdint>
#include <vector>

#include "pmlgame/game.h"
#include "pmlgame/rng.h"
#include "pmlgame/schedule.h"

namespace pmlgame {

// (T+1) profiles indexed by iteration.
using Sequence = std::vector<Profile>;

// How estimates and strategies are updated from the broadcast observations.
//
//   FullAveraging: x+ = x - lambda F(x, v)          (optionally projected)
//                  v+ = sum_j L_ij o_j + x+ - x
//   Consensus:     x+ = P[x - lambda F(x, v)]
//                  v+ = v + gamma sum_j L_ij (o_j - o_i) + x+ - x
struct UpdateRule {
  enum class Kind { kFullAveraging, kConsensus };

  // Uniform weights 1/N.
  static UpdateRule FullAveraging(int n_players, bool projected = false);
  static UpdateRule FullAveraging(Mat weights, bool projected);
  static UpdateRule Consensus(Mat weights);
  // Complete graph with unit off-diagonal weights scaled by 1/N.
  static UpdateRule CompleteConsensus(int n_players);

  void Validate(int n_players) const;

  // Coefficients c_ij such that player i's estimate update depends on the
  // observations only through sum_j c_ij o_j (up to a positive factor).
  Mat InputCoefficients() const;

  Kind kind = Kind::kFullAveraging;
  Mat weights;
  bool projected = false;
};

struct Trajectory {
  int horizon = 0;
  Sequence x;
  Sequence v;
  Sequence o;
  std::uint64_t seed = 0;
  NoiseSchedule noise;
  StepSchedule steps;
  UpdateRule rule;
};

struct Replayed {
  Sequence x;
  Sequence v;
};

// One player's replayed strategy and estimate sequences.
struct PlayerReplay {
  std::vector<Vec> x;
  std::vector<Vec> v;
};

// n independent Laplace(0, M^k) draws; zero for the Zero schedule.
Vec SampleNoise(const NoiseSchedule& noise, int k, int dim, Rng& rng);

// Seeded initial strategies: uniform on a box, flat Dirichlet on the
// simplex, uniform on [0, 1]^n when unbounded.
Profile InitialStrategies(const AggregativeGame& game, std::uint64_t seed);

Trajectory Run(const AggregativeGame& game, const CostProfile& f,
               const UpdateRule& rule, const NoiseSchedule& noise,
               const StepSchedule& steps, int horizon, const Profile& x0,
               std::uint64_t seed);

// The unique (x, v) consistent with observations o under profile f.
Replayed Replay(const AggregativeGame& game, const CostProfile& f,
                const Sequence& o, const UpdateRule& rule,
                const StepSchedule& steps, const Profile& x0);

// Player i's part of the replay. Depends on f only through f_i.
PlayerReplay ReplayPlayer(const AggregativeGame& game, const PlayerCost& fi,
                          int i, const Sequence& o, const UpdateRule& rule,
                          const StepSchedule& steps, const Vec& x0i);

// Log-density of one player's observation at one iteration given its
// estimate: sum over coordinates of -log(2M) - |o - v| / M.
double LaplaceLogDensity(const Vec& o, const Vec& v, double scale);

// log P(o | F = f), computed entirely in the log domain.
double LogDensity(const AggregativeGame& game, const CostProfile& f,
                  const Sequence& o, const UpdateRule& rule,
                  const NoiseSchedule& noise, const StepSchedule& steps,
                  const Profile& x0);

// Shape check: (T+1) x N x n.
void ValidateSequence(const AggregativeGame& game, const Sequence& s);

}  // namespace pmlgame

#endif  // PMLGAME_ENGINE_H_
