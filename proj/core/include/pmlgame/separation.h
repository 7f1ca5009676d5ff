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

#ifndef PMLGAME_SEPARATION_H_
#define PMLGAME_SEPARATION_H_

#include <vector>

#include "pmlgame/density_table.h"
#include "pmlgame/prior.h"

namespace pmlgame {

struct SeparationOptions {
  // Geometric schedules lambda^k = c q^k and M^k = d qbar^k.
  double c = 1.0;
  double q = 0.5;
  double d = 1.0;
  double qbar = 0.75;
  // Horizon of the constructed runs; -1 picks the longest horizon the
  // geometric DP formula still covers.
  int horizon = -1;
  int min_players = 2;
  int max_players = kMaxCorrelatedPlayers;
};

struct SeparationResult {
  CorrelatedBinarySpec spec;
  SeparationOptions options;
  int horizon = 0;
  int n_players = 0;
  // Gradient bound C chosen so that the geometric DP formula gives eps1.
  double c_grad = 0.0;
  double dp_bound = 0.0;
  // Exact adjacent level over the run horizon (never above dp_bound).
  double dp_at_horizon = 0.0;
  // Player 0's leakage at the equal-observation witness, in nats.
  double individual_pml = 0.0;
  double eps_o = 0.0;
  // Envelopes at n_players, exp scale.
  double lower_envelope = 0.0;
  double upper_envelope = 0.0;
  Sequence witness;
  // Individual leakage for every player count tried, starting at
  // min_players.
  std::vector<double> sweep;
};

// Mechanism of the constructed instance at n_players.
Mechanism SeparationMechanism(const SeparationOptions& options, int horizon,
                              int n_players);

// Builds a correlated binary instance that is eps1-DP for every N yet leaks
// at least eps2 nats about player 0 at some observation. The game is a
// one-dimensional linear cost a = +-C. Fails with InfeasibleTarget when eps2
// is not below log(1/alpha) and with NotReached when no N up to
// max_players suffices.
SeparationResult ConstructSeparation(double eps1, double eps2, double alpha,
                                     double beta,
                                     const SeparationOptions& options = {});

}  // namespace pmlgame

#endif  // PMLGAME_SEPARATION_H_
