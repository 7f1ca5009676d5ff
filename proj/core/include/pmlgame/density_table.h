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

#ifndef PMLGAME_DENSITY_TABLE_H_
#define PMLGAME_DENSITY_TABLE_H_

#include <vector>

#include "pmlgame/engine.h"
#include "pmlgame/prior.h"

namespace pmlgame {

// Everything about the mechanism except the secret cost profile.
struct Mechanism {
  AggregativeGame game;
  UpdateRule rule;
  NoiseSchedule noise;
  StepSchedule steps;
  int horizon = 1;
  Profile x0;

  void Validate() const;
};

// Per-player replays of one observation sequence under every cost a player
// can hold in the prior. Player i's estimates depend on the profile only
// through f_i, so log P(o | f) = sum_i ell_i(f_i) and every sensitivity is a
// sum of per-player terms. Building the table costs one replay per
// (player, distinct entry) instead of one full replay per support profile.
class DensityTable {
 public:
  DensityTable(const Mechanism& mech, const DiscretePrior& prior,
               const Sequence& o);

  int n_players() const { return n_players_; }
  int horizon() const { return horizon_; }
  const Sequence& observations() const { return o_; }

  // Pool indices of the entries player i can hold.
  const std::vector<int>& entries(int i) const { return entries_[i]; }
  // Position of a pool index inside entries(i).
  int slot(int i, int pool_index) const { return slot_[i][pool_index]; }

  // Sum over k <= t of player i's Laplace log-density terms for a slot.
  double PlayerLog(int i, int slot, int t) const;
  // Same for the full horizon.
  double PlayerLog(int i, int slot) const {
    return PlayerLog(i, slot, horizon_);
  }
  // log P(o^{0..t} | F = support element s).
  double LogDensity(const DiscretePrior& prior, std::size_t s, int t) const;
  double LogDensity(const DiscretePrior& prior, std::size_t s) const {
    return LogDensity(prior, s, horizon_);
  }

  const std::vector<Vec>& Estimates(int i, int slot) const {
    return v_[i][slot];
  }
  // ||v_i^k(a) - v_i^k(b)||_1.
  double StepDistance(int i, int slot_a, int slot_b, int k) const;
  // sum_{k <= t} ||v_i^k(a) - v_i^k(b)||_1 / M^k.
  double ScaledDistance(int i, int slot_a, int slot_b, int t) const;

 private:
  int n_players_;
  int horizon_;
  Sequence o_;
  std::vector<double> scale_;
  std::vector<std::vector<int>> entries_;
  std::vector<std::vector<int>> slot_;
  // [player][slot][k] cumulative log-density over iterations 0..k.
  std::vector<std::vector<std::vector<double>>> cum_log_;
  std::vector<std::vector<std::vector<Vec>>> v_;
};

}  // namespace pmlgame

#endif  // PMLGAME_DENSITY_TABLE_H_
