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

#include "pmlgame/density_table.h"

#include <cmath>

#include "pmlgame/error.h"

namespace pmlgame {

void Mechanism::Validate() const {
  rule.Validate(game.n_players());
  noise.Validate();
  steps.Validate();
  Check(horizon >= 0, ErrorCode::kInvalidInput, "horizon must be >= 0");
  game.ValidateStrategies(x0);
  for (int i = 0; i < game.n_players(); ++i) {
    Check(game.constraint(i).Contains(x0[i], 1e-9), ErrorCode::kInvalidInput,
          "initial strategy lies outside its constraint set");
  }
}

DensityTable::DensityTable(const Mechanism& mech, const DiscretePrior& prior,
                           const Sequence& o)
    : n_players_(mech.game.n_players()),
      horizon_(static_cast<int>(o.size()) - 1),
      o_(o) {
  Check(!mech.noise.is_zero(), ErrorCode::kInvalidSchedule,
        "observation densities need a nonzero noise schedule");
  Check(prior.n_players() == n_players_, ErrorCode::kInvalidInput,
        "prior player count does not match the game");
  ValidateSequence(mech.game, o_);
  scale_.resize(horizon_ + 1);
  for (int k = 0; k <= horizon_; ++k) scale_[k] = mech.noise.Scale(k);

  entries_.resize(n_players_);
  slot_.assign(n_players_, std::vector<int>(prior.pool().size(), -1));
  cum_log_.resize(n_players_);
  v_.resize(n_players_);
  for (int i = 0; i < n_players_; ++i) {
    entries_[i] = prior.EntriesAt(i);
    for (std::size_t s = 0; s < entries_[i].size(); ++s) {
      const int e = entries_[i][s];
      slot_[i][e] = static_cast<int>(s);
      PlayerReplay r = ReplayPlayer(mech.game, prior.entry(e), i, o_, mech.rule,
                                    mech.steps, mech.x0[i]);
      std::vector<double> cum(horizon_ + 1);
      double acc = 0.0;
      for (int k = 0; k <= horizon_; ++k) {
        acc += LaplaceLogDensity(o_[k][i], r.v[k], scale_[k]);
        cum[k] = acc;
      }
      Check(std::isfinite(acc), ErrorCode::kNonFinite,
            "log-density is not finite");
      cum_log_[i].push_back(std::move(cum));
      v_[i].push_back(std::move(r.v));
    }
  }
}

double DensityTable::PlayerLog(int i, int slot, int t) const {
  return cum_log_[i][slot][t];
}

double DensityTable::LogDensity(const DiscretePrior& prior, std::size_t s,
                                int t) const {
  double total = 0.0;
  for (int i = 0; i < n_players_; ++i) {
    total += cum_log_[i][slot_[i][prior.entry_index(s, i)]][t];
  }
  return total;
}

double DensityTable::StepDistance(int i, int slot_a, int slot_b, int k) const {
  if (slot_a == slot_b) return 0.0;
  return (v_[i][slot_a][k] - v_[i][slot_b][k]).cwiseAbs().sum();
}

double DensityTable::ScaledDistance(int i, int slot_a, int slot_b,
                                    int t) const {
  if (slot_a == slot_b) return 0.0;
  double total = 0.0;
  for (int k = 0; k <= t; ++k) {
    total += StepDistance(i, slot_a, slot_b, k) / scale_[k];
  }
  return total;
}

}  // namespace pmlgame
