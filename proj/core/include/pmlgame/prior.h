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

#ifndef PMLGAME_PRIOR_H_
#define PMLGAME_PRIOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pmlgame/game.h"
#include "pmlgame/rng.h"

namespace pmlgame {

// Finite-support distribution over cost profiles. Distinct player costs are
// stored once in a pool; a support element is a row of pool indices. The
// pool index doubles as the entry id, so profiles compare by id.
class DiscretePrior {
 public:
  static constexpr int kMaxPoolSize = 65535;

  DiscretePrior(int n_players, std::vector<PlayerCost> pool,
                std::vector<std::uint16_t> rows, std::vector<double> probs);

  static DiscretePrior FromProfiles(const std::vector<CostProfile>& profiles,
                                    const std::vector<double>& probs);
  static DiscretePrior PointMass(const CostProfile& f);
  // Independent players, each with its own finite marginal.
  static DiscretePrior IndependentProduct(
      const std::vector<std::vector<std::pair<PlayerCost, double>>>& marginals);

  int n_players() const { return n_players_; }
  std::size_t size() const { return probs_.size(); }
  double probability(std::size_t s) const { return probs_[s]; }
  double log_probability(std::size_t s) const { return log_probs_[s]; }
  const std::vector<double>& probabilities() const { return probs_; }

  int entry_index(std::size_t s, int i) const {
    return rows_[s * static_cast<std::size_t>(n_players_) + i];
  }
  const PlayerCost& entry(int pool_index) const { return pool_[pool_index]; }
  const std::vector<PlayerCost>& pool() const { return pool_; }

  CostProfile profile(std::size_t s) const;
  std::string profile_id(std::size_t s) const;

  // Support position of the profile with the given entry indices.
  std::optional<std::size_t> Find(const std::vector<int>& entries) const;

  // Pool indices appearing at player i, in order of first appearance.
  std::vector<int> EntriesAt(int i) const;

  // Marginal of player i as (pool index, mass), first-appearance order.
  std::vector<std::pair<int, double>> Marginal(int i) const;

  std::size_t Sample(Rng& rng) const;

  void ValidateFor(const AggregativeGame& game) const;

 private:
  std::uint64_t RowKey(const int* entries) const;

  int n_players_;
  std::vector<PlayerCost> pool_;
  std::vector<std::uint16_t> rows_;
  std::vector<double> probs_;
  std::vector<double> log_probs_;
  mutable std::unordered_multimap<std::uint64_t, std::size_t> index_;
};

// Two-valued prior where the other players tend to share player 0's cost.
// P(F_0 = f0) = alpha. Given F_0 = f1 the others are all f1 with mass beta
// and every other pattern has mass (1-beta)/(2^(N-1)-1); given F_0 = f0 the
// roles of f0 and f1 are mirrored.
struct CorrelatedBinarySpec {
  double alpha = 0.25;
  double beta = 0.5;
  PlayerCost f0;
  PlayerCost f1;
  int n_players = 2;
};

inline constexpr int kMaxCorrelatedPlayers = 20;

DiscretePrior CorrelatedPrior(const CorrelatedBinarySpec& spec);

// log(1 / smallest positive marginal mass of F_i).
double EpsilonMax(const DiscretePrior& prior, int i);

int Hamming(const CostProfile& f, const CostProfile& g);

}  // namespace pmlgame

#endif  // PMLGAME_PRIOR_H_
