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

#ifndef PMLGAME_CONFIG_H_
#define PMLGAME_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmlgame/accountant.h"
#include "pmlgame/adversary.h"
#include "pmlgame/density_table.h"
#include "pmlgame/prior.h"
#include "pmlgame/serialization.h"

namespace pmlgame {

struct GameSpec {
  CostFamily family = CostFamily::kDisease;
  int n_players = 2;
  int dim = 2;
  // Family default when unset.
  std::optional<ConstraintSet> constraint;
};

// Disease candidates with every entry of a and b uniform on [low, high].
// Draw order: player, candidate, then a followed by b column by column.
struct RandomCandidates {
  int candidates = 2;
  double low = 0.0;
  double high = 1.0;
  std::uint64_t seed = 1;
  // One candidate list for all players instead of one per player.
  bool shared = false;
};

struct PriorSpec {
  enum class Kind { kPointMass, kIndependentProduct, kCorrelatedBinary };
  Kind kind = Kind::kPointMass;
  // kPointMass.
  std::vector<PlayerCost> profile;
  // kIndependentProduct: one marginal per player, or a single marginal
  // shared by all players. Empty when `random` is set.
  std::vector<std::vector<std::pair<PlayerCost, double>>> marginals;
  std::optional<RandomCandidates> random;
  // kCorrelatedBinary.
  double alpha = 0.25;
  double beta = 0.5;
  std::optional<PlayerCost> f0;
  std::optional<PlayerCost> f1;
};

struct InitialSpec {
  enum class Kind { kRandom, kConstant, kExplicit };
  Kind kind = Kind::kRandom;
  std::uint64_t seed = 1;
  Vec value;
  Profile profile;
};

struct RunSpec {
  int horizon = 10;
  std::vector<std::uint64_t> seeds = {1};
  int n_samples = 1;
  InitialSpec x0;
};

struct BoundsSpec {
  SamplerConfig sampler;
  bool exact = true;
  std::vector<int> individual_players = {0};
  std::optional<double> gradient_bound;
};

struct NoiseLevel {
  std::string label;
  NoiseSchedule noise;
};

struct FiguresSpec {
  std::vector<NoiseLevel> noise_levels;
  // Player counts swept by the individual-view figure.
  int min_players = 2;
  int max_players = kMaxCorrelatedPlayers;
};

struct OutputSpec {
  std::string directory = "out";
  std::vector<std::string> formats = {"csv", "json"};
};

struct ExperimentConfig {
  std::string name;
  GameSpec game;
  PriorSpec prior;
  // Kept unresolved because uniform weights depend on the player count.
  Json rule = Json{{"kind", "full_averaging"}};
  NoiseSchedule noise;
  StepSchedule steps;
  RunSpec run;
  AttackOptions attack;
  BoundsSpec bounds;
  FiguresSpec figures;
  OutputSpec output;
};

// noiseless, low, medium, high: M^k = 0, 1 + 0.5k, 1 + k, 1 + 1.5k.
std::vector<NoiseLevel> DefaultNoiseLevels();

// Parses and validates a config. Every failure is a ConfigError whose
// message starts with the dotted path of the offending field; unknown keys
// are rejected.
ExperimentConfig ParseConfig(const Json& j);
ExperimentConfig LoadConfig(const std::string& path);
// Effective config, accepted back by ParseConfig unchanged.
Json ConfigToJson(const ExperimentConfig& cfg);

// Builders. n_players < 0 takes the game block's count.
AggregativeGame BuildGame(const ExperimentConfig& cfg, int n_players = -1);
DiscretePrior BuildPrior(const ExperimentConfig& cfg,
                         const AggregativeGame& game);
UpdateRule BuildRule(const ExperimentConfig& cfg, int n_players);
Profile BuildInitial(const ExperimentConfig& cfg, const AggregativeGame& game);
Mechanism BuildMechanism(const ExperimentConfig& cfg, int n_players = -1);

}  // namespace pmlgame

#endif  // PMLGAME_CONFIG_H_
