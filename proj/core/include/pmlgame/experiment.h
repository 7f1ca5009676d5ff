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

#ifndef PMLGAME_EXPERIMENT_H_
#define PMLGAME_EXPERIMENT_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmlgame/config.h"
#include "pmlgame/report.h"
#include "pmlgame/separation.h"

namespace pmlgame {

// Command-line overrides applied on top of a config file.
struct CommandOptions {
  std::optional<std::string> out;
  std::optional<std::vector<std::uint64_t>> seeds;
  // "csv" or "json"; replaces output.formats.
  std::optional<std::string> format;
  int parallel = 1;
};

ExperimentConfig ApplyOverrides(ExperimentConfig cfg,
                                const CommandOptions& options);

// Reads a config file, or the config embedded in a manifest written by an
// earlier command.
ExperimentConfig LoadConfigOrManifest(const std::string& path);

// DeriveSeed(s, j) for every run seed s and j < n_samples, in that order.
std::vector<std::uint64_t> SampleSeeds(const RunSpec& run);

struct GainSeries {
  std::string label;
  NoiseSchedule noise;
  LeakageSeries leakage;
};

// One empirical-leakage series per configured noise level, all on the same
// sample seeds and prior draws.
std::vector<GainSeries> AttackSeries(const ExperimentConfig& cfg, int threads);

struct Figure2Row {
  int iteration = 0;
  double pml_bound = 0.0;
  double dp_group_bound = 0.0;
  double empirical_leakage = 0.0;
};

struct Figure2Data {
  std::vector<Figure2Row> rows;
  int n_samples = 0;
  std::uint64_t seed_hash = 0;
  int n_players = 0;
  double adjacent_epsilon = 0.0;
};

// Whole-profile view over iterations: the sampled PML bound, the adjacent
// level composed over all players, and the attack's log mean gain, all for
// the config's mechanism and prior.
Figure2Data Figure2(const ExperimentConfig& cfg, int threads);

struct Figure3Row {
  int n_players = 0;
  double pml_lower = 0.0;
  double pml_upper_dp_based = 0.0;
  double dp_group_bound = 0.0;
  double eps_max = 0.0;
  double empirical_individual = 0.0;
  // Supporting quantities, JSON only.
  double eps_o = 0.0;
  double probe_leakage = 0.0;
};

struct Figure3Data {
  std::vector<Figure3Row> rows;
  int n_samples = 0;
  std::uint64_t seed_hash = 0;
};

// Individual view over player counts for a correlated binary prior. The
// DP column is the sampled adjacent certificate (one player's level).
Figure3Data Figure3(const ExperimentConfig& cfg, int threads);

// CSV encodings. The readers check the header and every row's arity and
// fail with ConfigError otherwise.
std::string GainCsv(const std::vector<GainSeries>& series,
                    const std::vector<std::uint64_t>& seeds);
std::string Figure2Csv(const Figure2Data& data);
Figure2Data Figure2FromCsv(const std::string& text);
std::string Figure3Csv(const Figure3Data& data);
Figure3Data Figure3FromCsv(const std::string& text);

Json SeparationToJson(const SeparationResult& result);

struct CommandResult {
  std::vector<std::string> files;
};

// Each command writes into cfg.output.directory and finishes with a
// manifest holding the effective config and the files written.
CommandResult CmdRun(const ExperimentConfig& cfg);
CommandResult CmdBounds(const ExperimentConfig& cfg);
CommandResult CmdAttack(const ExperimentConfig& cfg, int threads);
CommandResult CmdFigure(const ExperimentConfig& cfg, int which, int threads);
CommandResult CmdSeparation(double eps1, double eps2, double alpha, double beta,
                            const SeparationOptions& options,
                            const std::string& directory);

}  // namespace pmlgame

#endif  // PMLGAME_EXPERIMENT_H_
