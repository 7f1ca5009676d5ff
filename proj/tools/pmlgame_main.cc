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

// pmlgame: run trajectories, compute privacy bounds, run attacks and emit
// figure data from declarative experiment configs.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pmlgame/error.h"
#include "pmlgame/experiment.h"

namespace {

// "1,2,5-8" -> 1 2 5 6 7 8.
std::vector<std::uint64_t> ParseSeedList(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    pos = comma + 1;
    if (item.empty()) continue;
    const std::size_t dash = item.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoull(item));
      } else {
        const std::uint64_t lo = std::stoull(item.substr(0, dash));
        const std::uint64_t hi = std::stoull(item.substr(dash + 1));
        pmlgame::Check(lo <= hi && hi - lo < 1000000,
                       pmlgame::ErrorCode::kConfigError,
                       "--seeds: bad range '" + item + "'");
        for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::logic_error&) {
      pmlgame::Fail(pmlgame::ErrorCode::kConfigError,
                    "--seeds: '" + item + "' is not a seed");
    }
  }
  pmlgame::Check(!out.empty(), pmlgame::ErrorCode::kConfigError,
                 "--seeds: at least one seed is required");
  return out;
}

struct Common {
  std::string config;
  std::string out;
  std::string seeds;
  std::string format;
  int parallel = 1;
};

void AddCommon(CLI::App* cmd, Common* c) {
  cmd->add_option("--config", c->config, "Experiment config (or manifest)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", c->out, "Output directory");
  cmd->add_option("--seeds", c->seeds, "Seed list, e.g. 1,2,10-20");
  cmd->add_option("--format", c->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--parallel", c->parallel, "Worker threads")
      ->check(CLI::PositiveNumber);
}

pmlgame::ExperimentConfig Resolve(const Common& c) {
  pmlgame::CommandOptions options;
  if (!c.out.empty()) options.out = c.out;
  if (!c.seeds.empty()) options.seeds = ParseSeedList(c.seeds);
  if (!c.format.empty()) options.format = c.format;
  options.parallel = c.parallel;
  return pmlgame::ApplyOverrides(pmlgame::LoadConfigOrManifest(c.config),
                                 options);
}

void Report(const pmlgame::CommandResult& r) {
  for (const std::string& f : r.files) std::cout << f << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy accounting and attacks for distributed NE seeking"};
  app.require_subcommand(1);

  Common run_opts, bounds_opts, attack_opts, figure_opts;
  CLI::App* run = app.add_subcommand("run", "Simulate and save trajectories");
  AddCommon(run, &run_opts);
  CLI::App* bounds = app.add_subcommand("bounds", "Compute the privacy report");
  AddCommon(bounds, &bounds_opts);
  CLI::App* attack =
      app.add_subcommand("attack", "Gain series per noise level");
  AddCommon(attack, &attack_opts);
  CLI::App* figure = app.add_subcommand("figure", "Emit figure data");
  int which = 1;
  figure->add_option("which", which, "Figure number")
      ->required()
      ->check(CLI::Range(1, 3));
  AddCommon(figure, &figure_opts);

  CLI::App* separation = app.add_subcommand(
      "separation", "Construct a DP-safe instance that leaks in PML");
  double eps1 = 0.5, eps2 = 1.0, alpha = 0.25, beta = 0.5;
  pmlgame::SeparationOptions sep;
  std::string sep_out = "out";
  separation->add_option("--eps1", eps1, "Adjacent DP level")->required();
  separation->add_option("--eps2", eps2, "Target individual leakage")
      ->required();
  separation->add_option("--alpha", alpha, "Smaller marginal mass");
  separation->add_option("--beta", beta, "Mass on the all-equal pattern");
  separation->add_option("--c", sep.c, "Step scale c");
  separation->add_option("--q", sep.q, "Step ratio q");
  separation->add_option("--d", sep.d, "Noise scale d");
  separation->add_option("--qbar", sep.qbar, "Noise ratio qbar");
  separation->add_option("--horizon", sep.horizon,
                         "Run horizon; -1 picks the longest covered one");
  separation->add_option("--max-players", sep.max_players,
                         "Largest player count tried");
  separation->add_option("--out", sep_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      Report(pmlgame::CmdRun(Resolve(run_opts)));
    } else if (*bounds) {
      Report(pmlgame::CmdBounds(Resolve(bounds_opts)));
    } else if (*attack) {
      Report(pmlgame::CmdAttack(Resolve(attack_opts), attack_opts.parallel));
    } else if (*figure) {
      Report(pmlgame::CmdFigure(Resolve(figure_opts), which,
                                figure_opts.parallel));
    } else if (*separation) {
      Report(pmlgame::CmdSeparation(eps1, eps2, alpha, beta, sep, sep_out));
    }
  } catch (const pmlgame::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == pmlgame::ErrorCode::kConfigError ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
