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

#include "pmlgame/experiment.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "pmlgame/correlated.h"
#include "pmlgame/error.h"

namespace pmlgame {
namespace {

constexpr const char* kGainHeader =
    "iteration,label,mean_gain,log_mean_gain,n_samples,seed_hash";
constexpr const char* kFigure2Header =
    "iteration,pml_bound,dp_group_bound,empirical_leakage,n_samples,seed_hash";
constexpr const char* kFigure3Header =
    "n_players,pml_lower,pml_upper_dp_based,dp_group_bound,eps_max,"
    "empirical_individual";

std::string Num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

bool Wants(const ExperimentConfig& cfg, const std::string& format) {
  for (const std::string& f : cfg.output.formats) {
    if (f == format) return true;
  }
  return false;
}

class OutputDir {
 public:
  explicit OutputDir(const std::string& directory) : dir_(directory) {
    std::filesystem::create_directories(dir_);
  }

  void Write(const std::string& name, const std::string& content) {
    const std::string path = (dir_ / name).string();
    WriteFileAtomically(path, content);
    files_.push_back(path);
  }

  void WriteJson(const std::string& name, const Json& j) {
    Write(name, j.dump(2) + "\n");
  }

  CommandResult Finish(const std::string& command, const Json& config,
                       Json extra = Json::object()) {
    Json manifest{{"format", "pmlgame.manifest"},
                  {"version", 1},
                  {"command", command},
                  {"config", config},
                  {"files", Json::array()}};
    for (const std::string& f : files_) {
      manifest["files"].push_back(std::filesystem::path(f).filename().string());
    }
    for (auto it = extra.begin(); it != extra.end(); ++it) {
      manifest[it.key()] = it.value();
    }
    WriteJson("manifest_" + command + ".json", manifest);
    return CommandResult{files_};
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

std::vector<std::vector<std::string>> ParseCsv(const std::string& text,
                                               const char* header) {
  std::istringstream in(text);
  std::string line;
  Check(static_cast<bool>(std::getline(in, line)) && line == header,
        ErrorCode::kConfigError,
        std::string("csv: expected header '") + header + "'");
  std::size_t columns = 1;
  for (const char* c = header; *c; ++c) columns += *c == ',';
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    Check(cells.size() == columns, ErrorCode::kConfigError,
          "csv: row " + std::to_string(rows.size() + 1) + " has " +
              std::to_string(cells.size()) + " cells, expected " +
              std::to_string(columns));
    rows.push_back(std::move(cells));
  }
  return rows;
}

double ParseNumber(const std::string& s) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kConfigError, "csv: '" + s + "' is not a number");
}

std::uint64_t ParseU64(const std::string& s) {
  try {
    std::size_t used = 0;
    const unsigned long long x = std::stoull(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  Fail(ErrorCode::kConfigError, "csv: '" + s + "' is not an integer");
}

LeakageConfig LeakageFor(const ExperimentConfig& cfg, int threads) {
  LeakageConfig lc;
  lc.horizon = cfg.run.horizon;
  lc.attack = cfg.attack;
  lc.threads = threads;
  lc.sample_seeds = SampleSeeds(cfg.run);
  return lc;
}

Json SeriesToJson(const GainSeries& s) {
  return Json{{"label", s.label},
              {"noise", NoiseToJson(s.noise)},
              {"mean_gain", s.leakage.mean_gain},
              {"log_mean_gain", s.leakage.log_mean_gain},
              {"mean_gain_player0", s.leakage.mean_gain_player0},
              {"log_mean_gain_player0", s.leakage.log_mean_gain_player0},
              {"min_effective_nu", s.leakage.min_effective_nu}};
}

Json GainRecordJson(const ExperimentConfig& cfg,
                    const std::vector<GainSeries>& series) {
  Json levels = Json::array();
  for (const GainSeries& s : series) levels.push_back(SeriesToJson(s));
  return Json{{"format", "pmlgame.gain_record"},
              {"version", 1},
              {"seeds", cfg.run.seeds},
              {"seed_hash", SeedHash(cfg.run.seeds)},
              {"sample_seeds", SampleSeeds(cfg.run)},
              {"levels", levels}};
}

}  // namespace

ExperimentConfig ApplyOverrides(ExperimentConfig cfg,
                                const CommandOptions& options) {
  if (options.out) cfg.output.directory = *options.out;
  if (options.seeds) {
    Check(!options.seeds->empty(), ErrorCode::kConfigError,
          "--seeds: at least one seed is required");
    cfg.run.seeds = *options.seeds;
  }
  if (options.format) {
    Check(*options.format == "csv" || *options.format == "json",
          ErrorCode::kConfigError, "--format: must be csv or json");
    cfg.output.formats = {*options.format};
  }
  Check(options.parallel >= 1, ErrorCode::kConfigError,
        "--parallel: must be >= 1");
  return cfg;
}

ExperimentConfig LoadConfigOrManifest(const std::string& path) {
  Json j;
  try {
    j = Json::parse(ReadFile(path));
  } catch (const nlohmann::json::parse_error& e) {
    Fail(ErrorCode::kConfigError, path + ": not valid JSON: " + e.what());
  }
  if (j.is_object() && j.contains("format") &&
      j.at("format") == "pmlgame.manifest") {
    Check(j.contains("config"), ErrorCode::kConfigError,
          path + ": manifest has no config");
    return ParseConfig(j.at("config"));
  }
  return ParseConfig(j);
}

std::vector<std::uint64_t> SampleSeeds(const RunSpec& run) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s : run.seeds) {
    for (int j = 0; j < run.n_samples; ++j) {
      out.push_back(DeriveSeed(s, static_cast<std::uint64_t>(j)));
    }
  }
  return out;
}

std::vector<GainSeries> AttackSeries(const ExperimentConfig& cfg, int threads) {
  Check(!cfg.run.seeds.empty(), ErrorCode::kConfigError,
        "run.seeds: at least one seed is required");
  const AggregativeGame game = BuildGame(cfg);
  const DiscretePrior prior = BuildPrior(cfg, game);
  const UpdateRule rule = BuildRule(cfg, game.n_players());
  const LeakageConfig lc = LeakageFor(cfg, threads);
  std::vector<GainSeries> out;
  for (const NoiseLevel& level : cfg.figures.noise_levels) {
    out.push_back(GainSeries{
        level.label, level.noise,
        EmpiricalLeakage(game, prior, rule, level.noise, cfg.steps, lc)});
  }
  return out;
}

Figure2Data Figure2(const ExperimentConfig& cfg, int threads) {
  const Mechanism mech = BuildMechanism(cfg);
  const DiscretePrior prior = BuildPrior(cfg, mech.game);
  const std::vector<ObservationSample> samples =
      SampleObservations(mech, prior, cfg.bounds.sampler);
  const PmlBounds bounds =
      ComputeBounds(mech, prior, samples, cfg.bounds.sampler.matched_probes);
  LeakageConfig lc = LeakageFor(cfg, threads);
  lc.x0 = mech.x0;
  const LeakageSeries leak =
      EmpiricalLeakage(mech.game, prior, mech.rule, mech.noise, mech.steps, lc);
  Figure2Data out;
  out.n_samples = static_cast<int>(leak.seeds.size());
  out.seed_hash = SeedHash(cfg.run.seeds);
  out.n_players = mech.game.n_players();
  out.adjacent_epsilon = bounds.adjacent.epsilon;
  for (int t = 0; t <= mech.horizon; ++t) {
    out.rows.push_back(
        Figure2Row{t, bounds.expectation.series[t],
                   GroupDpBound(bounds.adjacent.series[t], out.n_players),
                   leak.log_mean_gain[t]});
  }
  return out;
}

Figure3Data Figure3(const ExperimentConfig& cfg, int threads) {
  Check(cfg.prior.kind == PriorSpec::Kind::kCorrelatedBinary,
        ErrorCode::kConfigError,
        "prior.kind: the individual-view figure needs correlated_binary");
  Figure3Data out;
  out.seed_hash = SeedHash(cfg.run.seeds);
  for (int n = cfg.figures.min_players; n <= cfg.figures.max_players; ++n) {
    const Mechanism mech = BuildMechanism(cfg, n);
    const DiscretePrior prior = BuildPrior(cfg, mech.game);
    const BoundEstimate adjacent = AdjacentEpsilon(
        mech, prior, SampleObservations(mech, prior, cfg.bounds.sampler),
        cfg.bounds.sampler.matched_probes);
    const DensityTable probe(mech, prior,
                             EqualObservationProbe(mech, prior, 0));
    LeakageConfig lc = LeakageFor(cfg, threads);
    lc.x0 = mech.x0;
    const LeakageSeries leak = EmpiricalLeakage(mech.game, prior, mech.rule,
                                                mech.noise, mech.steps, lc);
    Figure3Row row;
    row.n_players = n;
    row.eps_o = EpsilonO(prior, probe);
    row.probe_leakage = ExactPmlIndividual(prior, probe, 0);
    row.pml_lower = std::log(
        CorrelatedLowerBound(cfg.prior.alpha, cfg.prior.beta, row.eps_o, n));
    row.pml_upper_dp_based =
        std::log(CorrelatedUpperBound(cfg.prior.alpha, adjacent.epsilon, n));
    row.dp_group_bound = adjacent.epsilon;
    row.eps_max = EpsilonMax(prior, 0);
    row.empirical_individual = leak.log_mean_gain_player0.back();
    out.rows.push_back(row);
    out.n_samples = static_cast<int>(leak.seeds.size());
  }
  return out;
}

std::string GainCsv(const std::vector<GainSeries>& series,
                    const std::vector<std::uint64_t>& seeds) {
  std::string out = std::string(kGainHeader) + "\n";
  const std::string hash = std::to_string(SeedHash(seeds));
  for (const GainSeries& s : series) {
    const std::string n = std::to_string(s.leakage.seeds.size());
    for (std::size_t k = 0; k < s.leakage.mean_gain.size(); ++k) {
      out += std::to_string(k) + "," + s.label + "," +
             Num(s.leakage.mean_gain[k]) + "," +
             Num(s.leakage.log_mean_gain[k]) + "," + n + "," + hash + "\n";
    }
  }
  return out;
}

std::string Figure2Csv(const Figure2Data& data) {
  std::string out = std::string(kFigure2Header) + "\n";
  for (const Figure2Row& r : data.rows) {
    out += std::to_string(r.iteration) + "," + Num(r.pml_bound) + "," +
           Num(r.dp_group_bound) + "," + Num(r.empirical_leakage) + "," +
           std::to_string(data.n_samples) + "," +
           std::to_string(data.seed_hash) + "\n";
  }
  return out;
}

Figure2Data Figure2FromCsv(const std::string& text) {
  Figure2Data data;
  for (const auto& cells : ParseCsv(text, kFigure2Header)) {
    data.rows.push_back(Figure2Row{static_cast<int>(ParseU64(cells[0])),
                                   ParseNumber(cells[1]), ParseNumber(cells[2]),
                                   ParseNumber(cells[3])});
    data.n_samples = static_cast<int>(ParseU64(cells[4]));
    data.seed_hash = ParseU64(cells[5]);
  }
  return data;
}

std::string Figure3Csv(const Figure3Data& data) {
  std::string out = std::string(kFigure3Header) + "\n";
  for (const Figure3Row& r : data.rows) {
    out += std::to_string(r.n_players) + "," + Num(r.pml_lower) + "," +
           Num(r.pml_upper_dp_based) + "," + Num(r.dp_group_bound) + "," +
           Num(r.eps_max) + "," + Num(r.empirical_individual) + "\n";
  }
  return out;
}

Figure3Data Figure3FromCsv(const std::string& text) {
  Figure3Data data;
  for (const auto& cells : ParseCsv(text, kFigure3Header)) {
    Figure3Row r;
    r.n_players = static_cast<int>(ParseU64(cells[0]));
    r.pml_lower = ParseNumber(cells[1]);
    r.pml_upper_dp_based = ParseNumber(cells[2]);
    r.dp_group_bound = ParseNumber(cells[3]);
    r.eps_max = ParseNumber(cells[4]);
    r.empirical_individual = ParseNumber(cells[5]);
    data.rows.push_back(r);
  }
  return data;
}

Json SeparationToJson(const SeparationResult& r) {
  Json witness = Json::array();
  for (const Profile& ok : r.witness) {
    Json row = Json::array();
    for (const Vec& v : ok) row.push_back(VecToJson(v));
    witness.push_back(row);
  }
  const Mechanism mech = SeparationMechanism(r.options, r.horizon, r.n_players);
  return Json{{"format", "pmlgame.separation"},
              {"version", 1},
              {"alpha", r.spec.alpha},
              {"beta", r.spec.beta},
              {"f0", CostToJson(r.spec.f0)},
              {"f1", CostToJson(r.spec.f1)},
              {"n_players", r.n_players},
              {"horizon", r.horizon},
              {"noise", NoiseToJson(mech.noise)},
              {"steps", StepsToJson(mech.steps)},
              {"gradient_bound", r.c_grad},
              {"dp_bound", r.dp_bound},
              {"dp_at_horizon", r.dp_at_horizon},
              {"individual_pml", r.individual_pml},
              {"eps_o", r.eps_o},
              {"lower_envelope", r.lower_envelope},
              {"upper_envelope", r.upper_envelope},
              {"sweep_min_players", r.options.min_players},
              {"sweep", r.sweep},
              {"witness", witness}};
}

CommandResult CmdRun(const ExperimentConfig& cfg) {
  const AggregativeGame game = BuildGame(cfg);
  const DiscretePrior prior = BuildPrior(cfg, game);
  const UpdateRule rule = BuildRule(cfg, game.n_players());
  const Profile x0 = BuildInitial(cfg, game);
  OutputDir dir(cfg.output.directory);
  Json runs = Json::array();
  for (std::uint64_t seed : cfg.run.seeds) {
    for (int j = 0; j < cfg.run.n_samples; ++j) {
      const std::uint64_t sample =
          DeriveSeed(seed, static_cast<std::uint64_t>(j));
      Rng draw(DeriveSeed(sample, 0));
      const std::size_t s = prior.Sample(draw);
      const Trajectory t =
          Run(game, prior.profile(s), rule, cfg.noise, cfg.steps,
              cfg.run.horizon, x0, DeriveSeed(sample, 2));
      const std::string name = "trajectory_seed" + std::to_string(seed) +
                               "_sample" + std::to_string(j) + ".json";
      const std::string text = TrajectoryToString(t);
      // Read back before writing so a file that does not round-trip is
      // never produced.
      Check(TrajectoryToString(TrajectoryFromString(text)) == text,
            ErrorCode::kNonFinite, name + ": trajectory does not round-trip");
      dir.Write(name, text);
      runs.push_back(Json{{"file", name},
                          {"seed", seed},
                          {"sample", j},
                          {"run_seed", t.seed},
                          {"profile", prior.profile_id(s)}});
    }
  }
  return dir.Finish("run", ConfigToJson(cfg), Json{{"runs", runs}});
}

CommandResult CmdBounds(const ExperimentConfig& cfg) {
  const Mechanism mech = BuildMechanism(cfg);
  const DiscretePrior prior = BuildPrior(cfg, mech.game);
  ReportOptions options;
  options.sampler = cfg.bounds.sampler;
  options.exact = cfg.bounds.exact;
  options.individual_players = cfg.bounds.individual_players;
  options.analytic_gradient_bound = cfg.bounds.gradient_bound;
  if (cfg.prior.kind == PriorSpec::Kind::kCorrelatedBinary) {
    CorrelatedBinarySpec spec;
    spec.alpha = cfg.prior.alpha;
    spec.beta = cfg.prior.beta;
    spec.f0 = *cfg.prior.f0;
    spec.f1 = *cfg.prior.f1;
    spec.n_players = mech.game.n_players();
    options.correlated = spec;
  }
  const PrivacyReport report = BuildReport(mech, prior, options);
  const Json j = ReportToJson(report);
  Check(ReportToJson(ReportFromJson(j)) == j, ErrorCode::kNonFinite,
        "privacy report does not round-trip");
  OutputDir dir(cfg.output.directory);
  dir.WriteJson("privacy_report.json", j);
  return dir.Finish("bounds", ConfigToJson(cfg));
}

CommandResult CmdAttack(const ExperimentConfig& cfg, int threads) {
  const std::vector<GainSeries> series = AttackSeries(cfg, threads);
  OutputDir dir(cfg.output.directory);
  if (Wants(cfg, "csv")) {
    for (const GainSeries& s : series) {
      dir.Write("gain_" + s.label + ".csv", GainCsv({s}, cfg.run.seeds));
    }
  }
  if (Wants(cfg, "json")) {
    dir.WriteJson("gain_record.json", GainRecordJson(cfg, series));
  }
  return dir.Finish("attack", ConfigToJson(cfg));
}

CommandResult CmdFigure(const ExperimentConfig& cfg, int which, int threads) {
  Check(which >= 1 && which <= 3, ErrorCode::kConfigError,
        "figure: expected 1, 2 or 3");
  OutputDir dir(cfg.output.directory);
  const std::string stem = "figure" + std::to_string(which);
  if (which == 1) {
    const std::vector<GainSeries> series = AttackSeries(cfg, threads);
    if (Wants(cfg, "csv"))
      dir.Write(stem + ".csv", GainCsv(series, cfg.run.seeds));
    if (Wants(cfg, "json"))
      dir.WriteJson(stem + ".json", GainRecordJson(cfg, series));
  } else if (which == 2) {
    const Figure2Data data = Figure2(cfg, threads);
    const std::string csv = Figure2Csv(data);
    Check(Figure2Csv(Figure2FromCsv(csv)) == csv, ErrorCode::kNonFinite,
          "figure 2 data does not round-trip");
    if (Wants(cfg, "csv")) dir.Write(stem + ".csv", csv);
    if (Wants(cfg, "json")) {
      Json rows = Json::array();
      for (const Figure2Row& r : data.rows) {
        rows.push_back(Json{{"iteration", r.iteration},
                            {"pml_bound", r.pml_bound},
                            {"dp_group_bound", r.dp_group_bound},
                            {"empirical_leakage", r.empirical_leakage}});
      }
      const Figure2Row& last = data.rows.back();
      dir.WriteJson(stem + ".json",
                    Json{{"format", "pmlgame.figure2"},
                         {"version", 1},
                         {"n_players", data.n_players},
                         {"n_samples", data.n_samples},
                         {"seed_hash", data.seed_hash},
                         {"adjacent_epsilon", data.adjacent_epsilon},
                         {"final",
                          {{"pml_bound", last.pml_bound},
                           {"dp_group_bound", last.dp_group_bound},
                           {"empirical_leakage", last.empirical_leakage}}},
                         {"rows", rows}});
    }
  } else {
    const Figure3Data data = Figure3(cfg, threads);
    const std::string csv = Figure3Csv(data);
    Check(Figure3Csv(Figure3FromCsv(csv)) == csv, ErrorCode::kNonFinite,
          "figure 3 data does not round-trip");
    if (Wants(cfg, "csv")) dir.Write(stem + ".csv", csv);
    if (Wants(cfg, "json")) {
      Json rows = Json::array();
      for (const Figure3Row& r : data.rows) {
        rows.push_back(Json{{"n_players", r.n_players},
                            {"pml_lower", r.pml_lower},
                            {"pml_upper_dp_based", r.pml_upper_dp_based},
                            {"dp_group_bound", r.dp_group_bound},
                            {"eps_max", r.eps_max},
                            {"empirical_individual", r.empirical_individual},
                            {"eps_o", r.eps_o},
                            {"probe_leakage", r.probe_leakage}});
      }
      dir.WriteJson(stem + ".json", Json{{"format", "pmlgame.figure3"},
                                         {"version", 1},
                                         {"n_samples", data.n_samples},
                                         {"seed_hash", data.seed_hash},
                                         {"rows", rows}});
    }
  }
  return dir.Finish(stem, ConfigToJson(cfg));
}

CommandResult CmdSeparation(double eps1, double eps2, double alpha, double beta,
                            const SeparationOptions& options,
                            const std::string& directory) {
  const SeparationResult r =
      ConstructSeparation(eps1, eps2, alpha, beta, options);
  OutputDir dir(directory);
  dir.WriteJson("separation.json", SeparationToJson(r));
  return dir.Finish("separation", Json{{"eps1", eps1},
                                       {"eps2", eps2},
                                       {"alpha", alpha},
                                       {"beta", beta},
                                       {"c", options.c},
                                       {"q", options.q},
                                       {"d", options.d},
                                       {"qbar", options.qbar},
                                       {"horizon", options.horizon},
                                       {"min_players", options.min_players},
                                       {"max_players", options.max_players}});
}

}  // namespace pmlgame
