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

#include "pmlgame/config.h"

#include <cmath>
#include <limits>

#include "pmlgame/error.h"
#include "pmlgame/rng.h"

namespace pmlgame {
namespace {

[[noreturn]] void ConfigFail(const std::string& path, const std::string& what) {
  Fail(ErrorCode::kConfigError, path + ": " + what);
}

void ConfigCheck(bool ok, const std::string& path, const std::string& what) {
  if (!ok) ConfigFail(path, what);
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string Index(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Runs a builder and re-labels library errors with a config path.
template <typename F>
auto AtPath(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    ConfigFail(path, e.what());
  }
}

double GetDouble(const Json& j, const std::string& path, const char* key,
                 double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  ConfigCheck(v.is_number(), Join(path, key), "expected a number");
  return v.get<double>();
}

int GetInt(const Json& j, const std::string& path, const char* key,
           int fallback, int lo, int hi = std::numeric_limits<int>::max()) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  ConfigCheck(v.is_number_integer(), Join(path, key), "expected an integer");
  const long long x = v.get<long long>();
  ConfigCheck(
      x >= lo && x <= hi, Join(path, key),
      "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

std::uint64_t ToSeed(const Json& v, const std::string& path) {
  ConfigCheck(v.is_number_unsigned() ||
                  (v.is_number_integer() && v.get<long long>() >= 0),
              path, "expected a nonnegative integer seed");
  return v.get<std::uint64_t>();
}

std::uint64_t GetSeed(const Json& j, const std::string& path, const char* key,
                      std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  return ToSeed(j.at(key), Join(path, key));
}

bool GetBool(const Json& j, const std::string& path, const char* key,
             bool fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  ConfigCheck(v.is_boolean(), Join(path, key), "expected a boolean");
  return v.get<bool>();
}

std::string GetString(const Json& j, const std::string& path, const char* key,
                      const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  ConfigCheck(v.is_string(), Join(path, key), "expected a string");
  return v.get<std::string>();
}

const Json& Block(const Json& j, const std::string& path, const char* key) {
  const Json& v = RequireField(j, path, key);
  ConfigCheck(v.is_object(), Join(path, key), "expected an object");
  return v;
}

GameSpec ParseGame(const Json& j, const std::string& path) {
  RequireKnownKeys(j, path, {"family", "n_players", "dim", "constraint"});
  GameSpec g;
  const std::string family = GetString(j, path, "family", "disease");
  g.family =
      AtPath(Join(path, "family"), [&] { return CostFamilyFromName(family); });
  g.n_players = GetInt(j, path, "n_players", 2, 1);
  g.dim = GetInt(j, path, "dim", 2, 1);
  if (j.contains("constraint")) {
    g.constraint =
        ConstraintFromJson(j.at("constraint"), Join(path, "constraint"));
  }
  return g;
}

std::vector<std::pair<PlayerCost, double>> ParseMarginal(
    const Json& j, CostFamily family, const std::string& path) {
  ConfigCheck(j.is_array() && !j.empty(), path,
              "expected a non-empty array of {cost, probability}");
  std::vector<std::pair<PlayerCost, double>> out;
  for (std::size_t c = 0; c < j.size(); ++c) {
    const std::string cp = Index(path, c);
    RequireKnownKeys(j[c], cp, {"cost", "probability"});
    out.emplace_back(
        CostFromJson(RequireField(j[c], cp, "cost"), family, Join(cp, "cost")),
        NumberAt(j[c], cp, "probability"));
  }
  return out;
}

PriorSpec ParsePrior(const Json& j, const std::string& path,
                     CostFamily family) {
  PriorSpec p;
  const std::string kind = GetString(j, path, "kind", "");
  if (kind == "point_mass") {
    RequireKnownKeys(j, path, {"kind", "profile"});
    p.kind = PriorSpec::Kind::kPointMass;
    const Json& prof = RequireField(j, path, "profile");
    const std::string pp = Join(path, "profile");
    ConfigCheck(prof.is_array(), pp, "expected an array of costs");
    for (std::size_t i = 0; i < prof.size(); ++i) {
      p.profile.push_back(CostFromJson(prof[i], family, Index(pp, i)));
    }
    return p;
  }
  if (kind == "independent_product") {
    RequireKnownKeys(j, path, {"kind", "marginals", "marginal", "random"});
    p.kind = PriorSpec::Kind::kIndependentProduct;
    const int sources = static_cast<int>(j.contains("marginals")) +
                        static_cast<int>(j.contains("marginal")) +
                        static_cast<int>(j.contains("random"));
    ConfigCheck(sources == 1, path,
                "exactly one of marginals, marginal or random is required");
    if (j.contains("marginals")) {
      const std::string mp = Join(path, "marginals");
      const Json& m = j.at("marginals");
      ConfigCheck(m.is_array() && !m.empty(), mp,
                  "expected one marginal per player");
      for (std::size_t i = 0; i < m.size(); ++i) {
        p.marginals.push_back(ParseMarginal(m[i], family, Index(mp, i)));
      }
    } else if (j.contains("marginal")) {
      p.marginals.push_back(
          ParseMarginal(j.at("marginal"), family, Join(path, "marginal")));
    } else {
      const std::string rp = Join(path, "random");
      const Json& r = j.at("random");
      RequireKnownKeys(r, rp, {"candidates", "low", "high", "seed", "shared"});
      RandomCandidates rc;
      rc.candidates =
          GetInt(r, rp, "candidates", 2, 1, DiscretePrior::kMaxPoolSize);
      rc.low = GetDouble(r, rp, "low", 0.0);
      rc.high = GetDouble(r, rp, "high", 1.0);
      ConfigCheck(
          std::isfinite(rc.low) && std::isfinite(rc.high) && rc.low <= rc.high,
          rp, "need finite low <= high");
      rc.seed = GetSeed(r, rp, "seed", 1);
      rc.shared = GetBool(r, rp, "shared", false);
      ConfigCheck(family == CostFamily::kDisease, rp,
                  "random candidates need the disease family");
      p.random = rc;
    }
    return p;
  }
  if (kind == "correlated_binary") {
    RequireKnownKeys(j, path, {"kind", "alpha", "beta", "f0", "f1"});
    p.kind = PriorSpec::Kind::kCorrelatedBinary;
    p.alpha = GetDouble(j, path, "alpha", 0.25);
    p.beta = GetDouble(j, path, "beta", 0.5);
    ConfigCheck(p.alpha > 0.0 && p.alpha < 0.5, Join(path, "alpha"),
                "must lie in (0, 0.5)");
    ConfigCheck(p.beta > 0.0 && p.beta < 1.0, Join(path, "beta"),
                "must lie in (0, 1)");
    p.f0 = CostFromJson(RequireField(j, path, "f0"), family, Join(path, "f0"));
    p.f1 = CostFromJson(RequireField(j, path, "f1"), family, Join(path, "f1"));
    return p;
  }
  ConfigFail(Join(path, "kind"), kind.empty()
                                     ? std::string("missing required field")
                                     : "unknown prior kind '" + kind + "'");
}

InitialSpec ParseInitial(const Json& j, const std::string& path) {
  InitialSpec x;
  const std::string kind = GetString(j, path, "kind", "random");
  if (kind == "random") {
    RequireKnownKeys(j, path, {"kind", "seed"});
    x.kind = InitialSpec::Kind::kRandom;
    x.seed = GetSeed(j, path, "seed", 1);
  } else if (kind == "constant") {
    RequireKnownKeys(j, path, {"kind", "value"});
    x.kind = InitialSpec::Kind::kConstant;
    x.value = VecFromJson(RequireField(j, path, "value"), Join(path, "value"));
  } else if (kind == "explicit") {
    RequireKnownKeys(j, path, {"kind", "profile"});
    x.kind = InitialSpec::Kind::kExplicit;
    const std::string pp = Join(path, "profile");
    const Json& prof = RequireField(j, path, "profile");
    ConfigCheck(prof.is_array(), pp, "expected one vector per player");
    for (std::size_t i = 0; i < prof.size(); ++i) {
      x.profile.push_back(VecFromJson(prof[i], Index(pp, i)));
    }
  } else {
    ConfigFail(Join(path, "kind"),
               "unknown initial strategy kind '" + kind + "'");
  }
  return x;
}

RunSpec ParseRun(const Json& j, const std::string& path) {
  RequireKnownKeys(j, path, {"horizon", "seeds", "n_samples", "x0"});
  RunSpec r;
  r.horizon = GetInt(j, path, "horizon", 10, 1);
  if (j.contains("seeds")) {
    const std::string sp = Join(path, "seeds");
    const Json& s = j.at("seeds");
    ConfigCheck(s.is_array(), sp, "expected an array of seeds");
    r.seeds.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      r.seeds.push_back(ToSeed(s[i], Index(sp, i)));
    }
  }
  ConfigCheck(!r.seeds.empty(), Join(path, "seeds"),
              "at least one seed is required");
  r.n_samples = GetInt(j, path, "n_samples", 1, 1);
  if (j.contains("x0")) r.x0 = ParseInitial(j.at("x0"), Join(path, "x0"));
  return r;
}

AttackOptions ParseAttack(const Json& j, const std::string& path) {
  RequireKnownKeys(j, path,
                   {"nu", "inner_epochs", "replay_passes", "safeguard",
                    "noise_weighting", "chain_rule", "max_retries"});
  AttackOptions a;
  a.nu = GetDouble(j, path, "nu", a.nu);
  ConfigCheck(std::isfinite(a.nu) && a.nu >= 0.0, Join(path, "nu"),
              "must be finite and >= 0");
  a.inner_epochs = GetInt(j, path, "inner_epochs", a.inner_epochs, 1);
  a.replay_passes = GetInt(j, path, "replay_passes", a.replay_passes, 0);
  a.safeguard = GetBool(j, path, "safeguard", a.safeguard);
  a.noise_weighting = GetBool(j, path, "noise_weighting", a.noise_weighting);
  a.chain_rule = GetBool(j, path, "chain_rule", a.chain_rule);
  a.max_retries = GetInt(j, path, "max_retries", a.max_retries, 0, 60);
  return a;
}

BoundsSpec ParseBounds(const Json& j, const std::string& path) {
  RequireKnownKeys(j, path,
                   {"n_runs", "probes_per_run", "probe_shift", "matched_probes",
                    "seed", "exact", "individual_players", "gradient_bound"});
  BoundsSpec b;
  b.sampler.n_runs = GetInt(j, path, "n_runs", b.sampler.n_runs, 1);
  b.sampler.probes_per_run =
      GetInt(j, path, "probes_per_run", b.sampler.probes_per_run, 0);
  b.sampler.probe_shift =
      GetDouble(j, path, "probe_shift", b.sampler.probe_shift);
  ConfigCheck(std::isfinite(b.sampler.probe_shift), Join(path, "probe_shift"),
              "must be finite");
  b.sampler.matched_probes =
      GetBool(j, path, "matched_probes", b.sampler.matched_probes);
  b.sampler.seed = GetSeed(j, path, "seed", b.sampler.seed);
  b.exact = GetBool(j, path, "exact", b.exact);
  if (j.contains("individual_players")) {
    const std::string ip = Join(path, "individual_players");
    const Json& v = j.at("individual_players");
    ConfigCheck(v.is_array(), ip, "expected an array of player indices");
    b.individual_players.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      ConfigCheck(v[i].is_number_integer(), Index(ip, i),
                  "expected an integer");
      b.individual_players.push_back(v[i].get<int>());
    }
  }
  if (j.contains("gradient_bound")) {
    const double c = GetDouble(j, path, "gradient_bound", 0.0);
    ConfigCheck(std::isfinite(c) && c >= 0.0, Join(path, "gradient_bound"),
                "must be finite and >= 0");
    b.gradient_bound = c;
  }
  return b;
}

FiguresSpec ParseFigures(const Json& j, const std::string& path) {
  RequireKnownKeys(j, path, {"noise_levels", "min_players", "max_players"});
  FiguresSpec f;
  if (j.contains("noise_levels")) {
    const std::string np = Join(path, "noise_levels");
    const Json& v = j.at("noise_levels");
    ConfigCheck(v.is_array() && !v.empty(), np,
                "expected a non-empty array of {label, noise}");
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string lp = Index(np, i);
      RequireKnownKeys(v[i], lp, {"label", "noise"});
      NoiseLevel level;
      level.label = GetString(v[i], lp, "label", "");
      ConfigCheck(!level.label.empty(), Join(lp, "label"),
                  "missing required field");
      level.noise =
          NoiseFromJson(RequireField(v[i], lp, "noise"), Join(lp, "noise"));
      f.noise_levels.push_back(std::move(level));
    }
  } else {
    f.noise_levels = DefaultNoiseLevels();
  }
  f.min_players =
      GetInt(j, path, "min_players", f.min_players, 2, kMaxCorrelatedPlayers);
  f.max_players = GetInt(j, path, "max_players", f.max_players, f.min_players,
                         kMaxCorrelatedPlayers);
  return f;
}

OutputSpec ParseOutput(const Json& j, const std::string& path) {
  RequireKnownKeys(j, path, {"directory", "formats"});
  OutputSpec o;
  o.directory = GetString(j, path, "directory", o.directory);
  if (j.contains("formats")) {
    const std::string fp = Join(path, "formats");
    const Json& v = j.at("formats");
    ConfigCheck(v.is_array() && !v.empty(), fp,
                "expected a non-empty array of formats");
    o.formats.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      ConfigCheck(v[i] == "csv" || v[i] == "json", Index(fp, i),
                  "format must be csv or json");
      o.formats.push_back(v[i].get<std::string>());
    }
  }
  return o;
}

// Checks that need several blocks at once, by building everything a run
// would build.
void CrossValidate(const ExperimentConfig& cfg) {
  if (cfg.noise.kind == NoiseSchedule::Kind::kGeometric &&
      cfg.steps.kind == StepSchedule::Kind::kGeometric) {
    ConfigCheck(cfg.noise.qbar > cfg.steps.q, "schedules.noise.qbar",
                "must exceed schedules.steps.q");
  }
  const AggregativeGame game = AtPath("game", [&] { return BuildGame(cfg); });
  AtPath("prior", [&] { return BuildPrior(cfg, game); });
  AtPath("rule", [&] { return BuildRule(cfg, game.n_players()); });
  AtPath("run.x0", [&] { return BuildInitial(cfg, game); });
  for (std::size_t i = 0; i < cfg.bounds.individual_players.size(); ++i) {
    const int p = cfg.bounds.individual_players[i];
    ConfigCheck(p >= 0 && p < game.n_players(),
                Index("bounds.individual_players", i),
                "player index out of range");
  }
}

Json MarginalToJson(const std::vector<std::pair<PlayerCost, double>>& m) {
  Json out = Json::array();
  for (const auto& [cost, prob] : m) {
    PlayerCost c = cost;
    c.set_id(-1);
    out.push_back(Json{{"cost", CostToJson(c)}, {"probability", prob}});
  }
  return out;
}

}  // namespace

std::vector<NoiseLevel> DefaultNoiseLevels() {
  return {{"noiseless", NoiseSchedule::Zero()},
          {"low", NoiseSchedule::Polynomial(1.0, 0.5, 1.0)},
          {"medium", NoiseSchedule::Polynomial(1.0, 1.0, 1.0)},
          {"high", NoiseSchedule::Polynomial(1.0, 1.5, 1.0)}};
}

ExperimentConfig ParseConfig(const Json& j) {
  RequireKnownKeys(j, "",
                   {"name", "game", "prior", "rule", "schedules", "run",
                    "attack", "bounds", "figures", "output"});
  ExperimentConfig cfg;
  cfg.name = GetString(j, "", "name", "");
  cfg.game = ParseGame(Block(j, "", "game"), "game");
  cfg.prior = ParsePrior(Block(j, "", "prior"), "prior", cfg.game.family);
  if (j.contains("rule")) {
    ConfigCheck(j.at("rule").is_object(), "rule", "expected an object");
    cfg.rule = j.at("rule");
  }
  const Json& sched = Block(j, "", "schedules");
  RequireKnownKeys(sched, "schedules", {"noise", "steps"});
  cfg.noise = NoiseFromJson(RequireField(sched, "schedules", "noise"),
                            "schedules.noise");
  cfg.steps = StepsFromJson(RequireField(sched, "schedules", "steps"),
                            "schedules.steps");
  cfg.run = ParseRun(Block(j, "", "run"), "run");
  if (j.contains("attack"))
    cfg.attack = ParseAttack(Block(j, "", "attack"), "attack");
  if (j.contains("bounds"))
    cfg.bounds = ParseBounds(Block(j, "", "bounds"), "bounds");
  cfg.figures = j.contains("figures")
                    ? ParseFigures(Block(j, "", "figures"), "figures")
                    : ParseFigures(Json::object(), "figures");
  if (j.contains("output"))
    cfg.output = ParseOutput(Block(j, "", "output"), "output");
  CrossValidate(cfg);
  return cfg;
}

ExperimentConfig LoadConfig(const std::string& path) {
  const std::string text = ReadFile(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    ConfigFail(path, std::string("not valid JSON: ") + e.what());
  }
  return ParseConfig(j);
}

Json ConfigToJson(const ExperimentConfig& cfg) {
  Json out;
  if (!cfg.name.empty()) out["name"] = cfg.name;
  Json game{{"family", CostFamilyName(cfg.game.family)},
            {"n_players", cfg.game.n_players},
            {"dim", cfg.game.dim}};
  if (cfg.game.constraint) {
    game["constraint"] = ConstraintToJson(*cfg.game.constraint);
  }
  out["game"] = game;

  const PriorSpec& p = cfg.prior;
  Json prior;
  switch (p.kind) {
    case PriorSpec::Kind::kPointMass: {
      prior["kind"] = "point_mass";
      Json prof = Json::array();
      for (const PlayerCost& c : p.profile) prof.push_back(CostToJson(c));
      prior["profile"] = prof;
      break;
    }
    case PriorSpec::Kind::kIndependentProduct:
      prior["kind"] = "independent_product";
      if (p.random) {
        prior["random"] = Json{{"candidates", p.random->candidates},
                               {"low", p.random->low},
                               {"high", p.random->high},
                               {"seed", p.random->seed},
                               {"shared", p.random->shared}};
      } else if (p.marginals.size() == 1) {
        prior["marginal"] = MarginalToJson(p.marginals.front());
      } else {
        Json m = Json::array();
        for (const auto& marginal : p.marginals) {
          m.push_back(MarginalToJson(marginal));
        }
        prior["marginals"] = m;
      }
      break;
    case PriorSpec::Kind::kCorrelatedBinary:
      prior = Json{{"kind", "correlated_binary"},
                   {"alpha", p.alpha},
                   {"beta", p.beta},
                   {"f0", CostToJson(*p.f0)},
                   {"f1", CostToJson(*p.f1)}};
      break;
  }
  out["prior"] = prior;
  out["rule"] = cfg.rule;
  out["schedules"] = Json{{"noise", NoiseToJson(cfg.noise)},
                          {"steps", StepsToJson(cfg.steps)}};

  Json x0;
  switch (cfg.run.x0.kind) {
    case InitialSpec::Kind::kRandom:
      x0 = Json{{"kind", "random"}, {"seed", cfg.run.x0.seed}};
      break;
    case InitialSpec::Kind::kConstant:
      x0 = Json{{"kind", "constant"}, {"value", VecToJson(cfg.run.x0.value)}};
      break;
    case InitialSpec::Kind::kExplicit: {
      Json prof = Json::array();
      for (const Vec& v : cfg.run.x0.profile) prof.push_back(VecToJson(v));
      x0 = Json{{"kind", "explicit"}, {"profile", prof}};
      break;
    }
  }
  out["run"] = Json{{"horizon", cfg.run.horizon},
                    {"seeds", cfg.run.seeds},
                    {"n_samples", cfg.run.n_samples},
                    {"x0", x0}};
  const AttackOptions& a = cfg.attack;
  out["attack"] = Json{{"nu", a.nu},
                       {"inner_epochs", a.inner_epochs},
                       {"replay_passes", a.replay_passes},
                       {"safeguard", a.safeguard},
                       {"noise_weighting", a.noise_weighting},
                       {"chain_rule", a.chain_rule},
                       {"max_retries", a.max_retries}};
  const BoundsSpec& b = cfg.bounds;
  Json bounds{{"n_runs", b.sampler.n_runs},
              {"probes_per_run", b.sampler.probes_per_run},
              {"probe_shift", b.sampler.probe_shift},
              {"matched_probes", b.sampler.matched_probes},
              {"seed", b.sampler.seed},
              {"exact", b.exact},
              {"individual_players", b.individual_players}};
  if (b.gradient_bound) bounds["gradient_bound"] = *b.gradient_bound;
  out["bounds"] = bounds;
  Json levels = Json::array();
  for (const NoiseLevel& l : cfg.figures.noise_levels) {
    levels.push_back(Json{{"label", l.label}, {"noise", NoiseToJson(l.noise)}});
  }
  out["figures"] = Json{{"noise_levels", levels},
                        {"min_players", cfg.figures.min_players},
                        {"max_players", cfg.figures.max_players}};
  out["output"] = Json{{"directory", cfg.output.directory},
                       {"formats", cfg.output.formats}};
  return out;
}

AggregativeGame BuildGame(const ExperimentConfig& cfg, int n_players) {
  const int n = n_players < 0 ? cfg.game.n_players : n_players;
  if (cfg.game.constraint) {
    return AggregativeGame::Uniform(n, cfg.game.dim, cfg.game.family,
                                    *cfg.game.constraint);
  }
  return AggregativeGame::WithDefaults(n, cfg.game.dim, cfg.game.family);
}

DiscretePrior BuildPrior(const ExperimentConfig& cfg,
                         const AggregativeGame& game) {
  const PriorSpec& p = cfg.prior;
  const int n = game.n_players();
  DiscretePrior prior = [&]() -> DiscretePrior {
    switch (p.kind) {
      case PriorSpec::Kind::kPointMass: {
        Check(static_cast<int>(p.profile.size()) == n, ErrorCode::kInvalidInput,
              "point-mass profile needs one cost per player");
        return DiscretePrior::PointMass(CostProfile{p.profile, ""});
      }
      case PriorSpec::Kind::kIndependentProduct: {
        std::vector<std::vector<std::pair<PlayerCost, double>>> marginals;
        if (p.random) {
          const RandomCandidates& rc = *p.random;
          const int dim = game.dim();
          Rng rng(rc.seed);
          auto draw = [&] {
            std::vector<std::pair<PlayerCost, double>> m;
            for (int c = 0; c < rc.candidates; ++c) {
              Vec a(dim);
              Mat b(dim, dim);
              for (int r = 0; r < dim; ++r) a[r] = rng.Uniform(rc.low, rc.high);
              for (Eigen::Index e = 0; e < b.size(); ++e) {
                b(e) = rng.Uniform(rc.low, rc.high);
              }
              m.emplace_back(PlayerCost::Disease(a, b),
                             1.0 / static_cast<double>(rc.candidates));
            }
            return m;
          };
          if (rc.shared) {
            marginals.assign(n, draw());
          } else {
            for (int i = 0; i < n; ++i) marginals.push_back(draw());
          }
        } else if (p.marginals.size() == 1) {
          marginals.assign(n, p.marginals.front());
        } else {
          Check(static_cast<int>(p.marginals.size()) == n,
                ErrorCode::kInvalidInput,
                "independent product needs one marginal per player");
          marginals = p.marginals;
        }
        return DiscretePrior::IndependentProduct(marginals);
      }
      case PriorSpec::Kind::kCorrelatedBinary: {
        CorrelatedBinarySpec spec;
        spec.alpha = p.alpha;
        spec.beta = p.beta;
        spec.f0 = *p.f0;
        spec.f1 = *p.f1;
        spec.n_players = n;
        return CorrelatedPrior(spec);
      }
    }
    Fail(ErrorCode::kInvalidInput, "unknown prior kind");
  }();
  prior.ValidateFor(game);
  return prior;
}

UpdateRule BuildRule(const ExperimentConfig& cfg, int n_players) {
  UpdateRule rule = RuleFromJson(cfg.rule, n_players, "rule");
  rule.Validate(n_players);
  return rule;
}

Profile BuildInitial(const ExperimentConfig& cfg, const AggregativeGame& game) {
  const InitialSpec& x = cfg.run.x0;
  Profile x0;
  switch (x.kind) {
    case InitialSpec::Kind::kRandom:
      return InitialStrategies(game, x.seed);
    case InitialSpec::Kind::kConstant:
      Check(x.value.size() == game.dim(), ErrorCode::kInvalidInput,
            "initial value must have the game dimension");
      x0.assign(game.n_players(), x.value);
      break;
    case InitialSpec::Kind::kExplicit:
      x0 = x.profile;
      break;
  }
  game.ValidateStrategies(x0);
  return x0;
}

Mechanism BuildMechanism(const ExperimentConfig& cfg, int n_players) {
  AggregativeGame game = BuildGame(cfg, n_players);
  Mechanism mech{game,
                 BuildRule(cfg, game.n_players()),
                 cfg.noise,
                 cfg.steps,
                 cfg.run.horizon,
                 BuildInitial(cfg, game)};
  mech.Validate();
  return mech;
}

}  // namespace pmlgame
