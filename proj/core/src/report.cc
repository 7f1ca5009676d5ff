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

#include "pmlgame/report.h"

#include <cmath>

#include "pmlgame/correlated.h"
#include "pmlgame/error.h"

namespace pmlgame {
namespace {

constexpr const char* kFormat = "pmlgame.privacy_report";

Json SeriesToJson(const std::vector<double>& s) {
  Json out = Json::array();
  for (double v : s) out.push_back(v);
  return out;
}

std::vector<double> SeriesFromJson(const Json& j, const std::string& path) {
  Check(j.is_array(), ErrorCode::kConfigError, path + ": expected an array");
  std::vector<double> out;
  for (const Json& v : j) {
    Check(v.is_number(), ErrorCode::kConfigError, path + ": expected numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

Json EstimateToJson(const BoundEstimate& b, const char* method) {
  Json j;
  j["epsilon"] = b.epsilon;
  j["method"] = method;
  j["sampled"] = b.sampled;
  j["n_observations"] = b.n_observations;
  j["witness_observation"] = b.witness_observation;
  j["witness_profile"] = b.witness_profile;
  j["series"] = SeriesToJson(b.series);
  return j;
}

BoundEstimate EstimateFromJson(const Json& j, const std::string& path) {
  RequireKnownKeys(j, path,
                   {"epsilon", "method", "sampled", "n_observations",
                    "witness_observation", "witness_profile", "series"});
  BoundEstimate b;
  b.epsilon = NumberAt(j, path, "epsilon");
  b.sampled = RequireField(j, path, "sampled").get<bool>();
  b.n_observations = RequireField(j, path, "n_observations").get<std::size_t>();
  b.witness_observation =
      RequireField(j, path, "witness_observation").get<std::string>();
  b.witness_profile =
      RequireField(j, path, "witness_profile").get<std::string>();
  b.series = SeriesFromJson(RequireField(j, path, "series"), path + ".series");
  return b;
}

}  // namespace

PrivacyReport BuildReport(const Mechanism& mech, const DiscretePrior& prior,
                          const ReportOptions& options) {
  PrivacyReport r;
  r.n_players = mech.game.n_players();
  r.horizon = mech.horizon;
  r.support_size = prior.size();
  r.sampler = options.sampler;

  const std::vector<ObservationSample> samples =
      SampleObservations(mech, prior, options.sampler);
  r.bounds =
      ComputeBounds(mech, prior, samples, options.sampler.matched_probes);
  r.notes.push_back(
      "PML and adjacent-DP levels are maxima over sampled observations; the "
      "true supremum may be larger");

  if (options.analytic_gradient_bound) {
    r.uniform_analytic =
        PmlBoundUniformAnalytic(*options.analytic_gradient_bound, r.n_players,
                                mech.steps, mech.noise, mech.horizon);
  }
  for (int i : options.individual_players) {
    Check(i >= 0 && i < r.n_players, ErrorCode::kInvalidInput,
          "individual player index out of range");
  }
  if (options.exact || !options.individual_players.empty()) {
    for (const ObservationSample& s : samples) {
      const DensityTable table(mech, prior, s.o);
      if (options.exact) r.exact_pml.push_back({s.id, ExactPml(prior, table)});
      for (int i : options.individual_players) {
        r.exact_pml_individual.push_back(
            {i, s.id, ExactPmlIndividual(prior, table, i)});
      }
    }
  }
  if (options.correlated) {
    const CorrelatedBinarySpec& spec = *options.correlated;
    CorrelatedSummary c;
    c.alpha = spec.alpha;
    c.beta = spec.beta;
    c.eps_max = EpsilonMax(prior, 0);
    const Sequence probe = EqualObservationProbe(mech, prior, 0);
    const DensityTable table(mech, prior, probe);
    c.eps_o = EpsilonO(prior, table);
    c.probe_leakage = ExactPmlIndividual(prior, table, 0);
    c.lower = std::log(
        CorrelatedLowerBound(spec.alpha, spec.beta, c.eps_o, r.n_players));
    c.upper = std::log(CorrelatedUpperBound(
        spec.alpha, r.bounds.adjacent.epsilon, r.n_players));
    r.correlated = c;
    r.notes.push_back(
        "the upper envelope uses the sampled adjacent level in place of a "
        "proven DP level");
  }
  return r;
}

Json ReportToJson(const PrivacyReport& r) {
  Json j;
  j["format"] = kFormat;
  j["version"] = 1;
  j["n_players"] = r.n_players;
  j["horizon"] = r.horizon;
  j["support_size"] = r.support_size;
  j["sampler"] = {{"n_runs", r.sampler.n_runs},
                  {"probes_per_run", r.sampler.probes_per_run},
                  {"probe_shift", r.sampler.probe_shift},
                  {"matched_probes", r.sampler.matched_probes},
                  {"seed", r.sampler.seed}};
  j["eps_pml_expectation"] =
      EstimateToJson(r.bounds.expectation, "expectation_over_profiles");
  j["eps_pml_per_profile"] =
      EstimateToJson(r.bounds.per_profile, "per_profile_sensitivity");
  j["eps_pml_uniform"] =
      EstimateToJson(r.bounds.uniform, "uniform_sensitivity");
  if (r.uniform_analytic) j["eps_pml_uniform_analytic"] = *r.uniform_analytic;
  j["eps_dp_adjacent"] =
      EstimateToJson(r.bounds.adjacent, "adjacent_log_ratio");
  j["eps_group_dp"] = r.bounds.group_dp;
  Json exact = Json::array();
  for (const ExactSample& e : r.exact_pml) {
    exact.push_back({{"observation", e.observation}, {"value", e.value}});
  }
  j["exact_pml_samples"] = std::move(exact);
  Json indiv = Json::array();
  for (const IndividualSample& e : r.exact_pml_individual) {
    indiv.push_back({{"player", e.player},
                     {"observation", e.observation},
                     {"value", e.value}});
  }
  j["exact_pml_individual"] = std::move(indiv);
  if (r.correlated) {
    const CorrelatedSummary& c = *r.correlated;
    j["correlated"] = {{"alpha", c.alpha},
                       {"beta", c.beta},
                       {"eps_max", c.eps_max},
                       {"eps_o", c.eps_o},
                       {"probe_leakage", c.probe_leakage},
                       {"lower", c.lower},
                       {"upper", c.upper}};
  }
  j["notes"] = r.notes;
  return j;
}

PrivacyReport ReportFromJson(const Json& j) {
  const std::string root = "report";
  RequireKnownKeys(
      j, root,
      {"format", "version", "n_players", "horizon", "support_size", "sampler",
       "eps_pml_expectation", "eps_pml_per_profile", "eps_pml_uniform",
       "eps_pml_uniform_analytic", "eps_dp_adjacent", "eps_group_dp",
       "exact_pml_samples", "exact_pml_individual", "correlated", "notes"});
  Check(RequireField(j, root, "format") == kFormat &&
            RequireField(j, root, "version") == 1,
        ErrorCode::kConfigError, "report: unsupported format or version");
  PrivacyReport r;
  r.n_players = RequireField(j, root, "n_players").get<int>();
  r.horizon = RequireField(j, root, "horizon").get<int>();
  r.support_size = RequireField(j, root, "support_size").get<std::size_t>();
  const Json& s = RequireField(j, root, "sampler");
  RequireKnownKeys(
      s, root + ".sampler",
      {"n_runs", "probes_per_run", "probe_shift", "matched_probes", "seed"});
  r.sampler.n_runs = s.at("n_runs").get<int>();
  r.sampler.probes_per_run = s.at("probes_per_run").get<int>();
  r.sampler.probe_shift = s.at("probe_shift").get<double>();
  r.sampler.matched_probes = s.at("matched_probes").get<bool>();
  r.sampler.seed = s.at("seed").get<std::uint64_t>();
  r.bounds.expectation =
      EstimateFromJson(RequireField(j, root, "eps_pml_expectation"),
                       root + ".eps_pml_expectation");
  r.bounds.per_profile =
      EstimateFromJson(RequireField(j, root, "eps_pml_per_profile"),
                       root + ".eps_pml_per_profile");
  r.bounds.uniform = EstimateFromJson(RequireField(j, root, "eps_pml_uniform"),
                                      root + ".eps_pml_uniform");
  if (j.contains("eps_pml_uniform_analytic")) {
    r.uniform_analytic = NumberAt(j, root, "eps_pml_uniform_analytic");
  }
  r.bounds.adjacent = EstimateFromJson(RequireField(j, root, "eps_dp_adjacent"),
                                       root + ".eps_dp_adjacent");
  r.bounds.group_dp = NumberAt(j, root, "eps_group_dp");
  for (const Json& e : RequireField(j, root, "exact_pml_samples")) {
    r.exact_pml.push_back(
        {e.at("observation").get<std::string>(), e.at("value").get<double>()});
  }
  for (const Json& e : RequireField(j, root, "exact_pml_individual")) {
    r.exact_pml_individual.push_back({e.at("player").get<int>(),
                                      e.at("observation").get<std::string>(),
                                      e.at("value").get<double>()});
  }
  if (j.contains("correlated")) {
    const Json& c = j.at("correlated");
    const std::string path = root + ".correlated";
    RequireKnownKeys(c, path,
                     {"alpha", "beta", "eps_max", "eps_o", "probe_leakage",
                      "lower", "upper"});
    CorrelatedSummary cs;
    cs.alpha = NumberAt(c, path, "alpha");
    cs.beta = NumberAt(c, path, "beta");
    cs.eps_max = NumberAt(c, path, "eps_max");
    cs.eps_o = NumberAt(c, path, "eps_o");
    cs.probe_leakage = NumberAt(c, path, "probe_leakage");
    cs.lower = NumberAt(c, path, "lower");
    cs.upper = NumberAt(c, path, "upper");
    r.correlated = cs;
  }
  r.notes = RequireField(j, root, "notes").get<std::vector<std::string>>();
  return r;
}

}  // namespace pmlgame
