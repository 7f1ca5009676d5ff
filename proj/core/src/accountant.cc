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

#include "pmlgame/accountant.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pmlgame/error.h"
#include "pmlgame/rng.h"

namespace pmlgame {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void CheckPrior(const Mechanism& mech, const DiscretePrior& prior) {
  Check(prior.size() > 0, ErrorCode::kEmptyPrior, "prior has empty support");
  prior.ValidateFor(mech.game);
}

// Support is enumerated pairwise by the sampled bounds.
void CheckPairwiseSize(const DiscretePrior& prior) {
  Check(prior.size() <= 4096, ErrorCode::kSupportTooLarge,
        "sampled PML bounds enumerate support pairs; at most 4096 profiles");
}

// Per-player slot of every support element, laid out [s][i].
std::vector<int> SlotRows(const DiscretePrior& prior, const DensityTable& t) {
  const int n = prior.n_players();
  std::vector<int> rows(prior.size() * n);
  for (std::size_t s = 0; s < prior.size(); ++s) {
    for (int i = 0; i < n; ++i) {
      rows[s * n + i] = t.slot(i, prior.entry_index(s, i));
    }
  }
  return rows;
}

// [i][k][a * m + b] = ||v_i^k(a) - v_i^k(b)||_1.
std::vector<std::vector<std::vector<double>>> StepDistances(
    const DensityTable& t) {
  std::vector<std::vector<std::vector<double>>> out(t.n_players());
  for (int i = 0; i < t.n_players(); ++i) {
    const int m = static_cast<int>(t.entries(i).size());
    out[i].assign(t.horizon() + 1, std::vector<double>(m * m, 0.0));
    for (int k = 0; k <= t.horizon(); ++k) {
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
          const double d = t.StepDistance(i, a, b, k);
          out[i][k][a * m + b] = d;
          out[i][k][b * m + a] = d;
        }
      }
    }
  }
  return out;
}

bool IsProbeSource(const ObservationSample& s) {
  return s.kind != ObservationSample::Kind::kMatchedProbe;
}

}  // namespace

double LogSumExp(const std::vector<double>& values) {
  double hi = -kInf;
  for (double v : values) hi = std::max(hi, v);
  if (!std::isfinite(hi)) return hi;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - hi);
  return hi + std::log(acc);
}

double Sensitivity(const Mechanism& mech, const CostProfile& f,
                   const CostProfile& f_prime, const Sequence& o, int k) {
  Check(k >= 0 && k < static_cast<int>(o.size()), ErrorCode::kInvalidInput,
        "iteration index outside the observation sequence");
  const Replayed a = Replay(mech.game, f, o, mech.rule, mech.steps, mech.x0);
  const Replayed b =
      Replay(mech.game, f_prime, o, mech.rule, mech.steps, mech.x0);
  double total = 0.0;
  for (int i = 0; i < mech.game.n_players(); ++i) {
    total += (a.v[k][i] - b.v[k][i]).cwiseAbs().sum();
  }
  return total;
}

std::vector<ObservationSample> SampleObservations(const Mechanism& mech,
                                                  const DiscretePrior& prior,
                                                  const SamplerConfig& cfg) {
  CheckPrior(mech, prior);
  mech.Validate();
  Check(cfg.n_runs >= 1, ErrorCode::kInvalidInput, "need at least one run");
  Check(cfg.probes_per_run >= 0 && cfg.probe_shift >= 0.0,
        ErrorCode::kInvalidInput, "probe settings must be nonnegative");
  std::vector<ObservationSample> out;
  out.reserve(static_cast<std::size_t>(cfg.n_runs) * (1 + cfg.probes_per_run));
  for (int r = 0; r < cfg.n_runs; ++r) {
    ObservationSample base;
    base.kind = ObservationSample::Kind::kRun;
    base.profile = static_cast<std::size_t>(r) % prior.size();
    base.seed = DeriveSeed(cfg.seed, static_cast<std::uint64_t>(r));
    base.id = "run-" + std::to_string(r);
    base.o = Run(mech.game, prior.profile(base.profile), mech.rule, mech.noise,
                 mech.steps, mech.horizon, mech.x0, base.seed)
                 .o;
    Rng signs(DeriveSeed(base.seed, 0x70726f6265ULL));
    for (int p = 0; p < cfg.probes_per_run; ++p) {
      ObservationSample probe = base;
      probe.kind = ObservationSample::Kind::kBoundaryProbe;
      probe.id = base.id + "-probe-" + std::to_string(p);
      for (std::size_t k = 0; k < probe.o.size(); ++k) {
        const double shift =
            cfg.probe_shift * mech.noise.Scale(static_cast<int>(k));
        for (Vec& ok : probe.o[k]) {
          for (Eigen::Index c = 0; c < ok.size(); ++c) {
            double sign = p == 0 ? 1.0 : -1.0;
            if (p >= 2) sign = signs.Uniform01() < 0.5 ? -1.0 : 1.0;
            ok(c) += sign * shift;
          }
        }
      }
      out.push_back(std::move(probe));
    }
    out.insert(out.end() - cfg.probes_per_run, std::move(base));
  }
  return out;
}

std::vector<Sequence> MatchedProbes(const Mechanism& mech,
                                    const DensityTable& table, int i) {
  const Mat w = mech.rule.InputCoefficients();
  const int n = table.n_players();
  int j = -1;
  for (int c = 0; c < n; ++c) {
    if (c == i || w(i, c) == 0.0) continue;
    if (j < 0 || std::fabs(w(i, c)) > std::fabs(w(i, j))) j = c;
  }
  std::vector<Sequence> out;
  if (j < 0) return out;
  const int m = static_cast<int>(table.entries(i).size());
  for (int a = 0; a + 1 < m; ++a) {
    Sequence o = table.observations();
    const std::vector<Vec>& v = table.Estimates(i, a);
    for (std::size_t k = 0; k < o.size(); ++k) {
      const Vec shift = v[k] - o[k][i];
      o[k][i] = v[k];
      o[k][j] -= (w(i, i) / w(i, j)) * shift;
    }
    out.push_back(std::move(o));
  }
  return out;
}

double AdjacentLogRatio(const DensityTable& table, int t) {
  double best = 0.0;
  for (int i = 0; i < table.n_players(); ++i) {
    const int m = static_cast<int>(table.entries(i).size());
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        best = std::max(best, std::fabs(table.PlayerLog(i, a, t) -
                                        table.PlayerLog(i, b, t)));
      }
    }
  }
  return best;
}

namespace {

// Folds the adjacent ratios of one observation sequence, and of its matched
// probes when requested, into a running per-prefix maximum.
void VisitAdjacent(const Mechanism& mech, const DiscretePrior& prior,
                   const DensityTable& table, const std::string& id,
                   bool matched_probes, std::vector<double>* series,
                   std::vector<std::string>* witness, std::size_t* count) {
  const int horizon = table.horizon();
  auto visit = [&](const DensityTable& t, const std::string& tid) {
    ++*count;
    for (int h = 0; h <= horizon; ++h) {
      const double r = AdjacentLogRatio(t, h);
      if (r > (*series)[h]) {
        (*series)[h] = r;
        (*witness)[h] = tid;
      }
    }
  };
  visit(table, id);
  if (!matched_probes) return;
  for (int i = 0; i < prior.n_players(); ++i) {
    const std::vector<Sequence> probes = MatchedProbes(mech, table, i);
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const DensityTable pt(mech, prior, probes[p]);
      visit(pt, id + "-matched-" + std::to_string(i) + "-" + std::to_string(p));
    }
  }
}

}  // namespace

BoundEstimate AdjacentEpsilon(const Mechanism& mech, const DiscretePrior& prior,
                              const std::vector<ObservationSample>& samples,
                              bool matched_probes) {
  BoundEstimate out;
  int horizon = -1;
  std::vector<std::string> witness;
  for (const ObservationSample& sample : samples) {
    if (!IsProbeSource(sample)) continue;
    const int h = static_cast<int>(sample.o.size()) - 1;
    if (horizon < 0) {
      horizon = h;
      out.series.assign(horizon + 1, -kInf);
      witness.assign(horizon + 1, {});
    }
    Check(h == horizon, ErrorCode::kInvalidInput,
          "all observation samples must share the horizon");
    const DensityTable table(mech, prior, sample.o);
    VisitAdjacent(mech, prior, table, sample.id, matched_probes, &out.series,
                  &witness, &out.n_observations);
  }
  Check(horizon >= 0, ErrorCode::kInvalidInput,
        "bounds need at least one observation sample");
  out.epsilon = out.series[horizon];
  out.witness_observation = witness[horizon];
  return out;
}

PmlBounds ComputeBounds(const Mechanism& mech, const DiscretePrior& prior,
                        const std::vector<ObservationSample>& samples,
                        bool matched_probes) {
  CheckPrior(mech, prior);
  CheckPairwiseSize(prior);
  mech.Validate();
  const int n = prior.n_players();
  const std::size_t size = prior.size();

  std::size_t n_obs = 0;
  int horizon = -1;
  for (const ObservationSample& s : samples) {
    if (!IsProbeSource(s)) continue;
    ++n_obs;
    const int h = static_cast<int>(s.o.size()) - 1;
    Check(horizon < 0 || h == horizon, ErrorCode::kInvalidInput,
          "all observation samples must share the horizon");
    horizon = h;
  }
  Check(n_obs > 0, ErrorCode::kInvalidInput,
        "bounds need at least one observation sample");

  std::vector<double> scale(horizon + 1);
  for (int k = 0; k <= horizon; ++k) scale[k] = mech.noise.Scale(k);

  PmlBounds out;
  out.expectation.series.assign(horizon + 1, -kInf);
  out.adjacent.series.assign(horizon + 1, -kInf);
  std::vector<std::string> expectation_witness_o(horizon + 1);
  std::vector<std::size_t> expectation_witness_f(horizon + 1, 0);
  std::vector<std::string> adj_witness(horizon + 1);
  // [s][k] max over o and f' of Delta(k, f_s, f', o).
  std::vector<double> worst(size * (horizon + 1), 0.0);
  std::size_t n_adj = 0;

  std::vector<double> terms(size);
  std::vector<double> exponent(size * (horizon + 1));
  for (const ObservationSample& sample : samples) {
    if (!IsProbeSource(sample)) continue;
    const DensityTable table(mech, prior, sample.o);
    const std::vector<int> rows = SlotRows(prior, table);
    const auto dist = StepDistances(table);

    for (std::size_t sp = 0; sp < size; ++sp) {
      const int* b = &rows[sp * n];
      for (std::size_t s = 0; s < size; ++s) {
        const int* a = &rows[s * n];
        double acc = 0.0;
        for (int k = 0; k <= horizon; ++k) {
          double dk = 0.0;
          for (int i = 0; i < n; ++i) {
            const int m = static_cast<int>(table.entries(i).size());
            dk += dist[i][k][a[i] * m + b[i]];
          }
          double& w = worst[s * (horizon + 1) + k];
          w = std::max(w, dk);
          acc += dk / scale[k];
          exponent[s * (horizon + 1) + k] = acc;
        }
      }
      for (int t = 0; t <= horizon; ++t) {
        for (std::size_t s = 0; s < size; ++s) {
          terms[s] = prior.log_probability(s) - exponent[s * (horizon + 1) + t];
        }
        const double eps = -LogSumExp(terms);
        // Strict comparison keeps the first witness on ties.
        if (eps > out.expectation.series[t]) {
          out.expectation.series[t] = eps;
          expectation_witness_o[t] = sample.id;
          expectation_witness_f[t] = sp;
        }
      }
    }

    VisitAdjacent(mech, prior, table, sample.id, matched_probes,
                  &out.adjacent.series, &adj_witness, &n_adj);
  }

  out.expectation.epsilon = out.expectation.series[horizon];
  out.expectation.n_observations = n_obs;
  out.expectation.witness_observation = expectation_witness_o[horizon];
  out.expectation.witness_profile =
      prior.profile_id(expectation_witness_f[horizon]);

  out.adjacent.epsilon = out.adjacent.series[horizon];
  out.adjacent.n_observations = n_adj;
  out.adjacent.witness_observation = adj_witness[horizon];

  out.per_profile.series.assign(horizon + 1, 0.0);
  out.uniform.series.assign(horizon + 1, 0.0);
  std::vector<double> acc(size, 0.0);
  double uniform_acc = 0.0;
  std::size_t uniform_witness = 0;
  for (int t = 0; t <= horizon; ++t) {
    double top = 0.0;
    for (std::size_t s = 0; s < size; ++s) {
      const double w = worst[s * (horizon + 1) + t];
      acc[s] += w / scale[t];
      terms[s] = prior.log_probability(s) - acc[s];
      if (w > top) {
        top = w;
        if (t == horizon) uniform_witness = s;
      }
    }
    out.per_profile.series[t] = -LogSumExp(terms);
    uniform_acc += top / scale[t];
    out.uniform.series[t] = uniform_acc;
  }
  out.per_profile.epsilon = out.per_profile.series[horizon];
  out.per_profile.n_observations = n_obs;
  out.uniform.epsilon = out.uniform.series[horizon];
  out.uniform.n_observations = n_obs;
  out.uniform.witness_profile = prior.profile_id(uniform_witness);
  out.group_dp = GroupDpBound(out.adjacent.epsilon, n);
  return out;
}

double PmlBoundExpectation(const Mechanism& mech, const DiscretePrior& prior,
                           const std::vector<ObservationSample>& samples) {
  return ComputeBounds(mech, prior, samples, false).expectation.epsilon;
}

double PmlBoundPerProfile(const Mechanism& mech, const DiscretePrior& prior,
                          const std::vector<ObservationSample>& samples) {
  return ComputeBounds(mech, prior, samples, false).per_profile.epsilon;
}

double PmlBoundUniform(const Mechanism& mech, const DiscretePrior& prior,
                       const std::vector<ObservationSample>& samples) {
  return ComputeBounds(mech, prior, samples, false).uniform.epsilon;
}

double PmlBoundUniformAnalytic(double c1, int n_players,
                               const StepSchedule& steps,
                               const NoiseSchedule& noise, int horizon) {
  Check(c1 >= 0.0 && std::isfinite(c1), ErrorCode::kInvalidInput,
        "gradient bound must be finite and nonnegative");
  Check(n_players >= 1, ErrorCode::kInvalidInput, "need at least one player");
  steps.Validate();
  noise.Validate();
  Check(!noise.is_zero(), ErrorCode::kInvalidSchedule,
        "the analytic bound needs a nonzero noise schedule");
  const double factor = 2.0 * n_players * c1;
  if (horizon < 0) {
    Check(steps.kind == StepSchedule::Kind::kGeometric &&
              noise.kind == NoiseSchedule::Kind::kGeometric,
          ErrorCode::kInvalidSchedule,
          "the infinite-horizon sum needs geometric schedules");
    Check(steps.q < noise.qbar, ErrorCode::kInvalidSchedule,
          "the infinite-horizon sum needs q < qbar");
    return factor * steps.c / (noise.d * noise.qbar) /
           (1.0 - steps.q / noise.qbar);
  }
  double total = 0.0;
  for (int k = 0; k < horizon; ++k) {
    total += factor * steps.Step(k) / noise.Scale(k + 1);
  }
  return total;
}

double DpBoundGeometric(double c_grad, double c, double q, double d,
                        double qbar) {
  Check(c_grad >= 0.0 && c > 0.0 && d > 0.0, ErrorCode::kInvalidInput,
        "need C >= 0 and c, d > 0");
  Check(q > 0.0 && qbar < 1.0 && q < qbar, ErrorCode::kInvalidSchedule,
        "geometric DP bound needs 0 < q < qbar < 1");
  return 2.0 * c * c_grad * qbar / (d * (qbar - q));
}

double DpBoundGeometricAtHorizon(double c_grad, double c, double q, double d,
                                 double qbar, int horizon) {
  DpBoundGeometric(c_grad, c, q, d, qbar);
  Check(horizon >= 0, ErrorCode::kInvalidInput, "horizon must be >= 0");
  const double r = q / qbar;
  return (2.0 * c * c_grad / (d * qbar)) * (1.0 - std::pow(r, horizon)) /
         (1.0 - r);
}

int GeometricDpHorizon(double q, double qbar) {
  Check(q > 0.0 && qbar < 1.0 && q < qbar, ErrorCode::kInvalidSchedule,
        "geometric DP bound needs 0 < q < qbar < 1");
  return static_cast<int>(
      std::floor(std::log1p(-qbar) / std::log(q / qbar) + 1e-12));
}

double GroupDpBound(double eps, int group_size) {
  Check(eps >= 0.0, ErrorCode::kInvalidInput, "epsilon must be >= 0");
  Check(group_size >= 1, ErrorCode::kInvalidInput, "group size must be >= 1");
  return group_size * eps;
}

double ExactPml(const DiscretePrior& prior, const DensityTable& table) {
  std::vector<double> joint(prior.size());
  double best = -kInf;
  for (std::size_t s = 0; s < prior.size(); ++s) {
    const double l = table.LogDensity(prior, s);
    best = std::max(best, l);
    joint[s] = prior.log_probability(s) + l;
  }
  return std::max(0.0, best - LogSumExp(joint));
}

double ExactPml(const Mechanism& mech, const DiscretePrior& prior,
                const Sequence& o) {
  CheckPrior(mech, prior);
  return ExactPml(prior, DensityTable(mech, prior, o));
}

double ExactPmlIndividual(const DiscretePrior& prior, const DensityTable& table,
                          int i) {
  Check(i >= 0 && i < prior.n_players(), ErrorCode::kInvalidInput,
        "player index out of range");
  const int m = static_cast<int>(table.entries(i).size());
  std::vector<double> joint(prior.size());
  std::vector<std::vector<double>> by_slot(m);
  for (std::size_t s = 0; s < prior.size(); ++s) {
    joint[s] = prior.log_probability(s) + table.LogDensity(prior, s);
    by_slot[table.slot(i, prior.entry_index(s, i))].push_back(joint[s]);
  }
  const double evidence = LogSumExp(joint);
  double best = -kInf;
  for (const auto& [entry, mass] : prior.Marginal(i)) {
    const int a = table.slot(i, entry);
    best = std::max(best, LogSumExp(by_slot[a]) - std::log(mass));
  }
  return std::max(0.0, best - evidence);
}

double ExactPmlIndividual(const Mechanism& mech, const DiscretePrior& prior,
                          int i, const Sequence& o) {
  CheckPrior(mech, prior);
  return ExactPmlIndividual(prior, DensityTable(mech, prior, o), i);
}

double EpsilonO(const DiscretePrior& prior, const DensityTable& table) {
  Check(prior.pool().size() <= 2, ErrorCode::kInvalidInput,
        "epsilon_o is defined for binary-support priors");
  return AdjacentLogRatio(table, table.horizon());
}

double EpsilonO(const Mechanism& mech, const DiscretePrior& prior,
                const Sequence& o) {
  CheckPrior(mech, prior);
  return EpsilonO(prior, DensityTable(mech, prior, o));
}

Sequence EqualObservationProbe(const Mechanism& mech,
                               const DiscretePrior& prior, int entry) {
  Check(entry >= 0 && entry < static_cast<int>(prior.pool().size()),
        ErrorCode::kInvalidInput, "entry index out of range");
  CostProfile f;
  for (int i = 0; i < prior.n_players(); ++i)
    f.entries.push_back(prior.entry(entry));
  return Run(mech.game, f, mech.rule, NoiseSchedule::Zero(), mech.steps,
             mech.horizon, mech.x0, 0)
      .o;
}

}  // namespace pmlgame
