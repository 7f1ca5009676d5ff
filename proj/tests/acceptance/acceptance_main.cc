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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pmlgame/accountant.h"
#include "pmlgame/adversary.h"
#include "pmlgame/correlated.h"
#include "pmlgame/error.h"
#include "pmlgame/experiment.h"
#include "pmlgame/separation.h"
#include "support/instances.h"

namespace pmlgame {
namespace {

using testing::Instance;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

bool IsRunOrBoundary(const ObservationSample& s) {
  return s.kind != ObservationSample::Kind::kMatchedProbe;
}

// Exact leakage never exceeds the sampled expectation bound.
void Soundness(Outcome& out) {
  SamplerConfig cfg;
  cfg.n_runs = 200;
  cfg.probes_per_run = 1;
  double worst_gap = -INFINITY;
  std::size_t checked = 0;
  for (const Instance& in : testing::SoundnessInstances()) {
    const auto samples = SampleObservations(in.mech, in.prior, cfg);
    const double bound =
        ComputeBounds(in.mech, in.prior, samples, false).expectation.epsilon;
    for (const auto& s : samples) {
      if (!IsRunOrBoundary(s)) continue;
      const double exact = ExactPml(in.mech, in.prior, s.o);
      worst_gap = std::max(worst_gap, exact - bound);
      out.Require(exact <= bound + 1e-9, in.name + " " + s.id);
      ++checked;
    }
  }
  out.detail << checked << " sequences, max(exact - bound) = " << worst_gap;
}

void Ordering(Outcome& out) {
  SamplerConfig cfg;
  cfg.n_runs = 200;
  cfg.probes_per_run = 1;
  double min_slack = INFINITY;
  for (const Instance& in : testing::SoundnessInstances()) {
    const auto samples = SampleObservations(in.mech, in.prior, cfg);
    const PmlBounds b = ComputeBounds(in.mech, in.prior, samples);
    const double n_eps = in.prior.n_players() * b.adjacent.epsilon;
    out.Require(b.expectation.epsilon <= n_eps + 1e-9, in.name + " vs group");
    out.Require(b.expectation.epsilon <= b.per_profile.epsilon + 1e-9,
                in.name + " vs per-profile");
    out.Require(b.per_profile.epsilon <= b.uniform.epsilon + 1e-9,
                in.name + " vs uniform");
    min_slack = std::min(min_slack, n_eps - b.expectation.epsilon);
  }
  out.detail << "12 instances, min(N eps_adj - bound) = " << min_slack;
}

void Envelope(Outcome& out) {
  const double alpha = 0.25, beta = 0.5;
  SamplerConfig cfg;
  cfg.n_runs = 40;
  cfg.probes_per_run = 2;
  for (int n : {2, 4, 8}) {
    const Instance in = testing::LinearCorrelatedInstance(n, 1.0, alpha, beta);
    const double eps =
        AdjacentEpsilon(in.mech, in.prior,
                        SampleObservations(in.mech, in.prior, cfg))
            .epsilon;
    const Sequence o = EqualObservationProbe(in.mech, in.prior, 0);
    const DensityTable table(in.mech, in.prior, o);
    const double eps_o = EpsilonO(in.prior, table);
    const double value = std::exp(ExactPmlIndividual(in.prior, table, 0));
    const double lo = CorrelatedLowerBound(alpha, beta, eps_o, n);
    const double hi = CorrelatedUpperBound(alpha, eps, n);
    out.Require(lo - 1e-6 <= value && value <= hi + 1e-6,
                "envelope at N=" + std::to_string(n));
    out.detail << "N=" << n << ": " << lo << " <= " << value << " <= " << hi
               << "; ";
  }
  double prev = 0.0, best = 0.0;
  for (int n = 2; n <= 16; ++n) {
    const Instance in = testing::LinearCorrelatedInstance(n, 1.0, alpha, beta);
    const Sequence o = EqualObservationProbe(in.mech, in.prior, 0);
    const double value = std::exp(ExactPmlIndividual(in.mech, in.prior, 0, o));
    out.Require(value >= prev - 1e-12, "monotone at N=" + std::to_string(n));
    prev = value;
    best = std::max(best, value);
  }
  out.Require(best >= 0.9 / alpha, "sweep reaches 0.9/alpha");
  out.detail << "sweep max " << best << " (target " << 0.9 / alpha << ")";
}

void Separation(Outcome& out) {
  const SeparationResult r = ConstructSeparation(0.5, 1.0, 0.25, 0.5);
  out.Require(r.dp_bound == 0.5, "dp bound equals 0.5");
  out.Require(r.individual_pml >= 1.0, "witness leakage >= 1");
  out.detail << "N=" << r.n_players << ", dp=" << r.dp_bound
             << ", individual=" << r.individual_pml;
}

void GeometricDp(Outcome& out) {
  const double formula = DpBoundGeometric(1, 1, 0.5, 1, 0.75);
  out.Require(formula == 6.0, "formula equals 6");
  // eps = 6 makes the cost gap C = 1.
  const Instance in = testing::LinearCorrelatedInstance(2, 6.0, 0.25, 0.5);
  SamplerConfig cfg;
  cfg.n_runs = 500;
  const auto samples = SampleObservations(in.mech, in.prior, cfg);
  const BoundEstimate adj = AdjacentEpsilon(in.mech, in.prior, samples);
  out.Require(adj.epsilon <= 6.0, "empirical adjacent level <= 6");
  out.detail << "formula " << formula << ", empirical " << adj.epsilon
             << " over " << adj.n_observations
             << " sequences (C=" << in.prior.entry(0).disease().a[0]
             << ", T=" << in.mech.horizon << ")";
}

void ReplayOracles(Outcome& out) {
  int bit_exact = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const Instance in = testing::BinaryInstance(
        2 + seed % 3, 20, 0.3, testing::BinaryKind::kIndependent, seed);
    const Mechanism& m = in.mech;
    const CostProfile f = in.prior.profile(seed % in.prior.size());
    const Trajectory t =
        Run(m.game, f, m.rule, m.noise, m.steps, m.horizon, m.x0, seed);
    const Replayed r = Replay(m.game, f, t.o, m.rule, m.steps, m.x0);
    if (r.x == t.x && r.v == t.v) ++bit_exact;
  }
  out.Require(bit_exact == 50, "bit-exact replay");

  double worst_rel = 0.0;
  int sandwich_ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Instance in =
        testing::BinaryInstance(2 + trial % 2, 1 + trial % 6, 0.3,
                                trial % 3 ? testing::BinaryKind::kIndependent
                                          : testing::BinaryKind::kCorrelated,
                                5000 + trial);
    const Mechanism& m = in.mech;
    const CostProfile f = in.prior.profile(0);
    const CostProfile g = in.prior.profile(in.prior.size() - 1 - trial % 2);
    const Sequence o =
        Run(m.game, f, m.rule, m.noise, m.steps, m.horizon, m.x0, trial).o;
    const double log_ratio =
        LogDensity(m.game, f, o, m.rule, m.noise, m.steps, m.x0) -
        LogDensity(m.game, g, o, m.rule, m.noise, m.steps, m.x0);
    const Sequence v = testing::StraightLineEstimates(f, o, m.steps, m.x0);
    const Sequence w = testing::StraightLineEstimates(g, o, m.steps, m.x0);
    double q = 0.0, sandwich = 0.0;
    for (int k = 0; k <= m.horizon; ++k) {
      const double scale = m.noise.Scale(k);
      for (int i = 0; i < f.n_players(); ++i) {
        q -= ((o[k][i] - v[k][i]).lpNorm<1>() -
              (o[k][i] - w[k][i]).lpNorm<1>()) /
             scale;
        sandwich += (v[k][i] - w[k][i]).lpNorm<1>() / scale;
      }
    }
    worst_rel =
        std::max(worst_rel, std::fabs(std::exp(log_ratio) / std::exp(q) - 1.0));
    if (std::fabs(log_ratio) <= sandwich + 1e-12) ++sandwich_ok;
  }
  out.Require(worst_rel <= 1e-12, "density ratio vs product");
  out.Require(sandwich_ok == 200, "sensitivity sandwich");
  out.detail << bit_exact << "/50 bit-exact, max rel err " << worst_rel
             << ", sandwich " << sandwich_ok << "/200";
}

void AdversaryChecks(Outcome& out) {
  Rng rng(2026);
  const StepSchedule steps = StepSchedule::Harmonic(1, 1, 1);
  auto random_profile = [&](int n, int dim) {
    Profile p;
    for (int i = 0; i < n; ++i) {
      Vec v(dim);
      for (int r = 0; r < dim; ++r) v[r] = rng.Uniform(-1, 1);
      p.push_back(v);
    }
    return p;
  };
  double worst_rel = 0.0;
  const double h = 1e-6;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 3, dim = 1 + trial % 3;
    AdversaryState s = InitAdversary(random_profile(n, dim), trial);
    s.x_hat = random_profile(n, dim);
    const Profile ok = random_profile(n, dim), ok1 = random_profile(n, dim);
    const AttackGradient g = AttackLossGradient(s, ok, ok1, steps, trial % 4);
    const Vec analytic = FlattenTheta(g.a, g.b);
    std::vector<double*> params;
    for (Vec& a : s.a_hat) {
      for (Eigen::Index r = 0; r < a.size(); ++r) params.push_back(&a[r]);
    }
    for (Mat& b : s.b_hat) {
      for (Eigen::Index e = 0; e < b.size(); ++e) params.push_back(&b(e));
    }
    Vec numeric(analytic.size());
    for (std::size_t p = 0; p < params.size(); ++p) {
      const double saved = *params[p];
      *params[p] = saved + h;
      const double up = AttackLoss(s, ok, ok1, steps, trial % 4);
      *params[p] = saved - h;
      const double down = AttackLoss(s, ok, ok1, steps, trial % 4);
      *params[p] = saved;
      numeric[p] = (up - down) / (2 * h);
    }
    worst_rel =
        std::max(worst_rel, (analytic - numeric).norm() / analytic.norm());
  }
  out.Require(worst_rel < 1e-5, "finite differences");

  double worst_loss = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance in = testing::BinaryInstance(
        2 + seed % 3, 40, 0.3, testing::BinaryKind::kIndependent, seed);
    const Mechanism& m = in.mech;
    const CostProfile f = in.prior.profile(seed % in.prior.size());
    const Trajectory t = Run(m.game, f, m.rule, NoiseSchedule::Zero(), m.steps,
                             m.horizon, m.x0, seed);
    AdversaryState s;
    for (const PlayerCost& c : f.entries) {
      s.a_hat.push_back(c.disease().a);
      s.b_hat.push_back(c.disease().b);
    }
    s.x_hat = t.o[0];
    for (int k = 0; k < m.horizon; ++k) {
      worst_loss =
          std::max(worst_loss, AttackLoss(s, t.o[k], t.o[k + 1], m.steps, k));
      s = AttackStep(s, t.o[k], t.o[k + 1], m.steps, k);
    }
  }
  out.Require(worst_loss < 1e-18, "zero loss at truth");
  out.detail << "max gradient rel err " << worst_rel << ", max loss at truth "
             << worst_loss;
}

void FigureOne(Outcome& out) {
  const ExperimentConfig cfg =
      LoadConfig(testing::SourcePath("configs/figure1_disease.json"));
  const std::vector<GainSeries> series = AttackSeries(cfg, 1);
  std::vector<double> finals;
  for (const GainSeries& s : series) {
    finals.push_back(s.leakage.mean_gain.back());
    out.Require(s.leakage.log_mean_gain.front() == 0.0,
                s.label + " baseline log gain is 0");
    out.detail << s.label << " " << finals.back() << "; ";
  }
  out.Require(series.size() == 4, "four noise levels");
  for (std::size_t l = 1; l < finals.size(); ++l) {
    out.Require(finals[l - 1] > finals[l], "ordering " + series[l].label);
  }
  out.Require(!finals.empty() && finals[0] >= 1.8, "noiseless final >= 1.8");
  out.detail << SampleSeeds(cfg.run).size() << " samples";
}

void FigureTwoThree(Outcome& out) {
  const Figure2Data f2 = Figure2(
      LoadConfig(testing::SourcePath("configs/figure2_disease.json")), 1);
  double margin = INFINITY;
  for (const Figure2Row& r : f2.rows) {
    out.Require(
        r.empirical_leakage <= r.pml_bound,
        "figure 2 empirical <= pml at t=" + std::to_string(r.iteration));
    out.Require(r.pml_bound <= r.dp_group_bound,
                "figure 2 pml <= dp at t=" + std::to_string(r.iteration));
    if (r.iteration > 0) {
      margin = std::min(margin, r.pml_bound - r.empirical_leakage);
    }
  }
  out.detail << "figure 2: " << f2.rows.size() << " points, min margin (t>0) "
             << margin << "; ";

  const Figure3Data f3 = Figure3(
      LoadConfig(testing::SourcePath("configs/figure3_correlated.json")), 1);
  int crossing = -1, empirical_above = -1;
  for (const Figure3Row& r : f3.rows) {
    if (crossing < 0 && r.pml_lower > r.dp_group_bound) crossing = r.n_players;
    if (empirical_above < 0 && r.empirical_individual > r.dp_group_bound) {
      empirical_above = r.n_players;
    }
  }
  out.Require(crossing > 0, "figure 3 lower bound crosses dp");
  out.Require(empirical_above > 0 && empirical_above <= 20,
              "figure 3 empirical above dp");
  out.detail << "figure 3: crossing N*=" << crossing
             << ", empirical above dp from N=" << empirical_above;
}

void Convergence(Outcome& out) {
  Rng rng(10);
  const int n = 5, dim = 3;
  const AggregativeGame game = AggregativeGame::Uniform(
      n, dim, CostFamily::kQuadraticTest, ConstraintSet::Unbounded());
  CostProfile f;
  for (int i = 0; i < n; ++i)
    f.entries.push_back(testing::RandomQuadratic(dim, rng));
  const Profile x0 = InitialStrategies(game, 3);
  const Trajectory t =
      Run(game, f, UpdateRule::FullAveraging(n), NoiseSchedule::Zero(),
          StepSchedule::Harmonic(0.5, 1.0, 0.0), 2000, x0, 1);
  const double residual = NeResidual(game, f, t.x.back());
  const Profile ne = testing::SolveQuadraticNe(f);
  double distance = 0.0;
  for (int i = 0; i < n; ++i) {
    distance = std::max(distance, (t.x.back()[i] - ne[i]).norm());
  }
  out.Require(residual < 1e-6, "ne residual");
  out.Require(distance < 1e-6, "distance to linear-solve NE");
  out.detail << "residual " << residual << ", distance to NE " << distance;
}

}  // namespace
}  // namespace pmlgame

int main() {
  using Check = std::function<void(pmlgame::Outcome&)>;
  const std::vector<std::pair<const char*, Check>> criteria = {
      {"leakage bound soundness", pmlgame::Soundness},
      {"bound ordering", pmlgame::Ordering},
      {"correlated envelope and limit", pmlgame::Envelope},
      {"PML/DP separation", pmlgame::Separation},
      {"geometric DP level", pmlgame::GeometricDp},
      {"replay and density oracles", pmlgame::ReplayOracles},
      {"adversary gradients", pmlgame::AdversaryChecks},
      {"gain ordering across noise levels", pmlgame::FigureOne},
      {"bound and envelope figures", pmlgame::FigureTwoThree},
      {"NE convergence", pmlgame::Convergence},
  };
  int failures = 0;
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    pmlgame::Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[c].second(out);
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail << "exception: " << e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    failures += out.pass ? 0 : 1;
    std::printf("criterion %zu %s: %s (%.1fs) %s\n", c + 1,
                out.pass ? "PASS" : "FAIL", criteria[c].first, secs,
                out.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
