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

#ifndef PMLGAME_ACCOUNTANT_H_
#define PMLGAME_ACCOUNTANT_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pmlgame/density_table.h"
#include "pmlgame/engine.h"
#include "pmlgame/prior.h"

namespace pmlgame {

// ||v^k - v'^k||_1 summed over players, where v and v' replay o under f and
// f'. Zero at k = 0 because both replays start from x0.
double Sensitivity(const Mechanism& mech, const CostProfile& f,
                   const CostProfile& f_prime, const Sequence& o, int k);

// How observation sequences are drawn for the sampled infimum over o.
struct SamplerConfig {
  // Algorithm runs; support profiles are visited round robin.
  int n_runs = 200;
  // Extra sequences per run, each shifting every coordinate by
  // +-probe_shift * M^k. Probe 0 shifts up, probe 1 down, the rest use
  // random signs.
  int probes_per_run = 0;
  double probe_shift = 3.0;
  // Add matched probes to the adjacent certificate (see AdjacentEpsilon).
  bool matched_probes = true;
  std::uint64_t seed = 1;
};

struct ObservationSample {
  enum class Kind { kRun, kBoundaryProbe, kMatchedProbe };
  Kind kind = Kind::kRun;
  std::string id;
  std::uint64_t seed = 0;
  // Support position that generated the run.
  std::size_t profile = 0;
  Sequence o;
};

std::vector<ObservationSample> SampleObservations(const Mechanism& mech,
                                                  const DiscretePrior& prior,
                                                  const SamplerConfig& cfg);

// Observation sequences at which the log ratio between player i's costs a
// and b equals the full sensitivity bound sum_k ||v_i^k(a) - v_i^k(b)||/M^k.
// Player i's observation is set to its own replayed estimate under a, and
// one neighbour j absorbs the change so that i's input sum_j W_ij o_j stays
// the same. Empty if player i has no neighbour.
std::vector<Sequence> MatchedProbes(const Mechanism& mech,
                                    const DensityTable& table, int i);

// A sampled bound with the witnesses behind it.
struct BoundEstimate {
  double epsilon = 0.0;
  // Value for the observation prefix 0..t, t = 0..T.
  std::vector<double> series;
  std::size_t n_observations = 0;
  std::string witness_observation;
  std::string witness_profile;
  bool sampled = true;
};

struct PmlBounds {
  // -log min_{o, f'} E_f exp(-sum_k Delta(k, f, f', o) / M^k).
  BoundEstimate expectation;
  // Per-iteration sensitivities maximized over o and f' first.
  BoundEstimate per_profile;
  // Sensitivities maximized over o, f' and f.
  BoundEstimate uniform;
  // sup |log P(o|f) / P(o|f')| over sampled o and adjacent f, f'.
  BoundEstimate adjacent;
  // Adjacent level composed over all N players.
  double group_dp = 0.0;
};

// Evaluates all sampled bounds on one shared observation set. Only run and
// boundary samples enter the PML bounds; matched probes are generated from
// them for the adjacent certificate when cfg.matched_probes is set.
PmlBounds ComputeBounds(const Mechanism& mech, const DiscretePrior& prior,
                        const std::vector<ObservationSample>& samples,
                        bool matched_probes = true);

// The adjacent certificate alone. Needs no pairwise pass over the support,
// so it scales to the full 2^20 correlated supports.
BoundEstimate AdjacentEpsilon(const Mechanism& mech, const DiscretePrior& prior,
                              const std::vector<ObservationSample>& samples,
                              bool matched_probes = true);

double PmlBoundExpectation(const Mechanism& mech, const DiscretePrior& prior,
                           const std::vector<ObservationSample>& samples);
double PmlBoundPerProfile(const Mechanism& mech, const DiscretePrior& prior,
                          const std::vector<ObservationSample>& samples);
double PmlBoundUniform(const Mechanism& mech, const DiscretePrior& prior,
                       const std::vector<ObservationSample>& samples);

// Observation-free variant of the uniform bound for row-stochastic
// averaging: Delta(k+1) <= 2 N C1 lambda^k, so
// eps = sum_{k<T} 2 N C1 lambda^k / M^{k+1}. horizon < 0 sums to infinity
// and needs geometric schedules with q < qbar.
double PmlBoundUniformAnalytic(double c1, int n_players,
                               const StepSchedule& steps,
                               const NoiseSchedule& noise, int horizon);

// Adjacent-DP level 2cC qbar / (d (qbar - q)) for geometric schedules.
double DpBoundGeometric(double c_grad, double c, double q, double d,
                        double qbar);
// Exact adjacent level over horizon T for a cost whose gradient may change
// by 2C between neighbours: (2cC / (d qbar)) (1 - r^T) / (1 - r), r = q/qbar.
double DpBoundGeometricAtHorizon(double c_grad, double c, double q, double d,
                                 double qbar, int horizon);
// Largest T for which DpBoundGeometric still covers the horizon-T level.
int GeometricDpHorizon(double q, double qbar);

double GroupDpBound(double eps, int group_size);

// log sup_f P(o|f) / P(o).
double ExactPml(const DiscretePrior& prior, const DensityTable& table);
double ExactPml(const Mechanism& mech, const DiscretePrior& prior,
                const Sequence& o);

// log max_{f_i} P(o | F_i = f_i) / P(o).
double ExactPmlIndividual(const DiscretePrior& prior, const DensityTable& table,
                          int i);
double ExactPmlIndividual(const Mechanism& mech, const DiscretePrior& prior,
                          int i, const Sequence& o);

// max over players and patterns f_{-i} of the log ratio between a player's
// two costs. The density factorizes per player, so the pattern drops out.
double EpsilonO(const DiscretePrior& prior, const DensityTable& table);
double EpsilonO(const Mechanism& mech, const DiscretePrior& prior,
                const Sequence& o);

// Largest adjacent |log ratio| visible at one observation sequence.
double AdjacentLogRatio(const DensityTable& table, int t);

// Noiseless run of the profile with every player on pool entry `entry`: all
// players see the same observations, which is the equal-observation probe.
Sequence EqualObservationProbe(const Mechanism& mech,
                               const DiscretePrior& prior, int entry);

double LogSumExp(const std::vector<double>& values);

}  // namespace pmlgame

#endif  // PMLGAME_ACCOUNTANT_H_
