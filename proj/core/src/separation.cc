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

#include "pmlgame/separation.h"

#include <cmath>
#include <string>

#include "pmlgame/accountant.h"
#include "pmlgame/correlated.h"
#include "pmlgame/error.h"

namespace pmlgame {

Mechanism SeparationMechanism(const SeparationOptions& options, int horizon,
                              int n_players) {
  return Mechanism{AggregativeGame::Uniform(n_players, 1, CostFamily::kDisease,
                                            ConstraintSet::Unbounded()),
                   UpdateRule::FullAveraging(n_players),
                   NoiseSchedule::Geometric(options.d, options.qbar),
                   StepSchedule::Geometric(options.c, options.q),
                   horizon,
                   Profile(n_players, Vec::Zero(1))};
}

SeparationResult ConstructSeparation(double eps1, double eps2, double alpha,
                                     double beta,
                                     const SeparationOptions& options) {
  Check(eps1 > 0.0 && std::isfinite(eps1), ErrorCode::kInvalidInput,
        "eps1 must be positive");
  Check(eps2 > 0.0, ErrorCode::kInvalidInput, "eps2 must be positive");
  Check(alpha > 0.0 && alpha < 0.5, ErrorCode::kInvalidInput,
        "alpha must lie in (0, 0.5)");
  Check(beta > 0.0 && beta < 1.0, ErrorCode::kInvalidInput,
        "beta must lie in (0, 1)");
  Check(eps2 < std::log(1.0 / alpha), ErrorCode::kInfeasibleTarget,
        "eps2 must stay below log(1/alpha), the ceiling on individual "
        "leakage");
  Check(options.min_players >= 2 &&
            options.max_players <= kMaxCorrelatedPlayers &&
            options.min_players <= options.max_players,
        ErrorCode::kInvalidInput, "player range must lie in [2, 20]");

  const int max_horizon = GeometricDpHorizon(options.q, options.qbar);
  const int horizon = options.horizon < 0 ? max_horizon : options.horizon;
  Check(horizon >= 1 && horizon <= max_horizon, ErrorCode::kInvalidSchedule,
        "horizon must lie in [1, " + std::to_string(max_horizon) +
            "] for the geometric DP formula to hold");

  SeparationResult out;
  out.options = options;
  out.horizon = horizon;
  out.c_grad = options.d * (options.qbar - options.q) * eps1 /
               (2.0 * options.c * options.qbar);
  out.dp_bound = DpBoundGeometric(out.c_grad, options.c, options.q, options.d,
                                  options.qbar);
  out.dp_at_horizon = DpBoundGeometricAtHorizon(
      out.c_grad, options.c, options.q, options.d, options.qbar, horizon);

  const Mat zero = Mat::Zero(1, 1);
  out.spec.alpha = alpha;
  out.spec.beta = beta;
  out.spec.f0 = PlayerCost::Disease(Vec::Constant(1, out.c_grad), zero, 0);
  out.spec.f1 = PlayerCost::Disease(Vec::Constant(1, -out.c_grad), zero, 1);

  for (int n = options.min_players; n <= options.max_players; ++n) {
    out.spec.n_players = n;
    const DiscretePrior prior = CorrelatedPrior(out.spec);
    const Mechanism mech = SeparationMechanism(options, horizon, n);
    const Sequence o = EqualObservationProbe(mech, prior, 0);
    const DensityTable table(mech, prior, o);
    const double pml = ExactPmlIndividual(prior, table, 0);
    out.sweep.push_back(pml);
    if (pml >= eps2) {
      out.n_players = n;
      out.individual_pml = pml;
      out.eps_o = EpsilonO(prior, table);
      out.lower_envelope = CorrelatedLowerBound(alpha, beta, out.eps_o, n);
      out.upper_envelope = CorrelatedUpperBound(alpha, out.dp_at_horizon, n);
      out.witness = o;
      return out;
    }
  }
  Fail(ErrorCode::kNotReached,
       "individual leakage stayed below eps2 up to N = " +
           std::to_string(options.max_players));
}

}  // namespace pmlgame
