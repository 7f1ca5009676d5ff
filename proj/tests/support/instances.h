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

// Instances shared by the unit tests and the acceptance binary.

#ifndef PMLGAME_TESTS_SUPPORT_INSTANCES_H_
#define PMLGAME_TESTS_SUPPORT_INSTANCES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "pmlgame/density_table.h"
#include "pmlgame/prior.h"
#include "pmlgame/separation.h"

namespace pmlgame::testing {

struct Instance {
  std::string name;
  Mechanism mech;
  DiscretePrior prior;
};

// Disease cost with entries uniform on [0, 1].
PlayerCost RandomDisease(int dim, Rng& rng);
PlayerCost RandomQuadratic(int dim, Rng& rng);

enum class BinaryKind { kIndependent, kCorrelated };

// Two disease costs per player under polynomial noise M^k = 1 + 0.5k and
// harmonic steps; alpha is the mass of the first cost (independent) or of
// player 0's first cost (correlated, beta = 0.5).
Instance BinaryInstance(int n_players, int horizon, double alpha,
                        BinaryKind kind, std::uint64_t seed);

// The twelve instances used by the soundness and ordering checks:
// N in {2, 3} x T in {2, 5} x {independent 0.2, independent 0.4,
// correlated 0.4}.
std::vector<Instance> SoundnessInstances();

// One-dimensional linear costs a = +C and a = -C under geometric schedules,
// with C chosen so the geometric DP formula equals eps.
Instance LinearCorrelatedInstance(int n_players, double eps, double alpha,
                                  double beta,
                                  const SeparationOptions& options = {});

// FullAveraging estimates with uniform weights and no projection, written
// out step by step for disease costs without going through the engine.
Sequence StraightLineEstimates(const CostProfile& f, const Sequence& o,
                               const StepSchedule& steps, const Profile& x0);

// NE of an unconstrained quadratic game by one linear solve.
Profile SolveQuadraticNe(const CostProfile& f);

// Absolute path of a file in the source tree.
std::string SourcePath(const std::string& relative);

}  // namespace pmlgame::testing

#endif  // PMLGAME_TESTS_SUPPORT_INSTANCES_H_
