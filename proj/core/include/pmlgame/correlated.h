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

#ifndef PMLGAME_CORRELATED_H_
#define PMLGAME_CORRELATED_H_

namespace pmlgame {

// Leakage envelopes for player 0 under the correlated binary prior. All
// three return exp-scale values; take the log for nats.

// 1 / ((1 - alpha) e^{-N eps} + alpha), valid when every adjacent pair of
// profiles is eps-indistinguishable.
double CorrelatedUpperBound(double alpha, double eps, int n_players);

// 1 / ((1 - alpha) R + alpha) with
//   R = e^{-eps_o} (A e^{-eps_o (N-1)} + B) / (A + B),
//   A = 2^{N-1} beta - 1,  B = (1 - beta) (1 + e^{-eps_o})^{N-1}.
// R is the likelihood ratio P(o | F_0 = f1) / P(o | F_0 = f0) at an
// observation where every player sees the same values and each player's
// f1-versus-f0 log ratio equals -eps_o. The leakage at that observation
// equals this value.
double CorrelatedLowerBound(double alpha, double beta, double eps_o,
                            int n_players);

// Same shape with A replaced by 2^{N-1} - 1. This variant drops the beta
// weighting of the all-matching pattern and overstates the leakage, so it
// is not a lower bound; kept for comparison only.
double CorrelatedLowerBoundUnweighted(double alpha, double beta, double eps_o,
                                      int n_players);

}  // namespace pmlgame

#endif  // PMLGAME_CORRELATED_H_
