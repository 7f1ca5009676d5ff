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

#include "pmlgame/correlated.h"

#include <cmath>

#include "pmlgame/error.h"

namespace pmlgame {
namespace {

void CheckAlpha(double alpha) {
  Check(alpha > 0.0 && alpha < 0.5, ErrorCode::kInvalidInput,
        "alpha must lie in (0, 0.5)");
}

void CheckPlayers(int n_players) {
  Check(n_players >= 2 && n_players <= 1000, ErrorCode::kInvalidInput,
        "player count must lie in [2, 1000]");
}

// (1 - alpha) R + alpha, inverted.
double Envelope(double alpha, double ratio) {
  return 1.0 / ((1.0 - alpha) * ratio + alpha);
}

double Ratio(double coef, double beta, double eps_o, int n_players) {
  const double m = n_players - 1;
  // e^{-eps_o (N-1)} and B computed from logs so large N stays finite.
  const double tail = std::exp(-eps_o * m);
  const double b =
      std::exp(std::log1p(-beta) + m * std::log1p(std::exp(-eps_o)));
  return std::exp(-eps_o) * (coef * tail + b) / (coef + b);
}

}  // namespace

double CorrelatedUpperBound(double alpha, double eps, int n_players) {
  CheckAlpha(alpha);
  CheckPlayers(n_players);
  Check(eps >= 0.0, ErrorCode::kInvalidInput, "epsilon must be >= 0");
  return Envelope(alpha, std::exp(-n_players * eps));
}

double CorrelatedLowerBound(double alpha, double beta, double eps_o,
                            int n_players) {
  CheckAlpha(alpha);
  CheckPlayers(n_players);
  Check(beta > 0.0 && beta < 1.0, ErrorCode::kInvalidInput,
        "beta must lie in (0, 1)");
  Check(eps_o >= 0.0, ErrorCode::kInvalidInput, "eps_o must be >= 0");
  const double coef = std::ldexp(beta, n_players - 1) - 1.0;
  return Envelope(alpha, Ratio(coef, beta, eps_o, n_players));
}

double CorrelatedLowerBoundUnweighted(double alpha, double beta, double eps_o,
                                      int n_players) {
  CheckAlpha(alpha);
  CheckPlayers(n_players);
  Check(beta > 0.0 && beta < 1.0, ErrorCode::kInvalidInput,
        "beta must lie in (0, 1)");
  Check(eps_o >= 0.0, ErrorCode::kInvalidInput, "eps_o must be >= 0");
  const double coef = std::ldexp(1.0, n_players - 1) - 1.0;
  return Envelope(alpha, Ratio(coef, beta, eps_o, n_players));
}

}  // namespace pmlgame
