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

#ifndef PMLGAME_SCHEDULE_H_
#define PMLGAME_SCHEDULE_H_

#include <optional>
#include <string>

namespace pmlgame {

// Laplace scale M^k used at iteration k. M^k is the scale parameter of the
// density exp(-|z|/M)/(2M), not a variance.
struct NoiseSchedule {
  enum class Kind { kPolynomial, kGeometric, kZero };

  static NoiseSchedule Polynomial(double p1, double p2, double p3);
  static NoiseSchedule Geometric(double d, double qbar);
  static NoiseSchedule Zero() { return NoiseSchedule{}; }

  double Scale(int k) const;
  bool is_zero() const { return kind == Kind::kZero; }
  void Validate() const;
  std::string Describe() const;

  Kind kind = Kind::kZero;
  double p1 = 0.0, p2 = 0.0, p3 = 0.0;
  double d = 0.0, qbar = 0.0;
};

struct HarmonicParams {
  double q1 = 1.0, q2 = 1.0, q3 = 1.0;
};

// Step size lambda^k, plus the mixing weight gamma^k used by the consensus
// rule. When gamma is unset it reuses the harmonic step parameters.
struct StepSchedule {
  enum class Kind { kHarmonic, kGeometric };

  static StepSchedule Harmonic(double q1, double q2, double q3);
  static StepSchedule Geometric(double c, double q);

  double Step(int k) const;
  double Mixing(int k) const;
  void Validate() const;
  std::string Describe() const;

  Kind kind = Kind::kHarmonic;
  HarmonicParams harmonic;
  double c = 1.0, q = 0.5;
  std::optional<HarmonicParams> gamma;
};

}  // namespace pmlgame

#endif  // PMLGAME_SCHEDULE_H_
