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

#include "pmlgame/schedule.h"

#include <cmath>
#include <sstream>

#include "pmlgame/error.h"

namespace pmlgame {
namespace {

double HarmonicValue(const HarmonicParams& h, int k) {
  return h.q1 / (h.q2 + h.q3 * static_cast<double>(k));
}

void ValidateHarmonic(const HarmonicParams& h, const char* what) {
  Check(std::isfinite(h.q1) && std::isfinite(h.q2) && std::isfinite(h.q3),
        ErrorCode::kInvalidSchedule, std::string(what) + " must be finite");
  Check(h.q1 > 0.0 && h.q2 > 0.0 && h.q3 >= 0.0, ErrorCode::kInvalidSchedule,
        std::string(what) + " needs q1 > 0, q2 > 0, q3 >= 0");
}

}  // namespace

NoiseSchedule NoiseSchedule::Polynomial(double p1, double p2, double p3) {
  NoiseSchedule s;
  s.kind = Kind::kPolynomial;
  s.p1 = p1;
  s.p2 = p2;
  s.p3 = p3;
  s.Validate();
  return s;
}

NoiseSchedule NoiseSchedule::Geometric(double d, double qbar) {
  NoiseSchedule s;
  s.kind = Kind::kGeometric;
  s.d = d;
  s.qbar = qbar;
  s.Validate();
  return s;
}

double NoiseSchedule::Scale(int k) const {
  switch (kind) {
    case Kind::kZero:
      return 0.0;
    case Kind::kPolynomial:
      return p1 + p2 * std::pow(static_cast<double>(k), p3);
    case Kind::kGeometric:
      return d * std::pow(qbar, static_cast<double>(k));
  }
  return 0.0;
}

void NoiseSchedule::Validate() const {
  switch (kind) {
    case Kind::kZero:
      return;
    case Kind::kPolynomial:
      Check(std::isfinite(p1) && std::isfinite(p2) && std::isfinite(p3),
            ErrorCode::kInvalidSchedule, "noise parameters must be finite");
      Check(p1 >= 0.0 && p2 >= 0.0 && p3 >= 0.0, ErrorCode::kInvalidSchedule,
            "polynomial noise needs p1, p2, p3 >= 0");
      // M^0 = p1 + p2 * 0^p3 must already be positive; later terms only grow.
      Check(Scale(0) > 0.0, ErrorCode::kInvalidSchedule,
            "polynomial noise needs M^0 > 0 (p1 > 0, or p2 > 0 with p3 = 0)");
      return;
    case Kind::kGeometric:
      Check(std::isfinite(d) && d > 0.0, ErrorCode::kInvalidSchedule,
            "geometric noise needs d > 0");
      Check(qbar > 0.0 && qbar < 1.0, ErrorCode::kInvalidSchedule,
            "geometric noise needs 0 < qbar < 1");
      return;
  }
}

std::string NoiseSchedule::Describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kZero:
      out << "zero";
      break;
    case Kind::kPolynomial:
      out << "polynomial(" << p1 << "," << p2 << "," << p3 << ")";
      break;
    case Kind::kGeometric:
      out << "geometric(" << d << "," << qbar << ")";
      break;
  }
  return out.str();
}

StepSchedule StepSchedule::Harmonic(double q1, double q2, double q3) {
  StepSchedule s;
  s.kind = Kind::kHarmonic;
  s.harmonic = {q1, q2, q3};
  s.Validate();
  return s;
}

StepSchedule StepSchedule::Geometric(double c, double q) {
  StepSchedule s;
  s.kind = Kind::kGeometric;
  s.c = c;
  s.q = q;
  s.Validate();
  return s;
}

double StepSchedule::Step(int k) const {
  if (kind == Kind::kHarmonic) return HarmonicValue(harmonic, k);
  return c * std::pow(q, static_cast<double>(k));
}

double StepSchedule::Mixing(int k) const {
  if (gamma) return HarmonicValue(*gamma, k);
  if (kind == Kind::kHarmonic) return HarmonicValue(harmonic, k);
  return HarmonicValue(HarmonicParams{}, k);
}

void StepSchedule::Validate() const {
  if (kind == Kind::kHarmonic) {
    ValidateHarmonic(harmonic, "harmonic step");
  } else {
    Check(std::isfinite(c) && c > 0.0, ErrorCode::kInvalidSchedule,
          "geometric step needs c > 0");
    Check(q > 0.0 && q < 1.0, ErrorCode::kInvalidSchedule,
          "geometric step needs 0 < q < 1");
  }
  if (gamma) ValidateHarmonic(*gamma, "mixing schedule");
}

std::string StepSchedule::Describe() const {
  std::ostringstream out;
  if (kind == Kind::kHarmonic) {
    out << "harmonic(" << harmonic.q1 << "," << harmonic.q2 << ","
        << harmonic.q3 << ")";
  } else {
    out << "geometric(" << c << "," << q << ")";
  }
  return out.str();
}

}  // namespace pmlgame
