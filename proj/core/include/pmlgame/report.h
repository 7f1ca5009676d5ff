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

#ifndef PMLGAME_REPORT_H_
#define PMLGAME_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "pmlgame/accountant.h"
#include "pmlgame/serialization.h"

namespace pmlgame {

struct ReportOptions {
  SamplerConfig sampler;
  // Exact leakage for every run and boundary sample.
  bool exact = true;
  // Players whose individual leakage is evaluated.
  std::vector<int> individual_players = {0};
  // When set, also report the observation-free uniform bound with this
  // gradient bound over the run horizon.
  std::optional<double> analytic_gradient_bound;
  // Set for correlated binary priors; adds the envelope quantities.
  std::optional<CorrelatedBinarySpec> correlated;
};

struct ExactSample {
  std::string observation;
  double value = 0.0;
};

struct IndividualSample {
  int player = 0;
  std::string observation;
  double value = 0.0;
};

struct CorrelatedSummary {
  double alpha = 0.0;
  double beta = 0.0;
  double eps_max = 0.0;
  // Measured at the equal-observation probe.
  double eps_o = 0.0;
  double probe_leakage = 0.0;
  // log of the envelopes.
  double lower = 0.0;
  double upper = 0.0;
};

struct PrivacyReport {
  int n_players = 0;
  int horizon = 0;
  std::size_t support_size = 0;
  SamplerConfig sampler;
  PmlBounds bounds;
  std::optional<double> uniform_analytic;
  std::vector<ExactSample> exact_pml;
  std::vector<IndividualSample> exact_pml_individual;
  std::optional<CorrelatedSummary> correlated;
  std::vector<std::string> notes;
};

PrivacyReport BuildReport(const Mechanism& mech, const DiscretePrior& prior,
                          const ReportOptions& options);

Json ReportToJson(const PrivacyReport& report);
PrivacyReport ReportFromJson(const Json& j);

}  // namespace pmlgame

#endif  // PMLGAME_REPORT_H_
