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

#include "pmlgame/error.h"

namespace pmlgame {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "InvalidInput";
    case ErrorCode::kNonFinite:
      return "NonFinite";
    case ErrorCode::kEmptyPrior:
      return "EmptyPrior";
    case ErrorCode::kInvalidSchedule:
      return "InvalidSchedule";
    case ErrorCode::kSupportTooLarge:
      return "SupportTooLarge";
    case ErrorCode::kInfeasibleTarget:
      return "InfeasibleTarget";
    case ErrorCode::kNotReached:
      return "NotReached";
    case ErrorCode::kZeroVector:
      return "ZeroVector";
    case ErrorCode::kConfigError:
      return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace pmlgame
