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

#ifndef PMLGAME_ERROR_H_
#define PMLGAME_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmlgame {

enum class ErrorCode {
  kInvalidInput,
  kNonFinite,
  kEmptyPrior,
  kInvalidSchedule,
  kSupportTooLarge,
  kInfeasibleTarget,
  kNotReached,
  kZeroVector,
  kConfigError,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure in the library surfaces as an Error carrying a code, so
// callers can branch on the category without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

inline void Check(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace pmlgame

#endif  // PMLGAME_ERROR_H_
