// Copyright 2026 The augrl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace augrl {

enum class ErrorCode {
  InvalidShape,
  InvalidValue,
  FormatError,
  InvalidStrength,
  NotApplicable,
  DiversityTooLarge,
  NotPresampled,
  InvalidSchedule,
  CounterOverflow,
  DegenerateDenominator,
  DegenerateVariance,
  DivergedAtStep,
  ConfigError,
  IoError,
};

std::string_view error_name(ErrorCode code) noexcept;

/// Every module reports failures through this exception; `code()` is the
/// stable, machine-checkable part and `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace augrl
