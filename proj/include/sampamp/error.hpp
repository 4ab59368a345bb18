// Copyright 2026 The sampamp Authors
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

#ifndef SAMPAMP_ERROR_HPP_
#define SAMPAMP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace sampamp {

enum class ErrorCode {
  kDomain,
  kValidation,
  kNotPsd,
  kInsufficientSamples,
  kRequiresEvenN,
  kDegenerateSupport,
  kNoSufficientStatistic,
  kUnsupported,
  kGuaranteeUnavailable,
  kAssumptionFailure,
  kInconclusive,
  kImpossible,
  kIo,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kNotPsd: return "not-psd";
    case ErrorCode::kInsufficientSamples: return "insufficient-samples";
    case ErrorCode::kRequiresEvenN: return "requires-even-n";
    case ErrorCode::kDegenerateSupport: return "degenerate-support";
    case ErrorCode::kNoSufficientStatistic: return "no-sufficient-statistic";
    case ErrorCode::kUnsupported: return "unsupported";
    case ErrorCode::kGuaranteeUnavailable: return "guarantee-unavailable";
    case ErrorCode::kAssumptionFailure: return "assumption-failure";
    case ErrorCode::kInconclusive: return "inconclusive";
    case ErrorCode::kImpossible: return "impossible";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

// Every library failure is an Error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) fail(code, message);
}

}  // namespace sampamp

#endif  // SAMPAMP_ERROR_HPP_
