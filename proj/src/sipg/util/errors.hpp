/*
 * Copyright 2026 The sipgains authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace sipg {

enum class ErrorCode {
  invalid_input,
  rollout_diverged,
  gradient_failure,
  invalid_start,
  inconsistent_scenario,
  synthesis_infeasible,
  inconsistent_history,
  sampling_stalled,
  io_error,
  parse_error,
};

/// Library-wide exception. `detail_index` carries the failing step for
/// rollout divergence and is -1 otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, long detail_index = -1)
      : std::runtime_error(std::move(message)), code_(code), detail_index_(detail_index) {}

  ErrorCode code() const { return code_; }
  long detail_index() const { return detail_index_; }

 private:
  ErrorCode code_;
  long detail_index_;
};

[[noreturn]] inline void throw_invalid(const std::string& message) {
  throw Error(ErrorCode::invalid_input, message);
}

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::rollout_diverged: return "rollout_diverged";
    case ErrorCode::gradient_failure: return "gradient_failure";
    case ErrorCode::invalid_start: return "invalid_start";
    case ErrorCode::inconsistent_scenario: return "inconsistent_scenario";
    case ErrorCode::synthesis_infeasible: return "synthesis_infeasible";
    case ErrorCode::inconsistent_history: return "inconsistent_history";
    case ErrorCode::sampling_stalled: return "sampling_stalled";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::parse_error: return "parse_error";
  }
  return "unknown";
}

}  // namespace sipg
