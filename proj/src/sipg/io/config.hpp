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

#include <optional>
#include <string>

#include "sipg/core/problem_spec.hpp"
#include "sipg/sip/reduction.hpp"
#include "sipg/zoo/models.hpp"

namespace sipg {

/// Flat key/value problem configuration with dotted section prefixes
/// (`model.name = quadrotor`, `reduction.max_scenarios = 50`). Lines are
/// `key = value`; `#` starts a comment. Unknown or duplicate keys are
/// rejected. Every field is optional except model.name and defaults to the
/// registry spec value.
struct ConfigFile {
  std::string model_name;
  double ts = 0.1;
  PolicyKind policy_kind = PolicyKind::open_loop;
  std::optional<double> gain_lo, gain_hi, ff_lo, ff_hi;
  ReductionSettings reduction;
  std::uint64_t seed = 0;
  int validate_runs = 1000;

  static ConfigFile parse(const std::string& text);
  static ConfigFile load(const std::string& path);

  /// Canonical serialization: every effective value, one key per line.
  /// parse(write()) reproduces the ConfigFile exactly.
  std::string write() const;

  /// Registry spec with the overrides applied and re-validated.
  ProblemSpec build_spec() const;
};

}  // namespace sipg
