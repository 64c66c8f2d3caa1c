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

#include "sipg/core/policy.hpp"

namespace sipg {

/// Gains file contents: the policy parameters, the dimensions they were
/// synthesized for, and optionally the synthesis worst-case cost bound.
struct GainsFile {
  PolicyParams params;
  int n_u = 0;
  int n_y = 0;
  int horizon = 0;
  int lags = 0;
  std::optional<double> tau;

  std::string write() const;  // key = value text, 17 significant digits
  static GainsFile parse(const std::string& text);
  static GainsFile load(const std::string& path);
  void save(const std::string& path) const;
};

}  // namespace sipg
