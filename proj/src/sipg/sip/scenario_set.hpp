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

#include <vector>

#include "sipg/core/trajectory.hpp"

namespace sipg {

enum class ScenarioOrigin { initial, cost_adversary, constraint_adversary };

const char* scenario_origin_name(ScenarioOrigin origin);

struct ScenarioRecord {
  Scenario scenario;
  ScenarioOrigin origin = ScenarioOrigin::initial;
  int constraint_index = -1;   // for constraint adversaries
  int added_iteration = 0;     // reduction iteration that added it
  double replay_value = 0.0;   // independently replayed J (cost) or g (constraint) at addition
  double tau_at_add = 0.0;     // outer tau when the scenario qualified
};

/// Ordered exchange set. Two scenarios are considered identical when their
/// packings agree elementwise within dedup_tol; duplicates are rejected.
class ScenarioSet {
 public:
  explicit ScenarioSet(ScenarioLayout layout, double dedup_tol = 1e-9)
      : layout_(layout), dedup_tol_(dedup_tol) {}

  /// Returns false (and drops the record) when a duplicate is already stored.
  bool add(ScenarioRecord record);

  int size() const { return static_cast<int>(records_.size()); }
  bool empty() const { return records_.empty(); }
  const ScenarioRecord& operator[](int i) const { return records_[static_cast<std::size_t>(i)]; }
  const std::vector<ScenarioRecord>& records() const { return records_; }
  const ScenarioLayout& layout() const { return layout_; }
  double dedup_tol() const { return dedup_tol_; }

 private:
  ScenarioLayout layout_;
  double dedup_tol_;
  std::vector<ScenarioRecord> records_;
  std::vector<Vec> packed_;
};

}  // namespace sipg
