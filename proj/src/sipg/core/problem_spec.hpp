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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sipg/core/bounded_set.hpp"
#include "sipg/core/policy.hpp"
#include "sipg/core/system_model.hpp"
#include "sipg/core/trajectory.hpp"
#include "sipg/core/types.hpp"

namespace sipg {

/// Uncertainty sets for one problem. w_set / v_set apply independently at
/// every time step.
struct UncertaintySpec {
  BoundedSet rho_f_set = BoundedSet::empty();
  BoundedSet rho_h_set = BoundedSet::empty();
  BoundedSet w_set = BoundedSet::empty();
  BoundedSet v_set = BoundedSet::empty();
};

/// Scalar objective over a rolled-out trajectory. The built-in kind
/// `terminal_tracking(indices, targets)` evaluates
///   sum_i (x_{indices[i], k+N} - targets[i])^2.
struct CostSpec {
  enum class Kind { terminal_tracking, custom };

  Kind kind = Kind::terminal_tracking;
  std::vector<int> indices;
  Vec targets;
  std::function<double(const TrajectoryBundle&, const Scenario&)> custom;
  std::string name = "terminal_tracking";

  static CostSpec terminal_tracking(std::vector<int> indices, Vec targets);
  static CostSpec custom_fn(std::string name,
                            std::function<double(const TrajectoryBundle&, const Scenario&)> fn);

  double eval(const TrajectoryBundle& bundle, const Scenario& scenario) const;
};

/// Scalar path constraint, satisfied iff value <= 0. The built-in kind
/// `terminal_bound(index, limit)` evaluates x_{index, k+N} - limit.
struct ConstraintSpec {
  enum class Kind { terminal_bound, custom };

  Kind kind = Kind::terminal_bound;
  int index = 0;
  double limit = 0.0;
  std::function<double(const TrajectoryBundle&, const Scenario&)> custom;
  std::string name = "terminal_bound";

  static ConstraintSpec terminal_bound(int index, double limit);
  static ConstraintSpec custom_fn(std::string name,
                                  std::function<double(const TrajectoryBundle&, const Scenario&)> fn);

  double eval(const TrajectoryBundle& bundle, const Scenario& scenario) const;
};

/// Box on the oldest state x_{k-M}; entries may be +-inf for unconstrained
/// coordinates.
struct BetaBox {
  Vec lo;
  Vec hi;
};

/// One complete gain-design instance.
struct ProblemSpec {
  SystemModel model;
  UncertaintySpec uncertainty;
  int N = 1;  // prediction horizon
  int M = 0;  // measurement memory
  TimeSeries Y0;  // M + 1 measurements for steps k-M .. k
  TimeSeries U0;  // M inputs for steps k-M .. k-1
  std::optional<BetaBox> beta_box;
  CostSpec cost;
  std::vector<ConstraintSpec> path_constraints;
  PolicyForm policy;

  int total_steps() const { return M + N + 1; }
  ScenarioLayout scenario_layout() const;

  /// Throws invalid_input when any invariant fails.
  void validate() const;
};

}  // namespace sipg
