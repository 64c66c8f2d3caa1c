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

#include "sipg/sip/builders.hpp"
#include "sipg/sip/scenario_set.hpp"

namespace sipg {

struct ReductionSettings {
  /// An adversary must beat the current tau by this margin to be added.
  double eps_cost = 1e-4;
  /// A constraint adversary must violate by more than this to be added.
  double eps_constraint = 1e-6;
  int max_scenarios = 50;
  int max_iterations = 30;
  SolverSettings inner;
  SolverSettings outer;
  double dedup_tol = 1e-9;
};

enum class Termination { converged, scenario_cap, iteration_cap };

const char* termination_name(Termination t);

/// One exchange iteration: the outer solve, then (unless this is the closing
/// re-solve) the adversary pass that follows it. Adversary fields are NaN on
/// rows without a pass.
struct IterationRecord {
  int iteration = 0;
  double tau = 0.0;
  double worst_inner_cost = 0.0;
  double worst_violation = 0.0;
  int scenario_count = 0;
  int added = 0;
  /// Inner solutions that could not be validated into scenarios this pass.
  int failed_extractions = 0;
  SolveStatus outer_status = SolveStatus::max_iters;
  std::vector<SolveStatus> inner_statuses;
  /// Independent replay after the outer solve: max over stored scenarios of
  /// max(J - tau, g_i); at a clean solve this is <= tol_feas.
  double outer_replay_excess = 0.0;
};

struct SynthesisReport {
  PolicyParams params_star;
  double tau_star = 0.0;
  int iterations = 0;
  ScenarioSet scenario_set;
  std::vector<IterationRecord> history;
  Termination terminated_by = Termination::iteration_cap;
};

/// Local-reduction (scenario exchange) loop: alternates the discretized outer
/// minimization with adversarial inner maximizations, growing the scenario
/// set with independently re-verified violators until none can be found or a
/// cap is reached. When a cap fires with fresh scenarios pending, one closing
/// outer solve re-optimizes the gains against the final set.
/// Throws synthesis_infeasible when the measurement history admits no
/// consistent scenario or the outer problem cannot be made feasible.
SynthesisReport local_reduction(const ProblemSpec& spec, const ReductionSettings& settings);

}  // namespace sipg
