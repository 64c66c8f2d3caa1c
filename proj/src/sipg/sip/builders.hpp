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

#include "sipg/core/problem_spec.hpp"
#include "sipg/core/rollout.hpp"
#include "sipg/nlp/problem.hpp"
#include "sipg/sip/scenario_set.hpp"

namespace sipg {

/// Adversarial maximization over the uncertainty realization, in reduced
/// space: the decision vector is a packed Scenario (x_init, rho_f, rho_h, W,
/// V); future trajectory variables are eliminated by rollout substitution.
/// Box-shaped memberships fold into variable bounds; remaining memberships
/// become smooth inequalities; consistency with the measurement history forms
/// the equality block. The objective is the negated cost / constraint value,
/// so minimizing solves the max problem.
struct InnerProblem {
  NlpProblem nlp;
  ScenarioLayout layout;
};

/// Optional box on the initial-state variables of the adversarial problems.
/// Any box that contains the history-consistent set (an inflated
/// feasible_box) is valid: it leaves the feasible set untouched while
/// removing the unbounded directions along which the penalized subproblems
/// would otherwise run away, and it gives the multi-start sampler a real
/// domain for the initial state.
struct XInitBox {
  Vec lo;
  Vec hi;
};

InnerProblem build_inner_max_cost(const ProblemSpec& spec, const PolicyParams& params,
                                  const std::optional<XInitBox>& x_init_box = std::nullopt);
InnerProblem build_inner_max_constraint(const ProblemSpec& spec, const PolicyParams& params,
                                        int constraint_index,
                                        const std::optional<XInitBox>& x_init_box = std::nullopt);

/// Folds a bounded set over z[offset .. offset+dim) into variable bounds and,
/// for non-box kinds, smooth inequality constraints on the NLP.
void fold_set(NlpProblem& nlp, const BoundedSet& set, int offset);

/// Discretized outer minimization over (policy parameters, epigraph tau):
/// objective tau, inequalities J(rollout(params, s)) - tau <= 0 and
/// g_i(rollout(params, s)) <= 0 for every stored scenario s.
struct OuterProblem {
  NlpProblem nlp;
  int n_params = 0;  // tau lives at index n_params

  Vec pack(const PolicyParams& params, double tau) const;
};

OuterProblem build_outer_min(const ProblemSpec& spec, const ScenarioSet& scenarios);

PolicyParams unpack_policy(const ProblemSpec& spec, ConstRef z);

/// Unpacks the inner-problem solution into a Scenario and validates set
/// memberships, the beta box, and past-measurement consistency to tol.
/// Throws inconsistent_scenario on failure.
Scenario extract_scenario(const ProblemSpec& spec, const NlpResult& result, double tol);

/// Maximum past-measurement inconsistency of a scenario: the sup-norm of
/// Y0 - realized measurements over steps k-M..k (policy-independent).
double history_inconsistency(const ProblemSpec& spec, const Scenario& scenario);

/// Nominal scenario: parameters at set centers, disturbances and future noise
/// at their set centers, x_init from measurement inversion at k-M, past noise
/// at the implied values. Falls back to a feasibility solve when the direct
/// construction is inconsistent; throws synthesis_infeasible if no consistent
/// scenario exists within tolerance.
Scenario nominal_scenario(const ProblemSpec& spec, const SolverSettings& settings);

}  // namespace sipg
