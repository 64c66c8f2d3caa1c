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

#include "sipg/sip/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "sipg/analysis/feasible.hpp"
#include "sipg/nlp/solver.hpp"
#include "sipg/util/errors.hpp"
#include "sipg/util/rng.hpp"

namespace sipg {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  Rng mixer(base ^ (a * 0x9E3779B97F4A7C15ull) ^ (b * 0xC2B2AE3D27D4EB4Full));
  return mixer.next_u64();
}

/// Enclosure of the history-consistent initial states, inflated so solver
/// tolerance on the box cannot cut into the true set. Coordinates whose
/// extent looks unbounded stay unbounded.
std::optional<XInitBox> adversary_x_init_box(const ProblemSpec& spec,
                                             const SolverSettings& settings) {
  FeasibleBox box;
  try {
    box = feasible_box(spec, 0, settings);
  } catch (const Error&) {
    return std::nullopt;  // fall back to the raw formulation
  }
  XInitBox out;
  out.lo.resize(spec.model.n_x);
  out.hi.resize(spec.model.n_x);
  for (int j = 0; j < spec.model.n_x; ++j) {
    const double center = 0.5 * (box.lo[j] + box.hi[j]);
    const double half = 0.5 * (box.hi[j] - box.lo[j]);
    if (!std::isfinite(half) || std::abs(center) + half > 1e6) {
      out.lo[j] = -kInf;
      out.hi[j] = kInf;
    } else {
      const double inflated = 1.5 * half + 0.1;
      out.lo[j] = center - inflated;
      out.hi[j] = center + inflated;
    }
  }
  return out;
}

}  // namespace

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::converged: return "converged";
    case Termination::scenario_cap: return "scenario_cap";
    case Termination::iteration_cap: return "iteration_cap";
  }
  return "unknown";
}

SynthesisReport local_reduction(const ProblemSpec& spec, const ReductionSettings& settings) {
  spec.validate();
  if (settings.max_scenarios < 1 || settings.max_iterations < 1)
    throw_invalid("local_reduction: caps must be positive");

  SynthesisReport report{.params_star = {},
                         .tau_star = 0.0,
                         .iterations = 0,
                         .scenario_set = ScenarioSet(spec.scenario_layout(), settings.dedup_tol),
                         .history = {},
                         .terminated_by = Termination::iteration_cap};

  ScenarioRecord initial;
  initial.scenario = nominal_scenario(spec, settings.inner);
  initial.origin = ScenarioOrigin::initial;
  report.scenario_set.add(std::move(initial));

  const int n_constraints = static_cast<int>(spec.path_constraints.size());
  const std::optional<XInitBox> x_init_box = adversary_x_init_box(spec, settings.inner);
  std::optional<Vec> warm;
  std::optional<Termination> pending_termination;
  TrajectoryBundle replay;

  for (int it = 1;; ++it) {
    // Outer minimization over (policy parameters, tau) on the current set.
    OuterProblem outer = build_outer_min(spec, report.scenario_set);
    SolverSettings outer_settings = settings.outer;
    outer_settings.rng_seed = derive_seed(settings.outer.rng_seed, static_cast<std::uint64_t>(it), 0);
    std::vector<Vec> extra_starts;
    if (warm) extra_starts.push_back(*warm);
    const NlpResult outer_result =
        multi_start_solve(outer.nlp, outer_settings, extra_starts);

    if (outer_result.max_constraint_violation > 100.0 * outer_settings.tol_feas) {
      throw Error(ErrorCode::synthesis_infeasible,
                  "local_reduction: outer problem infeasible with " +
                      std::to_string(report.scenario_set.size()) + " scenarios (violation " +
                      std::to_string(outer_result.max_constraint_violation) + ")");
    }

    PolicyParams params = unpack_policy(spec, outer_result.z_star);
    const double tau = outer_result.z_star[outer.n_params];
    warm = outer_result.z_star;

    IterationRecord rec;
    rec.iteration = it;
    rec.tau = tau;
    rec.worst_inner_cost = kNan;
    rec.worst_violation = kNan;
    rec.outer_status = outer_result.status;
    rec.scenario_count = report.scenario_set.size();

    // Independent post-check of the outer solution on every stored scenario.
    double excess = 0.0;
    for (const auto& stored : report.scenario_set.records()) {
      rollout_into(spec, params, stored.scenario, replay);
      excess = std::max(excess, spec.cost.eval(replay, stored.scenario) - tau);
      for (const auto& g : spec.path_constraints)
        excess = std::max(excess, g.eval(replay, stored.scenario));
    }
    rec.outer_replay_excess = excess;

    report.params_star = params;
    report.tau_star = tau;

    if (pending_termination) {
      // Closing re-solve after a cap fired with fresh scenarios pending.
      report.history.push_back(std::move(rec));
      report.terminated_by = *pending_termination;
      break;
    }

    // Adversary pass: worst-case cost, then each constraint in index order.
    // A pass whose solution cannot be extracted and replayed gives no
    // evidence either way; convergence is only declared on a fully usable
    // pass that found nothing to add.
    int added = 0;
    bool all_usable = true;
    const std::uint64_t it_u = static_cast<std::uint64_t>(it);

    {
      InnerProblem cost_problem = build_inner_max_cost(spec, params, x_init_box);
      SolverSettings inner_settings = settings.inner;
      inner_settings.rng_seed = derive_seed(settings.inner.rng_seed, it_u, 1);
      const NlpResult inner_result = multi_start_solve(cost_problem.nlp, inner_settings);
      rec.inner_statuses.push_back(inner_result.status);
      try {
        ScenarioRecord cand;
        cand.scenario = extract_scenario(spec, inner_result, inner_settings.tol_feas);
        rollout_into(spec, params, cand.scenario, replay);
        const double replayed = spec.cost.eval(replay, cand.scenario);
        rec.worst_inner_cost = replayed;
        if (replayed > tau + settings.eps_cost &&
            report.scenario_set.size() < settings.max_scenarios) {
          cand.origin = ScenarioOrigin::cost_adversary;
          cand.added_iteration = it;
          cand.replay_value = replayed;
          cand.tau_at_add = tau;
          if (report.scenario_set.add(std::move(cand))) ++added;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::inconsistent_scenario && e.code() != ErrorCode::rollout_diverged)
          throw;
        ++rec.failed_extractions;
        all_usable = false;
      }
    }

    for (int gi = 0; gi < n_constraints; ++gi) {
      InnerProblem g_problem = build_inner_max_constraint(spec, params, gi, x_init_box);
      SolverSettings inner_settings = settings.inner;
      inner_settings.rng_seed = derive_seed(settings.inner.rng_seed, it_u, 2 + static_cast<std::uint64_t>(gi));
      const NlpResult inner_result = multi_start_solve(g_problem.nlp, inner_settings);
      rec.inner_statuses.push_back(inner_result.status);
      try {
        ScenarioRecord cand;
        cand.scenario = extract_scenario(spec, inner_result, inner_settings.tol_feas);
        rollout_into(spec, params, cand.scenario, replay);
        const double replayed =
            spec.path_constraints[static_cast<std::size_t>(gi)].eval(replay, cand.scenario);
        if (std::isnan(rec.worst_violation) || replayed > rec.worst_violation)
          rec.worst_violation = replayed;
        if (replayed > settings.eps_constraint &&
            report.scenario_set.size() < settings.max_scenarios) {
          cand.origin = ScenarioOrigin::constraint_adversary;
          cand.constraint_index = gi;
          cand.added_iteration = it;
          cand.replay_value = replayed;
          cand.tau_at_add = tau;
          if (report.scenario_set.add(std::move(cand))) ++added;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::inconsistent_scenario && e.code() != ErrorCode::rollout_diverged)
          throw;
        ++rec.failed_extractions;
        all_usable = false;
      }
    }

    rec.added = added;
    rec.scenario_count = report.scenario_set.size();
    report.history.push_back(std::move(rec));

    if (added == 0 && all_usable) {
      report.terminated_by = Termination::converged;
      break;
    }
    if (report.scenario_set.size() >= settings.max_scenarios) {
      pending_termination = Termination::scenario_cap;
    } else if (it >= settings.max_iterations) {
      pending_termination = Termination::iteration_cap;
    }
  }

  report.iterations = static_cast<int>(report.history.size());
  return report;
}

}  // namespace sipg
