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
#include "sipg/core/trajectory.hpp"

namespace sipg {

/// Simulates the closed loop for one uncertainty realization. The past
/// segment (steps k-M .. k-1) applies U0; future steps apply the policy on
/// the realized measurements. Realized past measurements need not equal Y0 —
/// consistency with the measurement history is a separate check.
/// Throws rollout_diverged (carrying the failing column index) when a state
/// goes non-finite.
void rollout_into(const ProblemSpec& spec, const PolicyParams& params, const Scenario& scenario,
                  TrajectoryBundle& out);
TrajectoryBundle rollout(const ProblemSpec& spec, const PolicyParams& params,
                         const Scenario& scenario);

/// Residual of the dynamics along a trajectory: column t is
/// X.col(t+1) - step(X.col(t), U.col(t), rho_f, W.col(t)). All-zero iff the
/// trajectory is dynamically consistent.
Mat dynamics_residual(const SystemModel& model, const Mat& X, const Mat& U, ConstRef rho_f,
                      const Mat& W);

/// Residual of the measurement map: column t is
/// Y.col(t) - measure(X.col(t), rho_h, V.col(t)).
Mat measurement_residual(const SystemModel& model, const Mat& X, ConstRef rho_h, const Mat& V,
                         const Mat& Y);

}  // namespace sipg
