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

#include <string>
#include <vector>

#include "sipg/core/problem_spec.hpp"

namespace sipg {

enum class PolicyKind { open_loop, one_step, two_step };

const char* policy_kind_name(PolicyKind kind);
PolicyKind policy_kind_from_name(const std::string& name);

/// Two-state integrator with ball-bounded process and measurement noise:
///   x+ = x + u + w,  y = x + v,  |w| <= 1,  |v| <= 2,
/// with the measurement history Y0 = ([0,0], [1,2]) and input history
/// U0 = ([1,1]) (M = 1). The default design instance steers one further step
/// toward (2, 3) under an open-loop policy with a bound x2 <= 4.5.
ProblemSpec toy2d_spec();

/// Planar quadrotor, Euler-discretized at sampling time ts. States are
/// (r, r_dot, s, s_dot, psi, psi_dot); rho_f = (m, I); inputs are the two
/// motor thrusts; y = (r, s, psi) + v.
SystemModel quadrotor_model(double ts);

/// Quadrotor gain-design benchmark: N = 7, M = 2, zero prior measurements,
/// prior inputs 4.905 per motor, beta bound -0.05 <= x2(k-M) <= 0.05, cost
/// r(k+N)^2 + (s(k+N) - 2)^2, constraint s(k+N) <= 3.5, mass in [0.9, 1.1],
/// inertia in [0.001, 0.0015], measurement noise in [-0.1, 0.1]^3 per step.
ProblemSpec quadrotor_spec(PolicyKind kind, double ts = 0.1);

/// Registry names accepted by configs: "toy2d", "quadrotor".
ProblemSpec spec_from_registry(const std::string& model_name, PolicyKind kind, double ts);
std::vector<std::string> registry_names();

}  // namespace sipg
