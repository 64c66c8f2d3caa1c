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

#include <cstdint>
#include <functional>
#include <vector>

#include "sipg/core/types.hpp"

namespace sipg {

/// Smooth finite-dimensional program
///   min f(z)  s.t.  lo <= z <= hi,  ce(z) = 0,  ci(z) <= 0.
/// Maximization is expressed by negating the objective. All callables must be
/// thread-safe (solves may run concurrently).
struct NlpProblem {
  int n_vars = 0;
  Vec lo, hi;  // entries may be +-inf
  std::function<double(const Vec&)> objective;
  std::vector<std::function<double(const Vec&)>> eq_constraints;
  std::vector<std::function<double(const Vec&)>> ineq_constraints;
};

enum class SolveStatus { converged, max_iters, diverged };

const char* solve_status_name(SolveStatus status);

struct NlpResult {
  Vec z_star;
  double objective_value = 0.0;
  SolveStatus status = SolveStatus::max_iters;
  double kkt_residual = kInf;
  double max_constraint_violation = kInf;
  Vec eq_multipliers;
  Vec ineq_multipliers;
  /// Constraint-violation measure of each accepted outer iterate
  /// (non-increasing by construction).
  std::vector<double> violation_history;
  int outer_iterations = 0;
  int inner_iterations = 0;
  /// Which start produced this result under multi_start_solve (-1 for solve).
  int start_index = -1;
};

struct SolverSettings {
  double tol_kkt = 1e-6;
  double tol_feas = 1e-6;
  int max_outer_iters = 60;
  int max_inner_iters = 400;
  double fd_step = 1e-6;
  double penalty_init = 10.0;
  double penalty_growth = 10.0;
  double penalty_cap = 1e10;
  int n_starts = 8;
  std::uint64_t rng_seed = 0;
};

}  // namespace sipg
