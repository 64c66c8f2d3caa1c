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

#include <span>

#include "sipg/nlp/problem.hpp"

namespace sipg {

/// Local solve by an augmented-Lagrangian outer loop around a projected
/// quasi-Newton (L-BFGS) bound-constrained inner minimization. Gradients are
/// central finite differences at settings.fd_step. Deterministic for fixed
/// (problem, z0, settings). z0 is projected onto the bounds first; throws
/// invalid_start if the objective is non-finite there.
NlpResult solve(const NlpProblem& problem, Vec z0, const SolverSettings& settings);

/// Runs solve from the box midpoint, n_starts uniform samples in the bounds
/// (unbounded coordinates start at 0) and any caller-supplied extra starts,
/// then returns the best converged result (lowest objective, ties broken by
/// start order), or the best-effort result when none converged. Starts may
/// execute in parallel; the merge is deterministic.
NlpResult multi_start_solve(const NlpProblem& problem, const SolverSettings& settings,
                            std::span<const Vec> extra_starts = {});

/// Independent KKT residual at (z, multipliers): max of the projected-gradient
/// norm of the Lagrangian, the constraint violations, and the complementarity
/// residuals.
double check_kkt(const NlpProblem& problem, const Vec& z, const Vec& eq_multipliers,
                 const Vec& ineq_multipliers, double fd_step = 1e-6);

}  // namespace sipg
