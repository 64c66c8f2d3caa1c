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
#include <optional>
#include <string>
#include <vector>

#include "sipg/core/problem_spec.hpp"
#include "sipg/nlp/problem.hpp"

namespace sipg {

struct FeasibleBox {
  Vec lo;
  Vec hi;
};

/// Coordinate-wise extent of the states at step t (0 = oldest measured step
/// k-M, M = current step k) consistent with the measurement history, the
/// dynamics and every uncertainty bound: solves min and max of each state
/// coordinate subject to set memberships and past-measurement consistency.
/// Throws inconsistent_history when a subproblem has no feasible point.
FeasibleBox feasible_box(const ProblemSpec& spec, int t, const SolverSettings& settings);

struct FeasibleSamples {
  std::vector<Vec> states;   // n accepted states at step t
  double acceptance_rate = 0.0;
  FeasibleBox proposal_box;  // box the proposals were drawn from (pre-inflation)
};

/// Rejection sampler over the feasible state set at step t: proposes
/// (x_init, rho, W) uniformly — x_init from the oldest step's feasible box
/// inflated by 5% — rolls the past segment with U0, computes the implied
/// measurement noise, and accepts iff every implied noise is a member of the
/// v-set and x_init satisfies the beta box. Requires additive measurement
/// noise. Throws sampling_stalled when the acceptance rate falls below 1e-5
/// after 1e6 proposals.
FeasibleSamples sample_feasible(const ProblemSpec& spec, int t, int n, std::uint64_t seed,
                                const SolverSettings& settings);

/// Writes samples as CSV (`x1,...,xn,accepted`) plus, when a box is given, a
/// `<stem>_box.csv` sidecar holding its lo/hi corners. Values are printed at
/// 17 significant digits so a read-back reproduces them exactly.
void export_cloud(const std::vector<Vec>& samples, const std::optional<FeasibleBox>& box,
                  const std::string& path);

}  // namespace sipg
