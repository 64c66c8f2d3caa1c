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
#include <vector>

#include "sipg/analysis/feasible.hpp"
#include "sipg/core/problem_spec.hpp"
#include "sipg/core/rollout.hpp"

namespace sipg {

/// Draws full-span scenarios uniformly from the uncertainty sets intersected
/// with the realizations consistent with the measurement history: the past
/// segment by rejection (as the feasible-set sampler), future disturbances
/// and noise by direct draws. The proposal box is computed once at
/// construction. Requires additive measurement noise.
class ConsistentScenarioSampler {
 public:
  ConsistentScenarioSampler(const ProblemSpec& spec, const SolverSettings& settings);

  /// One scenario for stream `index` of `seed`; deterministic per (seed,
  /// index). proposals_out, when given, receives the number of proposals
  /// consumed. Throws sampling_stalled after 1e6 rejected proposals.
  Scenario draw(std::uint64_t seed, std::uint64_t index, long* proposals_out = nullptr) const;

  const FeasibleBox& proposal_box() const { return proposal_box_; }

 private:
  ProblemSpec spec_;
  FeasibleBox proposal_box_;
  Vec plo_, phi_;
};

struct RunRecord {
  std::uint64_t scenario_stream = 0;  // rng stream index of the drawn scenario
  double cost = 0.0;
  double max_constraint = 0.0;
  Vec terminal_state;
  bool diverged = false;
};

struct ValidationReport {
  int n_runs = 0;
  double avg_cost = 0.0;
  double max_cost = 0.0;
  double min_cost = 0.0;
  int violation_count = 0;
  int diverged_count = 0;
  double acceptance_rate = 0.0;
  std::vector<RunRecord> runs;
};

/// Monte Carlo closed-loop evaluation: n history-consistent scenarios, one
/// rollout each, cost and constraint aggregation. Diverged rollouts are
/// counted separately and excluded from the cost statistics. Deterministic
/// for a fixed seed, regardless of thread count.
ValidationReport validate(const ProblemSpec& spec, const PolicyParams& params, int n,
                          std::uint64_t seed, const SolverSettings& settings);

}  // namespace sipg
