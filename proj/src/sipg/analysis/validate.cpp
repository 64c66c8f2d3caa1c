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

#include "sipg/analysis/validate.hpp"

#include <algorithm>
#include <cmath>

#include "sipg/util/errors.hpp"
#include "sipg/util/parallel.hpp"
#include "sipg/util/rng.hpp"

namespace sipg {

namespace {
constexpr double kBoxInflation = 1.05;
constexpr long kProposalCap = 1000000;
}  // namespace

ConsistentScenarioSampler::ConsistentScenarioSampler(const ProblemSpec& spec,
                                                     const SolverSettings& settings)
    : spec_(spec) {
  spec_.validate();
  if (!spec_.model.additive_measurement_noise)
    throw_invalid("consistent sampler: requires additive measurement noise");
  proposal_box_ = feasible_box(spec_, 0, settings);
  const Vec center = 0.5 * (proposal_box_.lo + proposal_box_.hi);
  const Vec half = 0.5 * (proposal_box_.hi - proposal_box_.lo) * kBoxInflation;
  plo_ = center - half;
  phi_ = center + half;
  for (Eigen::Index j = 0; j < plo_.size(); ++j) {
    if (!std::isfinite(plo_[j]) || !std::isfinite(phi_[j]))
      throw_invalid("consistent sampler: proposal box unbounded");
    if (phi_[j] - plo_[j] <= 1e-6) plo_[j] = phi_[j] = center[j];  // pin degenerate directions
  }
}

Scenario ConsistentScenarioSampler::draw(std::uint64_t seed, std::uint64_t index,
                                         long* proposals_out) const {
  const SystemModel& model = spec_.model;
  const ScenarioLayout layout = spec_.scenario_layout();
  Scenario s;
  layout.resize(s);

  Vec x(model.n_x), x_next(model.n_x), y_clean(model.n_y);
  const Vec v_zero = Vec::Zero(model.n_v);
  Rng rng = Rng::child(seed ^ 0x5CEA4A11u, index);

  for (long attempt = 0; attempt < kProposalCap; ++attempt) {
    for (int j = 0; j < model.n_x; ++j) x[j] = rng.uniform(plo_[j], phi_[j]);
    bool ok = true;
    if (spec_.beta_box) {
      for (int j = 0; j < model.n_x && ok; ++j)
        ok = x[j] >= spec_.beta_box->lo[j] && x[j] <= spec_.beta_box->hi[j];
    }
    if (!ok) continue;

    s.x_init = x;
    s.rho_f = spec_.uncertainty.rho_f_set.sample(rng);
    s.rho_h = spec_.uncertainty.rho_h_set.sample(rng);
    for (int t = 0; t < layout.w_steps; ++t) s.W.col(t) = spec_.uncertainty.w_set.sample(rng);

    for (int i = 0; i <= spec_.M && ok; ++i) {
      model.measure(x, s.rho_h, v_zero, y_clean);
      const Vec implied = spec_.Y0[static_cast<std::size_t>(i)] - y_clean;
      if (!spec_.uncertainty.v_set.contains_for_sampling(implied)) {
        ok = false;
        break;
      }
      s.V.col(i) = implied;
      if (i < spec_.M) {
        model.step(x, spec_.U0[static_cast<std::size_t>(i)], s.rho_f, s.W.col(i), x_next);
        x = x_next;
        if (!x.allFinite()) ok = false;
      }
    }
    if (!ok) continue;

    for (int t = spec_.M + 1; t < layout.v_steps; ++t)
      s.V.col(t) = spec_.uncertainty.v_set.sample(rng);
    if (proposals_out != nullptr) *proposals_out = attempt + 1;
    return s;
  }
  throw Error(ErrorCode::sampling_stalled,
              "consistent sampler: no acceptance within 1e6 proposals");
}

ValidationReport validate(const ProblemSpec& spec, const PolicyParams& params, int n,
                          std::uint64_t seed, const SolverSettings& settings) {
  if (n < 1) throw_invalid("validate: n must be >= 1");
  const ConsistentScenarioSampler sampler(spec, settings);

  ValidationReport report;
  report.n_runs = n;
  report.runs.resize(static_cast<std::size_t>(n));
  std::vector<long> proposals(static_cast<std::size_t>(n), 0);

  parallel_for(n, [&](int run) {
    RunRecord& rec = report.runs[static_cast<std::size_t>(run)];
    rec.scenario_stream = static_cast<std::uint64_t>(run);
    const Scenario scenario =
        sampler.draw(seed, static_cast<std::uint64_t>(run), &proposals[static_cast<std::size_t>(run)]);
    try {
      const TrajectoryBundle bundle = rollout(spec, params, scenario);
      rec.cost = spec.cost.eval(bundle, scenario);
      rec.max_constraint = -kInf;
      for (const auto& g : spec.path_constraints)
        rec.max_constraint = std::max(rec.max_constraint, g.eval(bundle, scenario));
      if (spec.path_constraints.empty()) rec.max_constraint = 0.0;
      rec.terminal_state = bundle.X.col(bundle.X.cols() - 1);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::rollout_diverged) throw;
      rec.diverged = true;
      rec.cost = 0.0;
      rec.max_constraint = 0.0;
      rec.terminal_state = Vec::Zero(spec.model.n_x);
    }
  });

  double sum = 0.0;
  double lo = kInf, hi = -kInf;
  long total_proposals = 0;
  int counted = 0;
  for (int run = 0; run < n; ++run) {
    const RunRecord& rec = report.runs[static_cast<std::size_t>(run)];
    total_proposals += proposals[static_cast<std::size_t>(run)];
    if (rec.diverged) {
      ++report.diverged_count;
      continue;
    }
    ++counted;
    sum += rec.cost;
    lo = std::min(lo, rec.cost);
    hi = std::max(hi, rec.cost);
    if (rec.max_constraint > 0.0) ++report.violation_count;
  }
  report.avg_cost = counted > 0 ? sum / counted : 0.0;
  report.min_cost = counted > 0 ? lo : 0.0;
  report.max_cost = counted > 0 ? hi : 0.0;
  report.acceptance_rate =
      total_proposals > 0 ? static_cast<double>(n) / static_cast<double>(total_proposals) : 0.0;
  return report;
}

}  // namespace sipg
