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

#include "sipg/analysis/feasible.hpp"

#include <algorithm>
#include <cmath>

#include "sipg/io/text_format.hpp"
#include "sipg/nlp/solver.hpp"
#include "sipg/sip/builders.hpp"
#include "sipg/util/errors.hpp"
#include "sipg/util/parallel.hpp"
#include "sipg/util/rng.hpp"

namespace sipg {

namespace {

constexpr double kBoxInflation = 1.05;
constexpr double kUnboundedGuard = 1e8;

/// Variables of the past-window analysis: packed (x_init, rho_f, rho_h,
/// W over the M past transitions, V over the M+1 measured steps). Future
/// uncertainty never constrains the measured window, so it is left out.
ScenarioLayout past_layout(const ProblemSpec& spec) {
  ScenarioLayout layout;
  layout.n_x = spec.model.n_x;
  layout.n_rho_f = spec.model.n_rho_f;
  layout.n_rho_h = spec.model.n_rho_h;
  layout.n_w = spec.model.n_w;
  layout.n_v = spec.model.n_v;
  layout.w_steps = spec.M;
  layout.v_steps = spec.M + 1;
  return layout;
}

/// Builds min/max x_{t,coord} over the history-consistent set as an NLP over
/// the past-window variables (memberships folded into bounds/inequalities,
/// consistency as equalities).
NlpProblem build_past_extent(const ProblemSpec& spec, const ScenarioLayout& layout, int t,
                             int coord, double sign) {
  NlpProblem nlp;
  nlp.n_vars = layout.dim();
  nlp.lo = Vec::Constant(nlp.n_vars, -kInf);
  nlp.hi = Vec::Constant(nlp.n_vars, kInf);
  if (spec.beta_box) {
    nlp.lo.segment(layout.x_init_offset(), layout.n_x) = spec.beta_box->lo;
    nlp.hi.segment(layout.x_init_offset(), layout.n_x) = spec.beta_box->hi;
  }
  fold_set(nlp, spec.uncertainty.rho_f_set, layout.rho_f_offset());
  fold_set(nlp, spec.uncertainty.rho_h_set, layout.rho_h_offset());
  for (int s = 0; s < layout.w_steps; ++s) fold_set(nlp, spec.uncertainty.w_set, layout.w_offset(s));
  for (int s = 0; s < layout.v_steps; ++s) fold_set(nlp, spec.uncertainty.v_set, layout.v_offset(s));

  // Rolls the past segment with U0 and returns the state at `step`.
  auto state_at = [&spec, layout](const Vec& z, int step) -> Vec {
    const SystemModel& model = spec.model;
    Vec x = z.segment(layout.x_init_offset(), layout.n_x);
    Vec x_next(model.n_x);
    const auto rho_f = z.segment(layout.rho_f_offset(), layout.n_rho_f);
    for (int i = 0; i < step; ++i) {
      model.step(x, spec.U0[static_cast<std::size_t>(i)], rho_f,
                 z.segment(layout.w_offset(i), layout.n_w), x_next);
      x.swap(x_next);
    }
    return x;
  };

  nlp.objective = [state_at, t, coord, sign](const Vec& z) { return sign * state_at(z, t)[coord]; };

  for (int i = 0; i <= spec.M; ++i) {
    for (int c = 0; c < spec.model.n_y; ++c) {
      nlp.eq_constraints.push_back([&spec, layout, state_at, i, c](const Vec& z) {
        const Vec x = state_at(z, i);
        Vec y(spec.model.n_y);
        spec.model.measure(x, z.segment(layout.rho_h_offset(), layout.n_rho_h),
                           z.segment(layout.v_offset(i), layout.n_v), y);
        return spec.Y0[static_cast<std::size_t>(i)][c] - y[c];
      });
    }
  }
  return nlp;
}

double state_extent(const ProblemSpec& spec, const ScenarioLayout& layout, int t, int coord,
                    bool maximize, const SolverSettings& settings, std::uint64_t seed_salt) {
  const double sign = maximize ? -1.0 : 1.0;  // solver minimizes
  const NlpProblem nlp = build_past_extent(spec, layout, t, coord, sign);
  SolverSettings local = settings;
  local.rng_seed = Rng::child(settings.rng_seed, seed_salt).next_u64();
  const NlpResult result = multi_start_solve(nlp, local);
  if (result.max_constraint_violation > 100.0 * settings.tol_feas)
    throw Error(ErrorCode::inconsistent_history,
                "feasible_box: measurements incompatible with the model (violation " +
                    std::to_string(result.max_constraint_violation) + ")");
  return sign * result.objective_value;
}

}  // namespace

FeasibleBox feasible_box(const ProblemSpec& spec, int t, const SolverSettings& settings) {
  spec.validate();
  if (t < 0 || t > spec.M) throw_invalid("feasible_box: step must lie in the measured window");

  const ScenarioLayout layout = past_layout(spec);
  const int n_x = spec.model.n_x;
  FeasibleBox box;
  box.lo.resize(n_x);
  box.hi.resize(n_x);
  for (int j = 0; j < n_x; ++j) {
    box.lo[j] = state_extent(spec, layout, t, j, false, settings, static_cast<std::uint64_t>(2 * j));
    box.hi[j] =
        state_extent(spec, layout, t, j, true, settings, static_cast<std::uint64_t>(2 * j + 1));
    if (box.lo[j] > box.hi[j]) std::swap(box.lo[j], box.hi[j]);
  }
  return box;
}

FeasibleSamples sample_feasible(const ProblemSpec& spec, int t, int n, std::uint64_t seed,
                                const SolverSettings& settings) {
  spec.validate();
  if (t < 0 || t > spec.M) throw_invalid("sample_feasible: step must lie in the measured window");
  if (n < 1) throw_invalid("sample_feasible: n must be >= 1");
  if (!spec.model.additive_measurement_noise)
    throw_invalid("sample_feasible: requires additive measurement noise");

  const SystemModel& model = spec.model;
  FeasibleSamples out;
  out.proposal_box = feasible_box(spec, 0, settings);

  Vec center = 0.5 * (out.proposal_box.lo + out.proposal_box.hi);
  Vec half = 0.5 * (out.proposal_box.hi - out.proposal_box.lo) * kBoxInflation;
  Vec plo = center - half;
  Vec phi = center + half;
  for (int j = 0; j < model.n_x; ++j) {
    if (!std::isfinite(plo[j]) || !std::isfinite(phi[j]) || std::abs(plo[j]) > kUnboundedGuard ||
        std::abs(phi[j]) > kUnboundedGuard)
      throw_invalid("sample_feasible: proposal box unbounded at coordinate " + std::to_string(j));
    if (phi[j] - plo[j] <= 1e-6) plo[j] = phi[j] = center[j];  // pin degenerate directions
  }

  constexpr int kBatch = 4096;
  constexpr long kProposalCap = 1000000;
  constexpr double kMinRate = 1e-5;

  struct Trial {
    Vec state;
    bool accepted = false;
  };
  std::vector<Trial> batch(static_cast<std::size_t>(kBatch));
  long proposed = 0;
  long accepted_total = 0;

  auto run_trial = [&](long global_index, Trial& trial) {
    Rng rng = Rng::child(seed, static_cast<std::uint64_t>(global_index));
    Vec x(model.n_x);
    for (int j = 0; j < model.n_x; ++j) x[j] = rng.uniform(plo[j], phi[j]);
    if (spec.beta_box) {
      for (int j = 0; j < model.n_x; ++j) {
        if (x[j] < spec.beta_box->lo[j] || x[j] > spec.beta_box->hi[j]) return;
      }
    }
    const Vec rho_f = spec.uncertainty.rho_f_set.sample(rng);
    const Vec rho_h = spec.uncertainty.rho_h_set.sample(rng);

    Vec x_next(model.n_x), y_clean(model.n_y), w(model.n_w);
    const Vec v_zero = Vec::Zero(model.n_v);
    Vec at_t;
    for (int i = 0; i <= spec.M; ++i) {
      if (i == t) at_t = x;
      model.measure(x, rho_h, v_zero, y_clean);
      const Vec implied = spec.Y0[static_cast<std::size_t>(i)] - y_clean;
      if (!spec.uncertainty.v_set.contains_for_sampling(implied)) return;
      if (i < spec.M) {
        w = spec.uncertainty.w_set.sample(rng);
        model.step(x, spec.U0[static_cast<std::size_t>(i)], rho_f, w, x_next);
        x = x_next;
        if (!x.allFinite()) return;
      }
    }
    trial.state = std::move(at_t);
    trial.accepted = true;
  };

  while (accepted_total < n) {
    for (auto& trial : batch) trial.accepted = false;
    parallel_for(kBatch, [&](int i) {
      run_trial(proposed + i, batch[static_cast<std::size_t>(i)]);
    });
    proposed += kBatch;
    for (auto& trial : batch) {
      if (trial.accepted) {
        ++accepted_total;
        if (static_cast<long>(out.states.size()) < n) out.states.push_back(std::move(trial.state));
        if (accepted_total >= n) break;
      }
    }
    if (proposed >= kProposalCap &&
        static_cast<double>(accepted_total) / static_cast<double>(proposed) < kMinRate) {
      throw Error(ErrorCode::sampling_stalled,
                  "sample_feasible: acceptance rate below 1e-5 after 1e6 proposals");
    }
  }
  out.acceptance_rate = static_cast<double>(accepted_total) / static_cast<double>(proposed);
  return out;
}

void export_cloud(const std::vector<Vec>& samples, const std::optional<FeasibleBox>& box,
                  const std::string& path) {
  if (samples.empty()) throw_invalid("export_cloud: no samples to write");
  const int dim = static_cast<int>(samples.front().size());

  TextWriter csv(path);
  for (int j = 0; j < dim; ++j) csv.raw("x" + std::to_string(j + 1) + ",");
  csv.line("accepted");
  for (const Vec& s : samples) {
    for (int j = 0; j < dim; ++j) {
      csv.raw(format_g17(s[j]));
      csv.raw(",");
    }
    csv.line("1");
  }
  csv.close();

  if (box) {
    std::string stem = path;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") stem.resize(stem.size() - 4);
    TextWriter side(stem + "_box.csv");
    side.raw("bound");
    for (int j = 0; j < dim; ++j) side.raw(",x" + std::to_string(j + 1));
    side.line("");
    side.raw("lo");
    for (int j = 0; j < dim; ++j) side.raw("," + format_g17(box->lo[j]));
    side.line("");
    side.raw("hi");
    for (int j = 0; j < dim; ++j) side.raw("," + format_g17(box->hi[j]));
    side.line("");
    side.close();
  }
}

}  // namespace sipg
