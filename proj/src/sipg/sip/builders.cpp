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

#include "sipg/sip/builders.hpp"

#include <atomic>
#include <cmath>
#include <cstring>
#include <memory>
#include <unordered_map>

#include "sipg/nlp/solver.hpp"
#include "sipg/util/errors.hpp"

namespace sipg {

namespace {

// Value reported for scenarios whose rollout diverges; large enough to be
// rejected by any line search, finite so penalty terms stay arithmetic.
constexpr double kDivergedValue = 1e12;

std::atomic<std::uint64_t> g_eval_counter{1};

bool same_vector(const Vec& a, const Vec& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), sizeof(double) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

void fold_set(NlpProblem& nlp, const BoundedSet& set, int offset) {
  if (set.dim() == 0) return;
  switch (set.kind()) {
    case BoundedSet::Kind::box:
      nlp.lo.segment(offset, set.dim()) = set.box_lo();
      nlp.hi.segment(offset, set.dim()) = set.box_hi();
      break;
    case BoundedSet::Kind::ball: {
      Vec lo, hi;
      set.envelope(lo, hi);
      nlp.lo.segment(offset, set.dim()) = lo;
      nlp.hi.segment(offset, set.dim()) = hi;
      const Vec center = set.ball_center();
      const double r2 = set.ball_radius() * set.ball_radius();
      const int dim = set.dim();
      nlp.ineq_constraints.push_back([center, r2, offset, dim](const Vec& z) {
        return (z.segment(offset, dim) - center).squaredNorm() - r2;
      });
      break;
    }
    case BoundedSet::Kind::product: {
      int off = offset;
      for (const auto& part : set.parts()) {
        fold_set(nlp, part, off);
        off += part.dim();
      }
      break;
    }
  }
}

namespace {

/// Shared evaluation state for one adversarial problem. All closures of the
/// problem funnel through ensure(), which re-rolls the trajectory only when z
/// actually changed; per-thread slots keep concurrent solves independent.
class AdversaryEval {
 public:
  AdversaryEval(const ProblemSpec& spec, const PolicyParams& params)
      : id_(g_eval_counter.fetch_add(1)),
        spec_(spec),
        params_(params),
        layout_(spec.scenario_layout()) {}

  struct Slot {
    Vec z;
    Scenario scenario;
    TrajectoryBundle bundle;
    bool initialized = false;
    bool diverged = false;
  };

  const Slot& ensure(const Vec& z) const {
    thread_local std::unordered_map<std::uint64_t, Slot> slots;
    Slot& slot = slots[id_];
    if (slot.initialized && same_vector(slot.z, z)) return slot;
    if (!slot.initialized) layout_.resize(slot.scenario);
    slot.z = z;
    layout_.unpack_into(z, slot.scenario);
    slot.diverged = false;
    try {
      rollout_into(spec_, params_, slot.scenario, slot.bundle);
    } catch (const Error&) {
      slot.diverged = true;
    }
    slot.initialized = true;
    return slot;
  }

  double cost(const Vec& z) const {
    const Slot& slot = ensure(z);
    if (slot.diverged) return -kDivergedValue;  // worthless to a maximizing adversary
    return spec_.cost.eval(slot.bundle, slot.scenario);
  }

  double constraint(const Vec& z, int index) const {
    const Slot& slot = ensure(z);
    if (slot.diverged) return -kDivergedValue;
    return spec_.path_constraints[static_cast<std::size_t>(index)].eval(slot.bundle, slot.scenario);
  }

  /// Consistency mismatch Y0[step][coord] - realized measurement.
  double consistency(const Vec& z, int step, int coord) const {
    const Slot& slot = ensure(z);
    if (slot.diverged) return kDivergedValue;
    return spec_.Y0[static_cast<std::size_t>(step)][coord] - slot.bundle.Y(coord, step);
  }

  const ScenarioLayout& layout() const { return layout_; }

 private:
  std::uint64_t id_;
  ProblemSpec spec_;
  PolicyParams params_;
  ScenarioLayout layout_;
};

/// Feasible set shared by every adversarial problem: packed-scenario bounds,
/// membership inequalities and the past-measurement consistency equalities.
InnerProblem build_adversary_base(const ProblemSpec& spec, const PolicyParams& params,
                                  const std::optional<XInitBox>& x_init_box,
                                  std::shared_ptr<AdversaryEval>& eval_out) {
  spec.validate();
  auto eval = std::make_shared<AdversaryEval>(spec, params);
  const ScenarioLayout& layout = eval->layout();

  InnerProblem inner;
  inner.layout = layout;
  NlpProblem& nlp = inner.nlp;
  nlp.n_vars = layout.dim();
  nlp.lo = Vec::Constant(nlp.n_vars, -kInf);
  nlp.hi = Vec::Constant(nlp.n_vars, kInf);

  if (spec.beta_box) {
    nlp.lo.segment(layout.x_init_offset(), layout.n_x) = spec.beta_box->lo;
    nlp.hi.segment(layout.x_init_offset(), layout.n_x) = spec.beta_box->hi;
  }
  if (x_init_box) {
    // Intersect with the beta bounds; the enclosing box never cuts into the
    // consistent set.
    for (int j = 0; j < layout.n_x; ++j) {
      nlp.lo[layout.x_init_offset() + j] = std::max(nlp.lo[layout.x_init_offset() + j],
                                                    x_init_box->lo[j]);
      nlp.hi[layout.x_init_offset() + j] = std::min(nlp.hi[layout.x_init_offset() + j],
                                                    x_init_box->hi[j]);
    }
  }
  fold_set(nlp, spec.uncertainty.rho_f_set, layout.rho_f_offset());
  fold_set(nlp, spec.uncertainty.rho_h_set, layout.rho_h_offset());
  for (int t = 0; t < layout.w_steps; ++t) fold_set(nlp, spec.uncertainty.w_set, layout.w_offset(t));
  for (int t = 0; t < layout.v_steps; ++t) fold_set(nlp, spec.uncertainty.v_set, layout.v_offset(t));

  for (int step = 0; step <= spec.M; ++step) {
    for (int coord = 0; coord < spec.model.n_y; ++coord) {
      nlp.eq_constraints.push_back(
          [eval, step, coord](const Vec& z) { return eval->consistency(z, step, coord); });
    }
  }

  eval_out = eval;
  return inner;
}

PolicyForm outer_policy_form(const ProblemSpec& spec) { return spec.policy; }

/// Shared evaluation state for the discretized outer problem, keyed on the
/// policy-parameter block of z only (tau does not influence rollouts).
class OuterEval {
 public:
  OuterEval(const ProblemSpec& spec, std::vector<Scenario> scenarios)
      : id_(g_eval_counter.fetch_add(1)),
        spec_(spec),
        scenarios_(std::move(scenarios)),
        n_params_(spec.policy.param_count(spec.model.n_u, spec.model.n_y, spec.N)) {}

  struct Slot {
    Vec z_params;
    PolicyParams params;
    TrajectoryBundle workspace;
    std::vector<double> cost_values;
    Mat constraint_values;  // n_g x n_scenarios
    bool initialized = false;
  };

  const Slot& ensure(const Vec& z) const {
    thread_local std::unordered_map<std::uint64_t, Slot> slots;
    Slot& slot = slots[id_];
    const int np = n_params_;
    if (slot.initialized &&
        std::memcmp(slot.z_params.data(), z.data(), sizeof(double) * static_cast<std::size_t>(np)) == 0)
      return slot;

    if (!slot.initialized) {
      slot.z_params.resize(np);
      slot.params = PolicyParams::zeros(spec_.policy.lags, spec_.model.n_u, spec_.model.n_y, spec_.N);
      slot.cost_values.assign(scenarios_.size(), 0.0);
      slot.constraint_values.resize(static_cast<Eigen::Index>(spec_.path_constraints.size()),
                                    static_cast<Eigen::Index>(scenarios_.size()));
    }
    slot.z_params = z.head(np);
    unpack_into(z, slot.params);
    for (std::size_t s = 0; s < scenarios_.size(); ++s) {
      double cost_value;
      bool diverged = false;
      try {
        rollout_into(spec_, slot.params, scenarios_[s], slot.workspace);
      } catch (const Error&) {
        diverged = true;
      }
      if (diverged) {
        cost_value = kDivergedValue;
        for (Eigen::Index i = 0; i < slot.constraint_values.rows(); ++i)
          slot.constraint_values(i, static_cast<Eigen::Index>(s)) = kDivergedValue;
      } else {
        cost_value = spec_.cost.eval(slot.workspace, scenarios_[s]);
        for (std::size_t i = 0; i < spec_.path_constraints.size(); ++i)
          slot.constraint_values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(s)) =
              spec_.path_constraints[i].eval(slot.workspace, scenarios_[s]);
      }
      slot.cost_values[s] = cost_value;
    }
    slot.initialized = true;
    return slot;
  }

  double cost_of(const Vec& z, int scenario) const {
    return ensure(z).cost_values[static_cast<std::size_t>(scenario)];
  }
  double constraint_of(const Vec& z, int constraint, int scenario) const {
    return ensure(z).constraint_values(constraint, scenario);
  }
  int n_params() const { return n_params_; }

 private:
  void unpack_into(const Vec& z, PolicyParams& params) const {
    Eigen::Index off = 0;
    for (auto& Ki : params.K) {
      for (Eigen::Index r = 0; r < Ki.rows(); ++r)
        for (Eigen::Index c = 0; c < Ki.cols(); ++c) Ki(r, c) = z[off++];
    }
    for (auto& u : params.u_bar) {
      for (Eigen::Index r = 0; r < u.size(); ++r) u[r] = z[off++];
    }
  }

  std::uint64_t id_;
  ProblemSpec spec_;
  std::vector<Scenario> scenarios_;
  int n_params_;
};

}  // namespace

InnerProblem build_inner_max_cost(const ProblemSpec& spec, const PolicyParams& params,
                                  const std::optional<XInitBox>& x_init_box) {
  std::shared_ptr<AdversaryEval> eval;
  InnerProblem inner = build_adversary_base(spec, params, x_init_box, eval);
  inner.nlp.objective = [eval](const Vec& z) { return -eval->cost(z); };
  return inner;
}

InnerProblem build_inner_max_constraint(const ProblemSpec& spec, const PolicyParams& params,
                                        int constraint_index,
                                        const std::optional<XInitBox>& x_init_box) {
  if (constraint_index < 0 ||
      constraint_index >= static_cast<int>(spec.path_constraints.size()))
    throw_invalid("build_inner_max_constraint: constraint index out of range");
  std::shared_ptr<AdversaryEval> eval;
  InnerProblem inner = build_adversary_base(spec, params, x_init_box, eval);
  inner.nlp.objective = [eval, constraint_index](const Vec& z) {
    return -eval->constraint(z, constraint_index);
  };
  return inner;
}

Vec OuterProblem::pack(const PolicyParams& params, double tau) const {
  Vec z(n_params + 1);
  z.head(n_params) = params.pack();
  z[n_params] = tau;
  return z;
}

OuterProblem build_outer_min(const ProblemSpec& spec, const ScenarioSet& scenarios) {
  spec.validate();
  if (scenarios.empty()) throw_invalid("build_outer_min: scenario set is empty");

  std::vector<Scenario> list;
  list.reserve(static_cast<std::size_t>(scenarios.size()));
  for (const auto& rec : scenarios.records()) list.push_back(rec.scenario);
  auto eval = std::make_shared<OuterEval>(spec, std::move(list));

  OuterProblem outer;
  outer.n_params = eval->n_params();
  NlpProblem& nlp = outer.nlp;
  nlp.n_vars = outer.n_params + 1;
  nlp.lo.resize(nlp.n_vars);
  nlp.hi.resize(nlp.n_vars);

  const PolicyForm& form = outer_policy_form(spec);
  const int n_gain = form.lags * spec.model.n_u * spec.model.n_y;
  for (int i = 0; i < n_gain; ++i) {
    nlp.lo[i] = form.gain_lo;
    nlp.hi[i] = form.gain_hi;
  }
  for (int i = n_gain; i < outer.n_params; ++i) {
    nlp.lo[i] = form.ff_lo;
    nlp.hi[i] = form.ff_hi;
  }
  nlp.lo[outer.n_params] = -kInf;
  nlp.hi[outer.n_params] = kInf;

  const int tau_index = outer.n_params;
  nlp.objective = [tau_index](const Vec& z) { return z[tau_index]; };

  for (int s = 0; s < scenarios.size(); ++s) {
    nlp.ineq_constraints.push_back(
        [eval, s, tau_index](const Vec& z) { return eval->cost_of(z, s) - z[tau_index]; });
    for (int i = 0; i < static_cast<int>(spec.path_constraints.size()); ++i) {
      nlp.ineq_constraints.push_back(
          [eval, s, i](const Vec& z) { return eval->constraint_of(z, i, s); });
    }
  }
  return outer;
}

PolicyParams unpack_policy(const ProblemSpec& spec, ConstRef z) {
  const int np = spec.policy.param_count(spec.model.n_u, spec.model.n_y, spec.N);
  return PolicyParams::unpack(z.head(np), spec.policy.lags, spec.model.n_u, spec.model.n_y, spec.N);
}

double history_inconsistency(const ProblemSpec& spec, const Scenario& scenario) {
  const SystemModel& model = spec.model;
  Vec x = scenario.x_init;
  Vec x_next(model.n_x);
  Vec y(model.n_y);
  double worst = 0.0;
  for (int i = 0; i <= spec.M; ++i) {
    model.measure(x, scenario.rho_h, scenario.V.col(i), y);
    worst = std::max(worst,
                     (spec.Y0[static_cast<std::size_t>(i)] - y).lpNorm<Eigen::Infinity>());
    if (i < spec.M) {
      model.step(x, spec.U0[static_cast<std::size_t>(i)], scenario.rho_f, scenario.W.col(i), x_next);
      x = x_next;
    }
  }
  return worst;
}

Scenario extract_scenario(const ProblemSpec& spec, const NlpResult& result, double tol) {
  const ScenarioLayout layout = spec.scenario_layout();
  if (result.z_star.size() != layout.dim())
    throw Error(ErrorCode::inconsistent_scenario,
                "extract_scenario: result does not come from an inner problem");
  Scenario s = layout.unpack(result.z_star);

  const double slack = tol + 1e-12;
  if (!spec.uncertainty.rho_f_set.contains(s.rho_f, slack))
    throw Error(ErrorCode::inconsistent_scenario, "extract_scenario: rho_f outside its set");
  if (!spec.uncertainty.rho_h_set.contains(s.rho_h, slack))
    throw Error(ErrorCode::inconsistent_scenario, "extract_scenario: rho_h outside its set");
  for (int t = 0; t < layout.w_steps; ++t) {
    if (!spec.uncertainty.w_set.contains(s.W.col(t), slack))
      throw Error(ErrorCode::inconsistent_scenario,
                  "extract_scenario: disturbance outside its set at step " + std::to_string(t));
  }
  for (int t = 0; t < layout.v_steps; ++t) {
    if (!spec.uncertainty.v_set.contains(s.V.col(t), slack))
      throw Error(ErrorCode::inconsistent_scenario,
                  "extract_scenario: noise outside its set at step " + std::to_string(t));
  }
  if (spec.beta_box) {
    for (int i = 0; i < layout.n_x; ++i) {
      if (s.x_init[i] < spec.beta_box->lo[i] - slack || s.x_init[i] > spec.beta_box->hi[i] + slack)
        throw Error(ErrorCode::inconsistent_scenario, "extract_scenario: x_init violates beta box");
    }
  }
  const double mismatch = history_inconsistency(spec, s);
  if (mismatch > slack)
    throw Error(ErrorCode::inconsistent_scenario,
                "extract_scenario: past measurements inconsistent by " + std::to_string(mismatch));
  return s;
}

Scenario nominal_scenario(const ProblemSpec& spec, const SolverSettings& settings) {
  spec.validate();
  const ScenarioLayout layout = spec.scenario_layout();
  Scenario s;
  layout.resize(s);
  s.rho_f = spec.uncertainty.rho_f_set.center();
  s.rho_h = spec.uncertainty.rho_h_set.center();
  const Vec w_center = spec.uncertainty.w_set.center();
  const Vec v_center = spec.uncertainty.v_set.center();
  for (int t = 0; t < layout.w_steps; ++t) s.W.col(t) = w_center;
  for (int t = 0; t < layout.v_steps; ++t) s.V.col(t) = v_center;

  // Invert the first measurement for x_init, within the beta box.
  const SystemModel& model = spec.model;
  NlpProblem inversion;
  inversion.n_vars = model.n_x;
  inversion.lo = spec.beta_box ? spec.beta_box->lo : Vec::Constant(model.n_x, -kInf);
  inversion.hi = spec.beta_box ? spec.beta_box->hi : Vec::Constant(model.n_x, kInf);
  const Vec y_first = spec.Y0.front();
  inversion.objective = [&model, &y_first, &v_center, rho_h = s.rho_h](const Vec& x) {
    return (model.measure_eval(x, rho_h, v_center) - y_first).squaredNorm();
  };
  Vec x0(model.n_x);
  for (int i = 0; i < model.n_x; ++i) {
    const bool finite = std::isfinite(inversion.lo[i]) && std::isfinite(inversion.hi[i]);
    x0[i] = finite ? 0.5 * (inversion.lo[i] + inversion.hi[i]) : 0.0;
  }
  s.x_init = solve(inversion, x0, settings).z_star;

  // For additive measurement noise, pin the past noise to the implied values.
  bool consistent = false;
  if (model.additive_measurement_noise) {
    Vec x = s.x_init;
    Vec x_next(model.n_x), y_clean(model.n_y);
    const Vec v_zero = Vec::Zero(model.n_v);
    bool members = true;
    for (int i = 0; i <= spec.M; ++i) {
      model.measure(x, s.rho_h, v_zero, y_clean);
      const Vec implied = spec.Y0[static_cast<std::size_t>(i)] - y_clean;
      if (!spec.uncertainty.v_set.contains(implied, settings.tol_feas)) {
        members = false;
        break;
      }
      s.V.col(i) = implied;
      if (i < spec.M) {
        model.step(x, spec.U0[static_cast<std::size_t>(i)], s.rho_f, s.W.col(i), x_next);
        x = x_next;
      }
    }
    consistent = members && history_inconsistency(spec, s) <= settings.tol_feas;
  }

  if (!consistent) {
    // Feasibility fallback: search the adversary's feasible set directly.
    const PolicyParams params =
        PolicyParams::zeros(spec.policy.lags, spec.model.n_u, spec.model.n_y, spec.N);
    std::shared_ptr<AdversaryEval> eval;
    InnerProblem feasibility = build_adversary_base(spec, params, std::nullopt, eval);
    feasibility.nlp.objective = [](const Vec&) { return 0.0; };
    std::vector<Vec> warm = {layout.pack(s)};
    const NlpResult res = multi_start_solve(feasibility.nlp, settings, warm);
    try {
      s = extract_scenario(spec, res, settings.tol_feas);
    } catch (const Error& e) {
      throw Error(ErrorCode::synthesis_infeasible,
                  std::string("nominal_scenario: no uncertainty realization is consistent with "
                              "the measurement history (") +
                      e.what() + ")");
    }
  }
  return s;
}

}  // namespace sipg
