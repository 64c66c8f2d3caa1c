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

#include "sipg/zoo/models.hpp"

#include <cmath>

#include "sipg/util/errors.hpp"

namespace sipg {

const char* policy_kind_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::open_loop: return "open_loop";
    case PolicyKind::one_step: return "one_step";
    case PolicyKind::two_step: return "two_step";
  }
  return "unknown";
}

PolicyKind policy_kind_from_name(const std::string& name) {
  if (name == "open_loop") return PolicyKind::open_loop;
  if (name == "one_step") return PolicyKind::one_step;
  if (name == "two_step") return PolicyKind::two_step;
  throw_invalid("unknown policy kind: " + name);
}

ProblemSpec toy2d_spec() {
  SystemModel model;
  model.name = "toy2d";
  model.n_x = 2;
  model.n_u = 2;
  model.n_y = 2;
  model.n_w = 2;
  model.n_v = 2;
  model.step = [](ConstRef x, ConstRef u, ConstRef, ConstRef w, MutRef out) {
    out[0] = x[0] + u[0] + w[0];
    out[1] = x[1] + u[1] + w[1];
  };
  model.measure = [](ConstRef x, ConstRef, ConstRef v, MutRef out) {
    out[0] = x[0] + v[0];
    out[1] = x[1] + v[1];
  };
  model.additive_measurement_noise = true;

  ProblemSpec spec;
  spec.model = model;
  spec.uncertainty.w_set = BoundedSet::ball(Vec::Zero(2), 1.0);
  spec.uncertainty.v_set = BoundedSet::ball(Vec::Zero(2), 2.0);
  spec.N = 1;
  spec.M = 1;
  spec.Y0 = {Vec::Zero(2), (Vec(2) << 1.0, 2.0).finished()};
  spec.U0 = {Vec::Ones(2)};
  spec.cost = CostSpec::terminal_tracking({0, 1}, (Vec(2) << 2.0, 3.0).finished());
  spec.path_constraints = {ConstraintSpec::terminal_bound(1, 4.5)};
  spec.policy.lags = 0;
  spec.policy.ff_lo = -5.0;
  spec.policy.ff_hi = 5.0;
  spec.validate();
  return spec;
}

SystemModel quadrotor_model(double ts) {
  if (!(ts > 0.0)) throw_invalid("quadrotor_model: sampling time must be positive");
  constexpr double kArm = 0.1;      // moment arm per motor
  constexpr double kGravity = 9.81;

  SystemModel model;
  model.name = "quadrotor";
  model.n_x = 6;
  model.n_u = 2;
  model.n_y = 3;
  model.n_w = 0;
  model.n_v = 3;
  model.n_rho_f = 2;  // (m, I)
  model.step = [ts](ConstRef x, ConstRef u, ConstRef rho_f, ConstRef, MutRef out) {
    const double m = rho_f[0];
    const double inertia = rho_f[1];
    const double thrust = u[0] + u[1];
    const double s5 = std::sin(x[4]);
    const double c5 = std::cos(x[4]);
    out[0] = x[0] + ts * x[1];
    out[1] = x[1] + ts * s5 * thrust / m;
    out[2] = x[2] + ts * x[3];
    out[3] = x[3] + ts * (c5 * thrust / m - kGravity);
    out[4] = x[4] + ts * x[5];
    out[5] = x[5] + ts * kArm * (u[0] - u[1]) / inertia;
  };
  model.measure = [](ConstRef x, ConstRef, ConstRef v, MutRef out) {
    out[0] = x[0] + v[0];
    out[1] = x[2] + v[1];
    out[2] = x[4] + v[2];
  };
  model.additive_measurement_noise = true;
  return model;
}

ProblemSpec quadrotor_spec(PolicyKind kind, double ts) {
  ProblemSpec spec;
  spec.model = quadrotor_model(ts);
  spec.uncertainty.rho_f_set =
      BoundedSet::box((Vec(2) << 0.9, 0.001).finished(), (Vec(2) << 1.1, 0.0015).finished());
  spec.uncertainty.v_set = BoundedSet::box(Vec::Constant(3, -0.1), Vec::Constant(3, 0.1));
  spec.N = 7;
  spec.M = 2;
  spec.Y0 = {Vec::Zero(3), Vec::Zero(3), Vec::Zero(3)};
  spec.U0 = {Vec::Constant(2, 4.905), Vec::Constant(2, 4.905)};

  BetaBox beta;
  beta.lo = Vec::Constant(6, -kInf);
  beta.hi = Vec::Constant(6, kInf);
  beta.lo[1] = -0.05;
  beta.hi[1] = 0.05;
  spec.beta_box = beta;

  spec.cost = CostSpec::terminal_tracking({0, 2}, (Vec(2) << 0.0, 2.0).finished());
  spec.path_constraints = {ConstraintSpec::terminal_bound(2, 3.5)};

  switch (kind) {
    case PolicyKind::open_loop:
      spec.policy.lags = 0;
      spec.policy.ff_lo = -20.0;
      spec.policy.ff_hi = 20.0;
      break;
    case PolicyKind::one_step:
      spec.policy.lags = 1;
      spec.policy.gain_lo = -3.0;
      spec.policy.gain_hi = 3.0;
      spec.policy.ff_lo = -15.0;
      spec.policy.ff_hi = 15.0;
      break;
    case PolicyKind::two_step:
      spec.policy.lags = 2;
      spec.policy.gain_lo = -1.5;
      spec.policy.gain_hi = 1.5;
      spec.policy.ff_lo = -15.0;
      spec.policy.ff_hi = 15.0;
      break;
  }
  spec.validate();
  return spec;
}

ProblemSpec spec_from_registry(const std::string& model_name, PolicyKind kind, double ts) {
  if (model_name == "toy2d") {
    ProblemSpec spec = toy2d_spec();
    if (kind != PolicyKind::open_loop) {
      spec.policy.lags = (kind == PolicyKind::one_step) ? 1 : 2;
      spec.policy.gain_lo = -1.0;
      spec.policy.gain_hi = 1.0;
      spec.validate();
    }
    return spec;
  }
  if (model_name == "quadrotor") return quadrotor_spec(kind, ts);
  throw_invalid("unknown model: " + model_name);
}

std::vector<std::string> registry_names() { return {"toy2d", "quadrotor"}; }

}  // namespace sipg
