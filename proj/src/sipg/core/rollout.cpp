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

#include "sipg/core/rollout.hpp"

#include <cmath>

#include "sipg/util/errors.hpp"

namespace sipg {

void rollout_into(const ProblemSpec& spec, const PolicyParams& params, const Scenario& scenario,
                  TrajectoryBundle& out) {
  const SystemModel& model = spec.model;
  const int total = spec.total_steps();

  if (scenario.x_init.size() != model.n_x || scenario.rho_f.size() != model.n_rho_f ||
      scenario.rho_h.size() != model.n_rho_h)
    throw_invalid("rollout: scenario dimensions do not match model");
  if (scenario.W.rows() != model.n_w || scenario.W.cols() != total - 1 ||
      scenario.V.rows() != model.n_v || scenario.V.cols() != total)
    throw_invalid("rollout: scenario series shape mismatch");
  if (static_cast<int>(params.K.size()) != spec.policy.lags ||
      static_cast<int>(params.u_bar.size()) != spec.N)
    throw_invalid("rollout: policy parameter shape mismatch");
  if (spec.policy.lags >= 1 && !model.additive_measurement_noise)
    throw_invalid("rollout: measurement feedback requires additive measurement noise");

  out.resize(model.n_x, model.n_y, model.n_u, spec.M, spec.N);
  out.X.col(0) = scenario.x_init;

  for (int t = 0; t < total; ++t) {
    model.measure(out.X.col(t), scenario.rho_h, scenario.V.col(t), out.Y.col(t));
    if (t == total - 1) break;

    if (t < spec.M) {
      out.U.col(t) = spec.U0[static_cast<std::size_t>(t)];
    } else {
      const int j = t - spec.M;  // future step index
      auto u = out.U.col(t);
      u = params.u_bar[static_cast<std::size_t>(j)];
      for (int i = 0; i < spec.policy.lags; ++i) {
        u.noalias() += params.K[static_cast<std::size_t>(i)] * out.Y.col(t - i);
      }
    }

    model.step(out.X.col(t), out.U.col(t), scenario.rho_f, scenario.W.col(t), out.X.col(t + 1));
    if (!out.X.col(t + 1).allFinite())
      throw Error(ErrorCode::rollout_diverged,
                  "rollout: non-finite state at step " + std::to_string(t + 1), t + 1);
  }
}

TrajectoryBundle rollout(const ProblemSpec& spec, const PolicyParams& params,
                         const Scenario& scenario) {
  TrajectoryBundle out;
  rollout_into(spec, params, scenario, out);
  return out;
}

Mat dynamics_residual(const SystemModel& model, const Mat& X, const Mat& U, ConstRef rho_f,
                      const Mat& W) {
  if (X.cols() != U.cols() + 1 || X.cols() != W.cols() + 1)
    throw_invalid("dynamics_residual: X must be one step longer than U and W");
  if (X.rows() != model.n_x || U.rows() != model.n_u || W.rows() != model.n_w ||
      rho_f.size() != model.n_rho_f)
    throw_invalid("dynamics_residual: dimension mismatch");

  Mat res(model.n_x, U.cols());
  Vec pred(model.n_x);
  for (Eigen::Index t = 0; t < U.cols(); ++t) {
    model.step(X.col(t), U.col(t), rho_f, W.col(t), pred);
    res.col(t) = X.col(t + 1) - pred;
  }
  return res;
}

Mat measurement_residual(const SystemModel& model, const Mat& X, ConstRef rho_h, const Mat& V,
                         const Mat& Y) {
  if (X.cols() != V.cols() || X.cols() != Y.cols())
    throw_invalid("measurement_residual: X, V, Y must have equal lengths");
  if (X.rows() != model.n_x || V.rows() != model.n_v || Y.rows() != model.n_y ||
      rho_h.size() != model.n_rho_h)
    throw_invalid("measurement_residual: dimension mismatch");

  Mat res(model.n_y, X.cols());
  Vec pred(model.n_y);
  for (Eigen::Index t = 0; t < X.cols(); ++t) {
    model.measure(X.col(t), rho_h, V.col(t), pred);
    res.col(t) = Y.col(t) - pred;
  }
  return res;
}

}  // namespace sipg
