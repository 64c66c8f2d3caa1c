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

#include <functional>
#include <string>

#include "sipg/core/types.hpp"
#include "sipg/util/errors.hpp"

namespace sipg {

/// Discrete-time system in explicit-update form
///   x_{k+1} = step(x_k, u_k, rho_f, w_k)
///   y_k     = measure(x_k, rho_h, v_k)
/// Both maps write into a caller-provided output block so the hot rollout
/// loops stay allocation-free. Maps must be deterministic and side-effect
/// free; they are called concurrently from many threads.
struct SystemModel {
  using StepFn = std::function<void(ConstRef x, ConstRef u, ConstRef rho_f, ConstRef w, MutRef out)>;
  using MeasureFn = std::function<void(ConstRef x, ConstRef rho_h, ConstRef v, MutRef out)>;

  std::string name;
  int n_x = 0;
  int n_u = 0;
  int n_y = 0;
  int n_w = 0;
  int n_v = 0;
  int n_rho_f = 0;
  int n_rho_h = 0;
  StepFn step;
  MeasureFn measure;
  /// True when measure(x, rho_h, v) == measure(x, rho_h, 0) + v.
  bool additive_measurement_noise = true;

  void validate() const {
    if (n_x <= 0 || n_u <= 0 || n_y <= 0) throw_invalid("model: n_x, n_u, n_y must be positive");
    if (n_w < 0 || n_v < 0 || n_rho_f < 0 || n_rho_h < 0)
      throw_invalid("model: dimensions must be nonnegative");
    if (!step || !measure) throw_invalid("model: step and measure must be set");
  }

  /// Allocating conveniences for call sites outside the hot path.
  Vec step_eval(ConstRef x, ConstRef u, ConstRef rho_f, ConstRef w) const {
    Vec out(n_x);
    step(x, u, rho_f, w, out);
    return out;
  }
  Vec measure_eval(ConstRef x, ConstRef rho_h, ConstRef v) const {
    Vec out(n_y);
    measure(x, rho_h, v, out);
    return out;
  }
};

}  // namespace sipg
