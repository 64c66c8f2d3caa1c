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

#include <vector>

#include "sipg/core/types.hpp"

namespace sipg {

/// Structure of the measurement-feedback law
///   u_{k+j} = sum_{i=1..lags} K_i y_{k+j-i+1} + u_bar_j
/// lags = 0 is open loop. Gains are shared across the horizon; the
/// feedforward sequence is time-varying.
struct PolicyForm {
  int lags = 0;
  bool gains_shared = true;
  double gain_lo = -1.0;  // bounds applied to every gain entry
  double gain_hi = 1.0;
  double ff_lo = -1.0;  // bounds applied to every feedforward entry
  double ff_hi = 1.0;

  /// Number of decision scalars for a (n_u, n_y, N) problem.
  int param_count(int n_u, int n_y, int horizon) const {
    return lags * n_u * n_y + horizon * n_u;
  }
};

/// Decision variables of the gain design: `K[i]` multiplies the measurement
/// lagged by i steps (K[0] applies to the current measurement), `u_bar[j]` is
/// the feedforward at the j-th future step.
struct PolicyParams {
  std::vector<Mat> K;      // lags matrices, each n_u x n_y
  std::vector<Vec> u_bar;  // N vectors, each n_u

  bool inside(const PolicyForm& form, double tol = 0.0) const;

  /// Flat packing used by the outer NLP: K[0] row-major, K[1], ..., then
  /// u_bar[0], ..., u_bar[N-1].
  Vec pack() const;
  static PolicyParams unpack(ConstRef z, int lags, int n_u, int n_y, int horizon);

  static PolicyParams zeros(int lags, int n_u, int n_y, int horizon);
};

/// Evaluates the policy on a measurement window ordered newest first
/// (window[0] = current measurement). Throws on dimension mismatch.
Vec policy_eval(const PolicyForm& form, const PolicyParams& params,
                const std::vector<Vec>& window, int step_index);

}  // namespace sipg
