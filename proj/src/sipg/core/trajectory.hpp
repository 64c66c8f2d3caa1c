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

#include "sipg/core/types.hpp"

namespace sipg {

/// One uncertainty realization over the full window. Column t of W / V refers
/// to time step (k - M + t); x_init is the state at k - M.
struct Scenario {
  Vec x_init;
  Vec rho_f;
  Vec rho_h;
  Mat W;  // n_w x (M + N)
  Mat V;  // n_v x (M + N + 1)
};

/// States, measurements and inputs over the full window. Column t refers to
/// time step (k - M + t): X and Y have M + N + 1 columns, U has M + N.
struct TrajectoryBundle {
  Mat X;
  Mat Y;
  Mat U;

  void resize(int n_x, int n_y, int n_u, int m, int n) {
    const int total = m + n + 1;
    if (X.rows() != n_x || X.cols() != total) X.resize(n_x, total);
    if (Y.rows() != n_y || Y.cols() != total) Y.resize(n_y, total);
    if (U.rows() != n_u || U.cols() != total - 1) U.resize(n_u, total - 1);
  }
};

/// Flat packing of a Scenario used by the adversarial NLPs:
/// [x_init | rho_f | rho_h | W columns | V columns].
struct ScenarioLayout {
  int n_x = 0, n_rho_f = 0, n_rho_h = 0, n_w = 0, n_v = 0;
  int w_steps = 0, v_steps = 0;

  int x_init_offset() const { return 0; }
  int rho_f_offset() const { return n_x; }
  int rho_h_offset() const { return n_x + n_rho_f; }
  int w_offset(int t) const { return n_x + n_rho_f + n_rho_h + t * n_w; }
  int v_offset(int t) const { return n_x + n_rho_f + n_rho_h + w_steps * n_w + t * n_v; }
  int dim() const { return n_x + n_rho_f + n_rho_h + w_steps * n_w + v_steps * n_v; }

  Vec pack(const Scenario& s) const;
  Scenario unpack(ConstRef z) const;
  /// Unpacks without allocating (matrices must already have the right shape).
  void unpack_into(ConstRef z, Scenario& s) const;
  void resize(Scenario& s) const;
};

}  // namespace sipg
