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

#include "sipg/core/trajectory.hpp"

#include "sipg/util/errors.hpp"

namespace sipg {

Vec ScenarioLayout::pack(const Scenario& s) const {
  Vec z(dim());
  z.segment(x_init_offset(), n_x) = s.x_init;
  z.segment(rho_f_offset(), n_rho_f) = s.rho_f;
  z.segment(rho_h_offset(), n_rho_h) = s.rho_h;
  for (int t = 0; t < w_steps; ++t) z.segment(w_offset(t), n_w) = s.W.col(t);
  for (int t = 0; t < v_steps; ++t) z.segment(v_offset(t), n_v) = s.V.col(t);
  return z;
}

void ScenarioLayout::resize(Scenario& s) const {
  s.x_init.resize(n_x);
  s.rho_f.resize(n_rho_f);
  s.rho_h.resize(n_rho_h);
  s.W.resize(n_w, w_steps);
  s.V.resize(n_v, v_steps);
}

void ScenarioLayout::unpack_into(ConstRef z, Scenario& s) const {
  if (z.size() != dim()) throw_invalid("ScenarioLayout: packed size mismatch");
  s.x_init = z.segment(x_init_offset(), n_x);
  s.rho_f = z.segment(rho_f_offset(), n_rho_f);
  s.rho_h = z.segment(rho_h_offset(), n_rho_h);
  for (int t = 0; t < w_steps; ++t) s.W.col(t) = z.segment(w_offset(t), n_w);
  for (int t = 0; t < v_steps; ++t) s.V.col(t) = z.segment(v_offset(t), n_v);
}

Scenario ScenarioLayout::unpack(ConstRef z) const {
  Scenario s;
  resize(s);
  unpack_into(z, s);
  return s;
}

}  // namespace sipg
