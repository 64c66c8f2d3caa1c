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

#include "sipg/core/policy.hpp"

#include "sipg/util/errors.hpp"

namespace sipg {

bool PolicyParams::inside(const PolicyForm& form, double tol) const {
  for (const auto& Ki : K) {
    if ((Ki.array() < form.gain_lo - tol).any() || (Ki.array() > form.gain_hi + tol).any())
      return false;
  }
  for (const auto& u : u_bar) {
    if ((u.array() < form.ff_lo - tol).any() || (u.array() > form.ff_hi + tol).any()) return false;
  }
  return true;
}

Vec PolicyParams::pack() const {
  Eigen::Index n = 0;
  for (const auto& Ki : K) n += Ki.size();
  for (const auto& u : u_bar) n += u.size();
  Vec z(n);
  Eigen::Index off = 0;
  for (const auto& Ki : K) {
    for (Eigen::Index r = 0; r < Ki.rows(); ++r)
      for (Eigen::Index c = 0; c < Ki.cols(); ++c) z[off++] = Ki(r, c);
  }
  for (const auto& u : u_bar) {
    z.segment(off, u.size()) = u;
    off += u.size();
  }
  return z;
}

PolicyParams PolicyParams::unpack(ConstRef z, int lags, int n_u, int n_y, int horizon) {
  const Eigen::Index expected =
      static_cast<Eigen::Index>(lags) * n_u * n_y + static_cast<Eigen::Index>(horizon) * n_u;
  if (z.size() != expected) throw_invalid("PolicyParams::unpack: size mismatch");
  PolicyParams p;
  Eigen::Index off = 0;
  p.K.resize(static_cast<std::size_t>(lags));
  for (int i = 0; i < lags; ++i) {
    p.K[static_cast<std::size_t>(i)].resize(n_u, n_y);
    for (int r = 0; r < n_u; ++r)
      for (int c = 0; c < n_y; ++c) p.K[static_cast<std::size_t>(i)](r, c) = z[off++];
  }
  p.u_bar.resize(static_cast<std::size_t>(horizon));
  for (int j = 0; j < horizon; ++j) {
    p.u_bar[static_cast<std::size_t>(j)] = z.segment(off, n_u);
    off += n_u;
  }
  return p;
}

PolicyParams PolicyParams::zeros(int lags, int n_u, int n_y, int horizon) {
  PolicyParams p;
  p.K.assign(static_cast<std::size_t>(lags), Mat::Zero(n_u, n_y));
  p.u_bar.assign(static_cast<std::size_t>(horizon), Vec::Zero(n_u));
  return p;
}

Vec policy_eval(const PolicyForm& form, const PolicyParams& params,
                const std::vector<Vec>& window, int step_index) {
  if (static_cast<int>(params.K.size()) != form.lags)
    throw_invalid("policy_eval: gain count does not match lags");
  if (step_index < 0 || step_index >= static_cast<int>(params.u_bar.size()))
    throw_invalid("policy_eval: step index out of range");
  if (static_cast<int>(window.size()) < form.lags)
    throw_invalid("policy_eval: window shorter than lags");

  Vec u = params.u_bar[static_cast<std::size_t>(step_index)];
  for (int i = 0; i < form.lags; ++i) {
    const Mat& Ki = params.K[static_cast<std::size_t>(i)];
    const Vec& yi = window[static_cast<std::size_t>(i)];
    if (yi.size() != Ki.cols()) throw_invalid("policy_eval: measurement dimension mismatch");
    u.noalias() += Ki * yi;
  }
  return u;
}

}  // namespace sipg
