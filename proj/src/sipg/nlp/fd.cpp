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

#include "sipg/nlp/fd.hpp"

#include <cmath>

#include "sipg/util/errors.hpp"

namespace sipg {

namespace {

[[noreturn]] void fail(Eigen::Index i) {
  throw Error(ErrorCode::gradient_failure,
              "fd_gradient: non-finite evaluation at coordinate " + std::to_string(i));
}

}  // namespace

Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& z, double step) {
  if (!(step > 0.0)) throw_invalid("fd_gradient: step must be positive");
  Vec g(z.size());
  Vec zp = z;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    zp[i] = zi + step;
    const double fp = f(zp);
    zp[i] = zi - step;
    const double fm = f(zp);
    zp[i] = zi;
    if (!std::isfinite(fp) || !std::isfinite(fm)) fail(i);
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

Vec fd_gradient_bounded(const std::function<double(const Vec&)>& f, const Vec& z, double step,
                        const Vec& lo, const Vec& hi) {
  if (!(step > 0.0)) throw_invalid("fd_gradient: step must be positive");
  Vec g(z.size());
  Vec zp = z;
  double f_center = 0.0;
  bool have_center = false;
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double zi = z[i];
    const double up = std::min(zi + step, hi[i]);
    const double dn = std::max(zi - step, lo[i]);
    double fp, fm;
    if (up > zi && dn < zi) {
      zp[i] = up;
      fp = f(zp);
      zp[i] = dn;
      fm = f(zp);
    } else if (up > zi) {  // pinned at the lower bound
      if (!have_center) {
        f_center = f(z);
        have_center = true;
      }
      zp[i] = up;
      fp = f(zp);
      fm = f_center;
    } else if (dn < zi) {  // pinned at the upper bound
      if (!have_center) {
        f_center = f(z);
        have_center = true;
      }
      zp[i] = dn;
      fm = f(zp);
      fp = f_center;
    } else {  // fixed coordinate (lo == hi)
      g[i] = 0.0;
      zp[i] = zi;
      continue;
    }
    zp[i] = zi;
    if (!std::isfinite(fp) || !std::isfinite(fm)) fail(i);
    g[i] = (fp - fm) / (up - dn);
  }
  return g;
}

}  // namespace sipg
