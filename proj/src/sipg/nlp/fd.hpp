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

#include "sipg/core/types.hpp"

namespace sipg {

/// Central-difference gradient, (f(z + h e_i) - f(z - h e_i)) / 2h per
/// coordinate. Throws gradient_failure on a non-finite evaluation.
Vec fd_gradient(const std::function<double(const Vec&)>& f, const Vec& z, double step);

/// Same, but evaluation points are kept inside [lo, hi]: the stencil switches
/// to a one-sided difference at a bound it would otherwise cross.
Vec fd_gradient_bounded(const std::function<double(const Vec&)>& f, const Vec& z, double step,
                        const Vec& lo, const Vec& hi);

}  // namespace sipg
