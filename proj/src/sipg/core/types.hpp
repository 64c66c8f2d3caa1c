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

#include <Eigen/Core>
#include <limits>
#include <vector>

namespace sipg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using ConstRef = Eigen::Ref<const Eigen::VectorXd>;
using MutRef = Eigen::Ref<Eigen::VectorXd>;

/// One vector per time step.
using TimeSeries = std::vector<Vec>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace sipg
