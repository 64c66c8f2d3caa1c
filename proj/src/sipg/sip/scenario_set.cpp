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

#include "sipg/sip/scenario_set.hpp"

namespace sipg {

const char* scenario_origin_name(ScenarioOrigin origin) {
  switch (origin) {
    case ScenarioOrigin::initial: return "initial";
    case ScenarioOrigin::cost_adversary: return "cost_adversary";
    case ScenarioOrigin::constraint_adversary: return "constraint_adversary";
  }
  return "unknown";
}

bool ScenarioSet::add(ScenarioRecord record) {
  Vec packed = layout_.pack(record.scenario);
  for (const Vec& existing : packed_) {
    if ((existing - packed).lpNorm<Eigen::Infinity>() < dedup_tol_) return false;
  }
  packed_.push_back(std::move(packed));
  records_.push_back(std::move(record));
  return true;
}

}  // namespace sipg
