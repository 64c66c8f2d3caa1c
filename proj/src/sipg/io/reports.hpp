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

#include <optional>
#include <string>

#include "sipg/analysis/validate.hpp"
#include "sipg/sip/reduction.hpp"

namespace sipg {

/// Writes gains.txt, report.txt and history.csv
/// (iteration,tau,worst_inner_cost,worst_violation,scenario_count) into dir.
void write_synthesis_outputs(const std::string& dir, const ProblemSpec& spec,
                             const SynthesisReport& report);

/// Writes report.txt, runs.csv (run,cost,max_g,terminal_x1..terminal_xn) and
/// cloud.csv (terminal states in the feasible-set cloud format) into dir.
/// tau, when given, enables the worst-case upper-bound warning line.
void write_validation_outputs(const std::string& dir, const ValidationReport& report,
                              std::optional<double> tau);

std::string synthesis_report_text(const SynthesisReport& report);
std::string validation_report_text(const ValidationReport& report, std::optional<double> tau);

}  // namespace sipg
