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

#include "sipg/io/reports.hpp"

#include <cmath>
#include <sstream>

#include "sipg/io/gains_io.hpp"
#include "sipg/io/text_format.hpp"

namespace sipg {

std::string synthesis_report_text(const SynthesisReport& report) {
  std::ostringstream out;
  out << "tau_star = " << format_g17(report.tau_star) << "\n";
  out << "iterations = " << report.iterations << "\n";
  out << "scenario_count = " << report.scenario_set.size() << "\n";
  out << "terminated_by = " << termination_name(report.terminated_by) << "\n";
  out << "\n";
  out << "# iteration log: tau / worst inner cost / worst violation / scenarios / statuses\n";
  for (const auto& rec : report.history) {
    out << "iter " << rec.iteration << ": tau=" << format_g17(rec.tau);
    out << " worst_cost=" << format_g17(rec.worst_inner_cost);
    out << " worst_violation=" << format_g17(rec.worst_violation);
    out << " scenarios=" << rec.scenario_count;
    out << " added=" << rec.added;
    out << " outer=" << solve_status_name(rec.outer_status);
    out << " inner=[";
    for (std::size_t i = 0; i < rec.inner_statuses.size(); ++i) {
      if (i > 0) out << ",";
      out << solve_status_name(rec.inner_statuses[i]);
    }
    out << "]\n";
  }
  out << "\n# scenarios: origin / added at iteration / replayed value\n";
  for (int i = 0; i < report.scenario_set.size(); ++i) {
    const auto& rec = report.scenario_set[i];
    out << "scenario " << i << ": " << scenario_origin_name(rec.origin);
    if (rec.origin == ScenarioOrigin::constraint_adversary)
      out << "(" << rec.constraint_index << ")";
    if (rec.origin != ScenarioOrigin::initial)
      out << " iter=" << rec.added_iteration << " value=" << format_g17(rec.replay_value);
    out << "\n";
  }
  return out.str();
}

void write_synthesis_outputs(const std::string& dir, const ProblemSpec& spec,
                             const SynthesisReport& report) {
  ensure_directory(dir);

  GainsFile gains;
  gains.params = report.params_star;
  gains.lags = spec.policy.lags;
  gains.n_u = spec.model.n_u;
  gains.n_y = spec.model.n_y;
  gains.horizon = spec.N;
  gains.tau = report.tau_star;
  gains.save(dir + "/gains.txt");

  TextWriter rep(dir + "/report.txt");
  rep.raw(synthesis_report_text(report));
  rep.close();

  TextWriter csv(dir + "/history.csv");
  csv.line("iteration,tau,worst_inner_cost,worst_violation,scenario_count");
  for (const auto& rec : report.history) {
    csv.line(std::to_string(rec.iteration) + "," + format_g17(rec.tau) + "," +
             format_g17(rec.worst_inner_cost) + "," + format_g17(rec.worst_violation) + "," +
             std::to_string(rec.scenario_count));
  }
  csv.close();
}

std::string validation_report_text(const ValidationReport& report, std::optional<double> tau) {
  std::ostringstream out;
  out << "runs = " << report.n_runs << "\n";
  out << "avg_cost = " << format_g17(report.avg_cost) << "\n";
  out << "max_cost = " << format_g17(report.max_cost) << "\n";
  out << "min_cost = " << format_g17(report.min_cost) << "\n";
  out << "violations = " << report.violation_count << "\n";
  out << "diverged = " << report.diverged_count << "\n";
  out << "acceptance_rate = " << format_g17(report.acceptance_rate) << "\n";
  if (tau) {
    out << "tau_star = " << format_g17(*tau) << "\n";
    const double slack = *tau + 0.05 * std::abs(*tau);
    if (report.max_cost > slack) {
      out << "WARNING: max simulated cost " << format_g17(report.max_cost)
          << " exceeds the synthesis bound " << format_g17(*tau)
          << " by more than 5%; the inner maximizations were likely not globally optimal\n";
    }
  }
  return out.str();
}

void write_validation_outputs(const std::string& dir, const ValidationReport& report,
                              std::optional<double> tau) {
  ensure_directory(dir);

  TextWriter rep(dir + "/report.txt");
  rep.raw(validation_report_text(report, tau));
  rep.close();

  const int n_x = report.runs.empty() ? 0 : static_cast<int>(report.runs.front().terminal_state.size());

  TextWriter csv(dir + "/runs.csv");
  {
    std::string header = "run,cost,max_g";
    for (int j = 0; j < n_x; ++j) header += ",terminal_x" + std::to_string(j + 1);
    csv.line(header);
  }
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const RunRecord& rec = report.runs[r];
    std::string row = std::to_string(r) + "," + format_g17(rec.cost) + "," +
                      format_g17(rec.max_constraint);
    for (int j = 0; j < n_x; ++j) row += "," + format_g17(rec.terminal_state[j]);
    csv.line(row);
  }
  csv.close();

  TextWriter cloud(dir + "/cloud.csv");
  {
    std::string header;
    for (int j = 0; j < n_x; ++j) header += "x" + std::to_string(j + 1) + ",";
    cloud.line(header + "accepted");
  }
  for (const RunRecord& rec : report.runs) {
    std::string row;
    for (int j = 0; j < n_x; ++j) row += format_g17(rec.terminal_state[j]) + ",";
    row += (rec.max_constraint > 0.0 || rec.diverged) ? "0" : "1";
    cloud.line(row);
  }
  cloud.close();
}

}  // namespace sipg
