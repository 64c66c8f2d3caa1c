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

#include "sipg/io/config.hpp"

#include <set>
#include <sstream>

#include "sipg/io/text_format.hpp"
#include "sipg/util/errors.hpp"

namespace sipg {

namespace {

std::string trim(const std::string& text) {
  const auto begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

void apply_solver_key(SolverSettings& s, const std::string& field, const std::string& value) {
  if (field == "tol_kkt") s.tol_kkt = parse_double_strict(value);
  else if (field == "tol_feas") s.tol_feas = parse_double_strict(value);
  else if (field == "max_outer_iters") s.max_outer_iters = static_cast<int>(parse_long_strict(value));
  else if (field == "max_inner_iters") s.max_inner_iters = static_cast<int>(parse_long_strict(value));
  else if (field == "fd_step") s.fd_step = parse_double_strict(value);
  else if (field == "penalty_init") s.penalty_init = parse_double_strict(value);
  else if (field == "penalty_growth") s.penalty_growth = parse_double_strict(value);
  else if (field == "penalty_cap") s.penalty_cap = parse_double_strict(value);
  else if (field == "n_starts") s.n_starts = static_cast<int>(parse_long_strict(value));
  else if (field == "seed") s.rng_seed = static_cast<std::uint64_t>(parse_long_strict(value));
  else throw Error(ErrorCode::parse_error, "unknown solver setting: " + field);
}

void write_solver_keys(std::ostringstream& out, const std::string& prefix,
                       const SolverSettings& s) {
  out << prefix << ".tol_kkt = " << format_g17(s.tol_kkt) << "\n";
  out << prefix << ".tol_feas = " << format_g17(s.tol_feas) << "\n";
  out << prefix << ".max_outer_iters = " << s.max_outer_iters << "\n";
  out << prefix << ".max_inner_iters = " << s.max_inner_iters << "\n";
  out << prefix << ".fd_step = " << format_g17(s.fd_step) << "\n";
  out << prefix << ".penalty_init = " << format_g17(s.penalty_init) << "\n";
  out << prefix << ".penalty_growth = " << format_g17(s.penalty_growth) << "\n";
  out << prefix << ".penalty_cap = " << format_g17(s.penalty_cap) << "\n";
  out << prefix << ".n_starts = " << s.n_starts << "\n";
  out << prefix << ".seed = " << s.rng_seed << "\n";
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
  ConfigFile cfg;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string raw_line;
  int line_number = 0;
  bool have_model = false;

  while (std::getline(in, raw_line)) {
    ++line_number;
    const auto hash = raw_line.find('#');
    std::string line = trim(hash == std::string::npos ? raw_line : raw_line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::parse_error,
                  "config line " + std::to_string(line_number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw Error(ErrorCode::parse_error,
                  "config line " + std::to_string(line_number) + ": empty key or value");
    if (!seen.insert(key).second)
      throw Error(ErrorCode::parse_error, "duplicate config key: " + key);

    if (key == "model.name") {
      cfg.model_name = value;
      have_model = true;
    } else if (key == "model.ts") {
      cfg.ts = parse_double_strict(value);
    } else if (key == "policy.kind") {
      try {
        cfg.policy_kind = policy_kind_from_name(value);
      } catch (const Error&) {
        throw Error(ErrorCode::parse_error, "unknown policy.kind: " + value);
      }
    } else if (key == "policy.gain_lo") {
      cfg.gain_lo = parse_double_strict(value);
    } else if (key == "policy.gain_hi") {
      cfg.gain_hi = parse_double_strict(value);
    } else if (key == "policy.ff_lo") {
      cfg.ff_lo = parse_double_strict(value);
    } else if (key == "policy.ff_hi") {
      cfg.ff_hi = parse_double_strict(value);
    } else if (key == "reduction.eps_cost") {
      cfg.reduction.eps_cost = parse_double_strict(value);
    } else if (key == "reduction.eps_constraint") {
      cfg.reduction.eps_constraint = parse_double_strict(value);
    } else if (key == "reduction.max_scenarios") {
      cfg.reduction.max_scenarios = static_cast<int>(parse_long_strict(value));
    } else if (key == "reduction.max_iterations") {
      cfg.reduction.max_iterations = static_cast<int>(parse_long_strict(value));
    } else if (key == "reduction.dedup_tol") {
      cfg.reduction.dedup_tol = parse_double_strict(value);
    } else if (key.rfind("solver.inner.", 0) == 0) {
      try {
        apply_solver_key(cfg.reduction.inner, key.substr(13), value);
      } catch (const Error&) {
        throw Error(ErrorCode::parse_error, "unknown config key: " + key);
      }
    } else if (key.rfind("solver.outer.", 0) == 0) {
      try {
        apply_solver_key(cfg.reduction.outer, key.substr(13), value);
      } catch (const Error&) {
        throw Error(ErrorCode::parse_error, "unknown config key: " + key);
      }
    } else if (key == "seed") {
      cfg.seed = static_cast<std::uint64_t>(parse_long_strict(value));
    } else if (key == "validate.runs") {
      cfg.validate_runs = static_cast<int>(parse_long_strict(value));
    } else {
      throw Error(ErrorCode::parse_error, "unknown config key: " + key);
    }
  }
  if (!have_model) throw Error(ErrorCode::parse_error, "config missing model.name");
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) { return parse(read_file(path)); }

std::string ConfigFile::write() const {
  std::ostringstream out;
  out << "model.name = " << model_name << "\n";
  out << "model.ts = " << format_g17(ts) << "\n";
  out << "policy.kind = " << policy_kind_name(policy_kind) << "\n";
  if (gain_lo) out << "policy.gain_lo = " << format_g17(*gain_lo) << "\n";
  if (gain_hi) out << "policy.gain_hi = " << format_g17(*gain_hi) << "\n";
  if (ff_lo) out << "policy.ff_lo = " << format_g17(*ff_lo) << "\n";
  if (ff_hi) out << "policy.ff_hi = " << format_g17(*ff_hi) << "\n";
  out << "reduction.eps_cost = " << format_g17(reduction.eps_cost) << "\n";
  out << "reduction.eps_constraint = " << format_g17(reduction.eps_constraint) << "\n";
  out << "reduction.max_scenarios = " << reduction.max_scenarios << "\n";
  out << "reduction.max_iterations = " << reduction.max_iterations << "\n";
  out << "reduction.dedup_tol = " << format_g17(reduction.dedup_tol) << "\n";
  write_solver_keys(out, "solver.inner", reduction.inner);
  write_solver_keys(out, "solver.outer", reduction.outer);
  out << "seed = " << seed << "\n";
  out << "validate.runs = " << validate_runs << "\n";
  return out.str();
}

ProblemSpec ConfigFile::build_spec() const {
  ProblemSpec spec = spec_from_registry(model_name, policy_kind, ts);
  if (gain_lo) spec.policy.gain_lo = *gain_lo;
  if (gain_hi) spec.policy.gain_hi = *gain_hi;
  if (ff_lo) spec.policy.ff_lo = *ff_lo;
  if (ff_hi) spec.policy.ff_hi = *ff_hi;
  spec.validate();
  return spec;
}

}  // namespace sipg
