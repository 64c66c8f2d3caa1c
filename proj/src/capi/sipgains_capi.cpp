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

#include "sipgains/sipgains.h"

#include <memory>
#include <new>
#include <optional>
#include <string>

#include "sipg/analysis/feasible.hpp"
#include "sipg/analysis/validate.hpp"
#include "sipg/io/config.hpp"
#include "sipg/io/gains_io.hpp"
#include "sipg/io/reports.hpp"
#include "sipg/sip/reduction.hpp"
#include "sipg/util/errors.hpp"
#include "sipg/util/rng.hpp"

struct sipg_problem {
  sipg::ConfigFile config;
  sipg::ProblemSpec spec;
};

struct sipg_gains {
  sipg::GainsFile file;
};

struct sipg_synthesis {
  sipg::SynthesisReport report;
  sipg::ProblemSpec spec;
};

struct sipg_validation {
  sipg::ValidationReport report;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

sipg_status status_from(const sipg::Error& e) {
  switch (e.code()) {
    case sipg::ErrorCode::invalid_input: return SIPG_ERR_INVALID_ARG;
    case sipg::ErrorCode::parse_error: return SIPG_ERR_PARSE;
    case sipg::ErrorCode::io_error: return SIPG_ERR_IO;
    case sipg::ErrorCode::synthesis_infeasible:
    case sipg::ErrorCode::inconsistent_history: return SIPG_ERR_INFEASIBLE;
    case sipg::ErrorCode::sampling_stalled: return SIPG_ERR_SAMPLING;
    case sipg::ErrorCode::rollout_diverged: return SIPG_ERR_DIVERGED;
    default: return SIPG_ERR_INTERNAL;
  }
}

template <typename Fn>
sipg_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SIPG_OK;
  } catch (const sipg::Error& e) {
    set_error(e.what());
    return status_from(e);
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return SIPG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SIPG_ERR_INTERNAL;
  } catch (...) {
    set_error("unknown error");
    return SIPG_ERR_INTERNAL;
  }
}

sipg_status invalid_arg(const char* message) {
  set_error(message);
  return SIPG_ERR_INVALID_ARG;
}

/// Base-seed wiring: the reduction solvers derive their streams from the
/// effective base seed combined with any per-solver seed from the config.
sipg::ReductionSettings reduction_settings_for(const sipg::ConfigFile& config,
                                               std::uint64_t base_seed) {
  sipg::ReductionSettings settings = config.reduction;
  settings.inner.rng_seed = sipg::Rng::child(base_seed ^ settings.inner.rng_seed, 1).next_u64();
  settings.outer.rng_seed = sipg::Rng::child(base_seed ^ settings.outer.rng_seed, 2).next_u64();
  return settings;
}

}  // namespace

extern "C" {

const char* sipg_status_name(sipg_status status) {
  switch (status) {
    case SIPG_OK: return "ok";
    case SIPG_ERR_INVALID_ARG: return "invalid_argument";
    case SIPG_ERR_PARSE: return "parse_error";
    case SIPG_ERR_IO: return "io_error";
    case SIPG_ERR_INFEASIBLE: return "infeasible";
    case SIPG_ERR_SAMPLING: return "sampling_stalled";
    case SIPG_ERR_DIVERGED: return "diverged";
    case SIPG_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* sipg_last_error(void) { return g_last_error.c_str(); }

sipg_status sipg_problem_from_config_text(const char* text, sipg_problem** out) {
  if (text == nullptr || out == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    auto problem = std::make_unique<sipg_problem>();
    problem->config = sipg::ConfigFile::parse(text);
    problem->spec = problem->config.build_spec();
    *out = problem.release();
  });
}

sipg_status sipg_problem_from_config_file(const char* path, sipg_problem** out) {
  if (path == nullptr || out == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    auto problem = std::make_unique<sipg_problem>();
    problem->config = sipg::ConfigFile::load(path);
    problem->spec = problem->config.build_spec();
    *out = problem.release();
  });
}

void sipg_problem_free(sipg_problem* problem) { delete problem; }

int sipg_problem_state_dim(const sipg_problem* p) { return p ? p->spec.model.n_x : 0; }
int sipg_problem_input_dim(const sipg_problem* p) { return p ? p->spec.model.n_u : 0; }
int sipg_problem_measurement_dim(const sipg_problem* p) { return p ? p->spec.model.n_y : 0; }
int sipg_problem_horizon(const sipg_problem* p) { return p ? p->spec.N : 0; }
int sipg_problem_memory(const sipg_problem* p) { return p ? p->spec.M : 0; }
uint64_t sipg_problem_seed(const sipg_problem* p) { return p ? p->config.seed : 0; }
int sipg_problem_default_runs(const sipg_problem* p) { return p ? p->config.validate_runs : 0; }

sipg_status sipg_synthesize(const sipg_problem* problem, const sipg_synthesis_options* options,
                            sipg_synthesis** out) {
  if (problem == nullptr || out == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    std::uint64_t base_seed = problem->config.seed;
    sipg::ReductionSettings settings;
    if (options != nullptr && options->override_seed != 0) base_seed = options->seed;
    settings = reduction_settings_for(problem->config, base_seed);
    if (options != nullptr && options->max_scenarios > 0)
      settings.max_scenarios = options->max_scenarios;
    if (options != nullptr && options->max_iterations > 0)
      settings.max_iterations = options->max_iterations;

    auto synthesis = std::make_unique<sipg_synthesis>(
        sipg_synthesis{sipg::local_reduction(problem->spec, settings), problem->spec});
    *out = synthesis.release();
  });
}

void sipg_synthesis_free(sipg_synthesis* synthesis) { delete synthesis; }

double sipg_synthesis_tau(const sipg_synthesis* s) { return s ? s->report.tau_star : 0.0; }
int sipg_synthesis_iterations(const sipg_synthesis* s) { return s ? s->report.iterations : 0; }
int sipg_synthesis_scenario_count(const sipg_synthesis* s) {
  return s ? s->report.scenario_set.size() : 0;
}
const char* sipg_synthesis_termination(const sipg_synthesis* s) {
  return s ? sipg::termination_name(s->report.terminated_by) : "unknown";
}

sipg_status sipg_synthesis_write(const sipg_synthesis* synthesis, const char* out_dir) {
  if (synthesis == nullptr || out_dir == nullptr) return invalid_arg("null argument");
  return guarded([&] { sipg::write_synthesis_outputs(out_dir, synthesis->spec, synthesis->report); });
}

sipg_status sipg_gains_from_synthesis(const sipg_synthesis* synthesis, sipg_gains** out) {
  if (synthesis == nullptr || out == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    auto gains = std::make_unique<sipg_gains>();
    gains->file.params = synthesis->report.params_star;
    gains->file.lags = synthesis->spec.policy.lags;
    gains->file.n_u = synthesis->spec.model.n_u;
    gains->file.n_y = synthesis->spec.model.n_y;
    gains->file.horizon = synthesis->spec.N;
    gains->file.tau = synthesis->report.tau_star;
    *out = gains.release();
  });
}

sipg_status sipg_gains_load(const char* path, sipg_gains** out) {
  if (path == nullptr || out == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    auto gains = std::make_unique<sipg_gains>();
    gains->file = sipg::GainsFile::load(path);
    *out = gains.release();
  });
}

sipg_status sipg_gains_save(const sipg_gains* gains, const char* path) {
  if (gains == nullptr || path == nullptr) return invalid_arg("null argument");
  return guarded([&] { gains->file.save(path); });
}

void sipg_gains_free(sipg_gains* gains) { delete gains; }

int sipg_gains_has_tau(const sipg_gains* gains) {
  return (gains != nullptr && gains->file.tau.has_value()) ? 1 : 0;
}
double sipg_gains_tau(const sipg_gains* gains) {
  return (gains != nullptr && gains->file.tau) ? *gains->file.tau : 0.0;
}

sipg_status sipg_validate(const sipg_problem* problem, const sipg_gains* gains, int runs,
                          uint64_t seed, sipg_validation** out) {
  if (problem == nullptr || gains == nullptr || out == nullptr)
    return invalid_arg("null argument");
  return guarded([&] {
    const sipg::ProblemSpec& spec = problem->spec;
    if (gains->file.lags != spec.policy.lags || gains->file.n_u != spec.model.n_u ||
        gains->file.n_y != spec.model.n_y || gains->file.horizon != spec.N)
      sipg::throw_invalid("gains file dimensions do not match the problem");
    auto validation = std::make_unique<sipg_validation>();
    validation->report =
        sipg::validate(spec, gains->file.params, runs, seed, problem->config.reduction.inner);
    *out = validation.release();
  });
}

void sipg_validation_free(sipg_validation* validation) { delete validation; }

double sipg_validation_avg_cost(const sipg_validation* v) { return v ? v->report.avg_cost : 0.0; }
double sipg_validation_max_cost(const sipg_validation* v) { return v ? v->report.max_cost : 0.0; }
double sipg_validation_min_cost(const sipg_validation* v) { return v ? v->report.min_cost : 0.0; }
int sipg_validation_violations(const sipg_validation* v) {
  return v ? v->report.violation_count : 0;
}
int sipg_validation_diverged(const sipg_validation* v) { return v ? v->report.diverged_count : 0; }
double sipg_validation_acceptance_rate(const sipg_validation* v) {
  return v ? v->report.acceptance_rate : 0.0;
}

sipg_status sipg_validation_write(const sipg_validation* validation, const sipg_gains* gains,
                                  const char* out_dir) {
  if (validation == nullptr || out_dir == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    std::optional<double> tau;
    if (gains != nullptr && gains->file.tau) tau = gains->file.tau;
    sipg::write_validation_outputs(out_dir, validation->report, tau);
  });
}

sipg_status sipg_feasible_box(const sipg_problem* problem, int step, double* lo, double* hi) {
  if (problem == nullptr || lo == nullptr || hi == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    const sipg::FeasibleBox box =
        sipg::feasible_box(problem->spec, step, problem->config.reduction.inner);
    for (int j = 0; j < problem->spec.model.n_x; ++j) {
      lo[j] = box.lo[j];
      hi[j] = box.hi[j];
    }
  });
}

sipg_status sipg_feasible_sample(const sipg_problem* problem, int step, int n, uint64_t seed,
                                 const char* csv_path, double* acceptance_rate) {
  if (problem == nullptr || csv_path == nullptr) return invalid_arg("null argument");
  return guarded([&] {
    const sipg::SolverSettings& solver = problem->config.reduction.inner;
    const sipg::FeasibleSamples samples =
        sipg::sample_feasible(problem->spec, step, n, seed, solver);
    const sipg::FeasibleBox box = sipg::feasible_box(problem->spec, step, solver);
    sipg::export_cloud(samples.states, box, csv_path);
    if (acceptance_rate != nullptr) *acceptance_rate = samples.acceptance_rate;
  });
}

}  // extern "C"
