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

/*
 * C interface of the sipgains library: robust output-feedback gain synthesis
 * for uncertain discrete-time nonlinear systems by semi-infinite programming
 * (scenario exchange), plus feasible-set analysis and Monte Carlo validation.
 *
 * All objects are opaque handles created and destroyed through this API.
 * Functions returning sipg_status never throw; on failure they leave outputs
 * untouched and record a thread-local message readable via sipg_last_error().
 * Handles are immutable after creation and safe to share across threads.
 */

#ifndef SIPGAINS_SIPGAINS_H
#define SIPGAINS_SIPGAINS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sipg_status {
  SIPG_OK = 0,
  SIPG_ERR_INVALID_ARG = 1, /* bad handle, dimension or argument */
  SIPG_ERR_PARSE = 2,       /* malformed config or gains file */
  SIPG_ERR_IO = 3,          /* file cannot be read or written */
  SIPG_ERR_INFEASIBLE = 4,  /* history inconsistent or synthesis infeasible */
  SIPG_ERR_SAMPLING = 5,    /* rejection sampler stalled */
  SIPG_ERR_DIVERGED = 6,    /* simulation produced non-finite states */
  SIPG_ERR_INTERNAL = 7
} sipg_status;

typedef struct sipg_problem sipg_problem;
typedef struct sipg_gains sipg_gains;
typedef struct sipg_synthesis sipg_synthesis;
typedef struct sipg_validation sipg_validation;

const char* sipg_status_name(sipg_status status);

/* Message describing the most recent failure on this thread ("" if none). */
const char* sipg_last_error(void);

/* ---- problem ----------------------------------------------------------- */

/* Loads a flat key/value config (see README for the schema). */
sipg_status sipg_problem_from_config_file(const char* path, sipg_problem** out);
sipg_status sipg_problem_from_config_text(const char* text, sipg_problem** out);
void sipg_problem_free(sipg_problem* problem);

int sipg_problem_state_dim(const sipg_problem* problem);
int sipg_problem_input_dim(const sipg_problem* problem);
int sipg_problem_measurement_dim(const sipg_problem* problem);
int sipg_problem_horizon(const sipg_problem* problem);
int sipg_problem_memory(const sipg_problem* problem);
uint64_t sipg_problem_seed(const sipg_problem* problem);     /* config `seed` */
int sipg_problem_default_runs(const sipg_problem* problem);  /* config `validate.runs` */

/* ---- synthesis --------------------------------------------------------- */

typedef struct sipg_synthesis_options {
  int override_seed;       /* nonzero: use `seed` instead of the config seed */
  uint64_t seed;
  int max_scenarios;       /* > 0 overrides the config value */
  int max_iterations;      /* > 0 overrides the config value */
} sipg_synthesis_options;

/* Runs the local-reduction loop. options may be NULL. */
sipg_status sipg_synthesize(const sipg_problem* problem, const sipg_synthesis_options* options,
                            sipg_synthesis** out);
void sipg_synthesis_free(sipg_synthesis* synthesis);

double sipg_synthesis_tau(const sipg_synthesis* synthesis);
int sipg_synthesis_iterations(const sipg_synthesis* synthesis);
int sipg_synthesis_scenario_count(const sipg_synthesis* synthesis);
/* "converged", "scenario_cap" or "iteration_cap". */
const char* sipg_synthesis_termination(const sipg_synthesis* synthesis);

/* Writes gains.txt, report.txt and history.csv into out_dir. */
sipg_status sipg_synthesis_write(const sipg_synthesis* synthesis, const char* out_dir);

/* ---- gains files -------------------------------------------------------- */

sipg_status sipg_gains_from_synthesis(const sipg_synthesis* synthesis, sipg_gains** out);
sipg_status sipg_gains_load(const char* path, sipg_gains** out);
sipg_status sipg_gains_save(const sipg_gains* gains, const char* path);
void sipg_gains_free(sipg_gains* gains);

int sipg_gains_has_tau(const sipg_gains* gains);
double sipg_gains_tau(const sipg_gains* gains);

/* ---- validation --------------------------------------------------------- */

/* Monte Carlo closed-loop evaluation over `runs` history-consistent draws. */
sipg_status sipg_validate(const sipg_problem* problem, const sipg_gains* gains, int runs,
                          uint64_t seed, sipg_validation** out);
void sipg_validation_free(sipg_validation* validation);

double sipg_validation_avg_cost(const sipg_validation* validation);
double sipg_validation_max_cost(const sipg_validation* validation);
double sipg_validation_min_cost(const sipg_validation* validation);
int sipg_validation_violations(const sipg_validation* validation);
int sipg_validation_diverged(const sipg_validation* validation);
double sipg_validation_acceptance_rate(const sipg_validation* validation);

/* Writes report.txt, runs.csv and cloud.csv into out_dir. gains may be NULL;
 * when given and carrying a synthesis bound, the report includes the
 * worst-case upper-bound check. */
sipg_status sipg_validation_write(const sipg_validation* validation, const sipg_gains* gains,
                                  const char* out_dir);

/* ---- feasible state set -------------------------------------------------- */

/* Coordinate-wise bounds of the states at measured step `step` (0 = oldest)
 * consistent with the history; lo/hi must hold state_dim doubles. */
sipg_status sipg_feasible_box(const sipg_problem* problem, int step, double* lo, double* hi);

/* Rejection-samples n feasible states at `step` and writes csv_path plus a
 * `<stem>_box.csv` sidecar with the feasible box. acceptance_rate may be
 * NULL. */
sipg_status sipg_feasible_sample(const sipg_problem* problem, int step, int n, uint64_t seed,
                                 const char* csv_path, double* acceptance_rate);

#ifdef __cplusplus
}
#endif

#endif /* SIPGAINS_SIPGAINS_H */
