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

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sipgains/sipgains.h"

namespace {

bool prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) std::fprintf(stderr, "error: cannot create directory %s\n", dir.c_str());
  return !ec;
}

// Exit codes: 0 success, 1 usage error, 2 infeasibility / synthesis /
// sampling errors, 3 i/o or file-format errors.
int exit_code_for(sipg_status status) {
  switch (status) {
    case SIPG_OK: return 0;
    case SIPG_ERR_INVALID_ARG: return 1;
    case SIPG_ERR_PARSE:
    case SIPG_ERR_IO: return 3;
    default: return 2;
  }
}

int fail(sipg_status status) {
  std::fprintf(stderr, "error (%s): %s\n", sipg_status_name(status), sipg_last_error());
  return exit_code_for(status);
}

struct ProblemHandle {
  sipg_problem* ptr = nullptr;
  ~ProblemHandle() { sipg_problem_free(ptr); }
};
struct SynthesisHandle {
  sipg_synthesis* ptr = nullptr;
  ~SynthesisHandle() { sipg_synthesis_free(ptr); }
};
struct GainsHandle {
  sipg_gains* ptr = nullptr;
  ~GainsHandle() { sipg_gains_free(ptr); }
};
struct ValidationHandle {
  sipg_validation* ptr = nullptr;
  ~ValidationHandle() { sipg_validation_free(ptr); }
};

int run_synthesize(const std::string& config, const std::string& out_dir, bool have_seed,
                   std::uint64_t seed, int max_scenarios, int max_iterations) {
  if (!prepare_out_dir(out_dir)) return 3;
  ProblemHandle problem;
  sipg_status st = sipg_problem_from_config_file(config.c_str(), &problem.ptr);
  if (st != SIPG_OK) return fail(st);

  sipg_synthesis_options options{};
  options.override_seed = have_seed ? 1 : 0;
  options.seed = seed;
  options.max_scenarios = max_scenarios;
  options.max_iterations = max_iterations;

  SynthesisHandle synthesis;
  st = sipg_synthesize(problem.ptr, &options, &synthesis.ptr);
  if (st != SIPG_OK) return fail(st);
  st = sipg_synthesis_write(synthesis.ptr, out_dir.c_str());
  if (st != SIPG_OK) return fail(st);

  std::printf("tau_star: %.6g\n", sipg_synthesis_tau(synthesis.ptr));
  std::printf("iterations: %d\n", sipg_synthesis_iterations(synthesis.ptr));
  std::printf("scenarios: %d\n", sipg_synthesis_scenario_count(synthesis.ptr));
  std::printf("terminated_by: %s\n", sipg_synthesis_termination(synthesis.ptr));
  std::printf("outputs: %s\n", out_dir.c_str());
  return 0;
}

int run_validate(const std::string& config, const std::string& gains_path, int runs,
                 bool have_seed, std::uint64_t seed, const std::string& out_dir) {
  if (!prepare_out_dir(out_dir)) return 3;
  ProblemHandle problem;
  sipg_status st = sipg_problem_from_config_file(config.c_str(), &problem.ptr);
  if (st != SIPG_OK) return fail(st);

  GainsHandle gains;
  st = sipg_gains_load(gains_path.c_str(), &gains.ptr);
  if (st != SIPG_OK) return fail(st);

  const std::uint64_t effective_seed = have_seed ? seed : sipg_problem_seed(problem.ptr);
  ValidationHandle validation;
  st = sipg_validate(problem.ptr, gains.ptr, runs, effective_seed, &validation.ptr);
  if (st != SIPG_OK) return fail(st);
  st = sipg_validation_write(validation.ptr, gains.ptr, out_dir.c_str());
  if (st != SIPG_OK) return fail(st);

  std::printf("runs: %d\n", runs);
  std::printf("avg_cost: %.6g\n", sipg_validation_avg_cost(validation.ptr));
  std::printf("max_cost: %.6g\n", sipg_validation_max_cost(validation.ptr));
  std::printf("min_cost: %.6g\n", sipg_validation_min_cost(validation.ptr));
  std::printf("violations: %d\n", sipg_validation_violations(validation.ptr));
  std::printf("outputs: %s\n", out_dir.c_str());
  return 0;
}

int run_feasible_box(const std::string& config, int step, const std::string& out_dir) {
  if (!prepare_out_dir(out_dir)) return 3;
  ProblemHandle problem;
  sipg_status st = sipg_problem_from_config_file(config.c_str(), &problem.ptr);
  if (st != SIPG_OK) return fail(st);

  const int n_x = sipg_problem_state_dim(problem.ptr);
  std::vector<double> lo(static_cast<std::size_t>(n_x)), hi(static_cast<std::size_t>(n_x));
  st = sipg_feasible_box(problem.ptr, step, lo.data(), hi.data());
  if (st != SIPG_OK) return fail(st);

  const std::string path = out_dir + "/box.csv";
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (f == nullptr) {
    std::fprintf(stderr, "error: cannot write %s\n", path.c_str());
    return 3;
  }
  std::fprintf(f, "bound");
  for (int j = 0; j < n_x; ++j) std::fprintf(f, ",x%d", j + 1);
  std::fprintf(f, "\nlo");
  for (int j = 0; j < n_x; ++j) std::fprintf(f, ",%.17g", lo[static_cast<std::size_t>(j)]);
  std::fprintf(f, "\nhi");
  for (int j = 0; j < n_x; ++j) std::fprintf(f, ",%.17g", hi[static_cast<std::size_t>(j)]);
  std::fprintf(f, "\n");
  std::fclose(f);

  for (int j = 0; j < n_x; ++j)
    std::printf("x%d in [%.6g, %.6g]\n", j + 1, lo[static_cast<std::size_t>(j)],
                hi[static_cast<std::size_t>(j)]);
  std::printf("outputs: %s\n", path.c_str());
  return 0;
}

int run_feasible_sample(const std::string& config, int step, int n, bool have_seed,
                        std::uint64_t seed, const std::string& out_dir) {
  if (!prepare_out_dir(out_dir)) return 3;
  ProblemHandle problem;
  sipg_status st = sipg_problem_from_config_file(config.c_str(), &problem.ptr);
  if (st != SIPG_OK) return fail(st);

  const std::uint64_t effective_seed = have_seed ? seed : sipg_problem_seed(problem.ptr);
  const std::string path = out_dir + "/cloud.csv";
  double rate = 0.0;
  st = sipg_feasible_sample(problem.ptr, step, n, effective_seed, path.c_str(), &rate);
  if (st != SIPG_OK) return fail(st);

  std::printf("samples: %d\n", n);
  std::printf("acceptance_rate: %.6g\n", rate);
  std::printf("outputs: %s\n", path.c_str());
  return 0;
}

int run_demo_fig1(const std::string& out_dir, bool have_seed, std::uint64_t seed, int n) {
  if (!prepare_out_dir(out_dir)) return 3;
  ProblemHandle problem;
  sipg_status st = sipg_problem_from_config_text("model.name = toy2d\n", &problem.ptr);
  if (st != SIPG_OK) return fail(st);

  const int step = sipg_problem_memory(problem.ptr);  // current step k
  const std::uint64_t effective_seed = have_seed ? seed : sipg_problem_seed(problem.ptr);
  const std::string path = out_dir + "/cloud.csv";
  double rate = 0.0;
  st = sipg_feasible_sample(problem.ptr, step, n, effective_seed, path.c_str(), &rate);
  if (st != SIPG_OK) return fail(st);

  std::printf("feasible-state cloud at the current step, %d samples\n", n);
  std::printf("acceptance_rate: %.6g\n", rate);
  std::printf("outputs: %s and %s\n", path.c_str(), (out_dir + "/cloud_box.csv").c_str());
  return 0;
}

int run_demo_quadrotor(const std::string& out_dir, bool have_seed, std::uint64_t seed, int runs,
                       int max_scenarios) {
  if (!prepare_out_dir(out_dir)) return 3;
  const char* policies[] = {"open_loop", "one_step", "two_step"};
  struct Row {
    std::string policy;
    double tau = 0.0, avg = 0.0, max = 0.0;
    int violations = 0;
    double runtime_s = 0.0;
  };
  std::vector<Row> rows;

  for (const char* policy : policies) {
    const std::string config_text = std::string("model.name = quadrotor\npolicy.kind = ") +
                                    policy + "\nreduction.max_iterations = 60\n";
    ProblemHandle problem;
    sipg_status st = sipg_problem_from_config_text(config_text.c_str(), &problem.ptr);
    if (st != SIPG_OK) return fail(st);

    sipg_synthesis_options options{};
    options.override_seed = have_seed ? 1 : 0;
    options.seed = seed;
    options.max_scenarios = max_scenarios;

    std::printf("[%s] synthesizing (max %d scenarios)...\n", policy, max_scenarios);
    std::fflush(stdout);
    const auto t0 = std::chrono::steady_clock::now();
    SynthesisHandle synthesis;
    st = sipg_synthesize(problem.ptr, &options, &synthesis.ptr);
    if (st != SIPG_OK) return fail(st);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const std::string policy_dir = out_dir + "/" + policy;
    st = sipg_synthesis_write(synthesis.ptr, policy_dir.c_str());
    if (st != SIPG_OK) return fail(st);

    GainsHandle gains;
    st = sipg_gains_from_synthesis(synthesis.ptr, &gains.ptr);
    if (st != SIPG_OK) return fail(st);

    std::printf("[%s] validating over %d draws...\n", policy, runs);
    std::fflush(stdout);
    ValidationHandle validation;
    st = sipg_validate(problem.ptr, gains.ptr, runs, have_seed ? seed : 0, &validation.ptr);
    if (st != SIPG_OK) return fail(st);
    st = sipg_validation_write(validation.ptr, gains.ptr, (policy_dir + "/validation").c_str());
    if (st != SIPG_OK) return fail(st);

    Row row;
    row.policy = policy;
    row.tau = sipg_synthesis_tau(synthesis.ptr);
    row.avg = sipg_validation_avg_cost(validation.ptr);
    row.max = sipg_validation_max_cost(validation.ptr);
    row.violations = sipg_validation_violations(validation.ptr);
    row.runtime_s = elapsed;
    rows.push_back(row);
  }

  const std::string summary_path = out_dir + "/summary.txt";
  std::FILE* f = std::fopen(summary_path.c_str(), "w");
  if (f == nullptr) {
    std::fprintf(stderr, "error: cannot write %s\n", summary_path.c_str());
    return 3;
  }
  std::fprintf(f, "policy      tau_star   avg_cost   max_cost   violations  runtime_s\n");
  for (const Row& row : rows)
    std::fprintf(f, "%-10s  %-9.4g  %-9.4g  %-9.4g  %-10d  %.1f\n", row.policy.c_str(), row.tau,
                 row.avg, row.max, row.violations, row.runtime_s);
  std::fclose(f);

  std::printf("\npolicy      tau_star   avg_cost   max_cost   violations  runtime_s\n");
  for (const Row& row : rows)
    std::printf("%-10s  %-9.4g  %-9.4g  %-9.4g  %-10d  %.1f\n", row.policy.c_str(), row.tau,
                row.avg, row.max, row.violations, row.runtime_s);
  std::printf("outputs: %s\n", out_dir.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust output-feedback gain synthesis via scenario exchange"};
  app.require_subcommand(1);

  std::string config, gains_path, out_dir;
  std::uint64_t seed = 0;
  bool have_seed = false;
  int max_scenarios = 0, max_iterations = 0, runs = 1000, step = 0, n_samples = 2000;

  auto* synth = app.add_subcommand("synthesize", "solve for robust gains");
  synth->add_option("--config", config, "problem config file")->required();
  synth->add_option("--out", out_dir, "output directory")->required();
  synth->add_option("--seed", seed, "rng seed (overrides config)")->each([&](const std::string&) {
    have_seed = true;
  });
  synth->add_option("--max-scenarios", max_scenarios, "scenario cap override");
  synth->add_option("--max-iterations", max_iterations, "iteration cap override");

  auto* val = app.add_subcommand("validate", "Monte Carlo closed-loop evaluation");
  val->add_option("--config", config, "problem config file")->required();
  val->add_option("--gains", gains_path, "gains file")->required();
  val->add_option("--runs", runs, "number of consistent draws")->required();
  val->add_option("--seed", seed, "rng seed (overrides config)")->each([&](const std::string&) {
    have_seed = true;
  });
  val->add_option("--out", out_dir, "output directory")->required();

  auto* feas = app.add_subcommand("feasible", "feasible state-set analysis");
  feas->require_subcommand(1);
  auto* fbox = feas->add_subcommand("box", "coordinate-wise feasible bounds");
  fbox->add_option("--config", config, "problem config file")->required();
  fbox->add_option("--step", step, "measured step (0 = oldest)")->required();
  fbox->add_option("--out", out_dir, "output directory")->required();
  auto* fsample = feas->add_subcommand("sample", "rejection-sample the feasible set");
  fsample->add_option("--config", config, "problem config file")->required();
  fsample->add_option("--step", step, "measured step (0 = oldest)")->required();
  fsample->add_option("--n", n_samples, "number of samples");
  fsample->add_option("--seed", seed, "rng seed (overrides config)")->each([&](const std::string&) {
    have_seed = true;
  });
  fsample->add_option("--out", out_dir, "output directory")->required();

  auto* demo = app.add_subcommand("demo", "canned runs");
  demo->require_subcommand(1);
  auto* fig1 = demo->add_subcommand("fig1", "feasible-set cloud and box for the toy system");
  fig1->add_option("--out", out_dir, "output directory")->required();
  fig1->add_option("--seed", seed, "rng seed")->each([&](const std::string&) { have_seed = true; });
  fig1->add_option("--n", n_samples, "number of samples");
  auto* dquad = demo->add_subcommand("quadrotor", "three quadrotor policies with validation");
  dquad->add_option("--out", out_dir, "output directory")->required();
  dquad->add_option("--seed", seed, "rng seed")->each([&](const std::string&) { have_seed = true; });
  dquad->add_option("--runs", runs, "validation draws per policy");
  dquad->add_option("--max-scenarios", max_scenarios, "scenario cap")->default_val(50);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  if (synth->parsed()) return run_synthesize(config, out_dir, have_seed, seed, max_scenarios, max_iterations);
  if (val->parsed()) return run_validate(config, gains_path, runs, have_seed, seed, out_dir);
  if (feas->parsed()) {
    if (fbox->parsed()) return run_feasible_box(config, step, out_dir);
    return run_feasible_sample(config, step, n_samples, have_seed, seed, out_dir);
  }
  if (demo->parsed()) {
    if (fig1->parsed()) return run_demo_fig1(out_dir, have_seed, seed, n_samples);
    if (max_scenarios <= 0) max_scenarios = 50;
    return run_demo_quadrotor(out_dir, have_seed, seed, runs, max_scenarios);
  }
  return 1;
}
