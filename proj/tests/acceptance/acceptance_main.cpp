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

// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits nonzero if any requested criterion fails. Invoke with a criterion
// number (1..6) or with no arguments to run all of them.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sipg/analysis/feasible.hpp"
#include "sipg/analysis/validate.hpp"
#include "sipg/io/text_format.hpp"
#include "sipg/nlp/fd.hpp"
#include "sipg/nlp/solver.hpp"
#include "sipg/sip/reduction.hpp"
#include "sipg/zoo/models.hpp"
#include "../support/toy1d.hpp"

#ifndef SIPGAINS_CLI_PATH
#define SIPGAINS_CLI_PATH "sipgains"
#endif

using namespace sipg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir.string();
}

int run_cli(const std::string& args) {
  const std::string command = std::string(SIPGAINS_CLI_PATH) + " " + args;
  return std::system(command.c_str());
}

std::vector<std::vector<double>> read_csv_rows(const std::string& path, int skip_header = 1,
                                               int label_columns = 0) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot read " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    if (line_no++ < skip_header) continue;
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    int column = 0;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      if (column++ < label_columns) continue;
      try {
        row.push_back(parse_double_strict(cell));
      } catch (const Error&) {
        numeric = false;
        break;
      }
    }
    if (numeric && !row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

bool files_identical(const std::string& a, const std::string& b) {
  return read_file(a) == read_file(b);
}

double elapsed_s(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: toy feasible-set geometry via the CLI demo --------------

Outcome criterion_1() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  const std::string dir = fresh_dir("sipg_acc1");
  const int rc = run_cli("demo fig1 --out " + dir + " --seed 0 --n 2500 > " + dir + "/log.txt");
  out.require(rc == 0, "demo fig1 exited with " + std::to_string(rc));
  if (!out.pass) return out;

  const auto rows = read_csv_rows(dir + "/cloud.csv");
  out.require(static_cast<int>(rows.size()) >= 2000,
              "expected >= 2000 samples, got " + std::to_string(rows.size()));
  double worst = 0.0;
  for (const auto& row : rows) {
    const double dx = row[0] - 1.0, dy = row[1] - 2.0;
    worst = std::max(worst, std::sqrt(dx * dx + dy * dy));
  }
  out.require(worst <= 2.0 + 1e-9, "sample outside the disk by " + std::to_string(worst - 2.0));

  const auto box = read_csv_rows(dir + "/cloud_box.csv", 1, 1);
  out.require(box.size() == 2, "box sidecar malformed");
  if (box.size() == 2) {
    out.require(std::abs(box[0][0] - (-1.0)) <= 1e-3, "box lo x1");
    out.require(std::abs(box[0][1] - 0.0) <= 1e-3, "box lo x2");
    out.require(std::abs(box[1][0] - 3.0) <= 1e-3, "box hi x1");
    out.require(std::abs(box[1][1] - 4.0) <= 1e-3, "box hi x2");
  }
  const double secs = elapsed_s(t0);
  out.require(secs <= 60.0, "runtime " + std::to_string(secs) + "s exceeds 1 minute");
  out.detail += (out.detail.empty() ? "" : "; ") + std::to_string(rows.size()) + " samples, " +
                std::to_string(secs) + "s";
  return out;
}

// ---- criterion 2: scalar min-max family vs a nested grid oracle -----------

Outcome criterion_2() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  for (const double a : {0.5, 1.0, 2.0}) {
    // Nested grid oracle, 1000 x 1000.
    double oracle_u = 0.0, oracle_tau = kInf;
    for (int i = 0; i <= 1000; ++i) {
      const double u = -2.0 + 4.0 * i / 1000.0;
      double worst = -kInf;
      for (int j = 0; j <= 1000; ++j) {
        const double w = -a + 2.0 * a * j / 1000.0;
        worst = std::max(worst, (u + w) * (u + w));
      }
      if (worst < oracle_tau) {
        oracle_tau = worst;
        oracle_u = u;
      }
    }

    ReductionSettings settings;
    settings.inner.rng_seed = 101;
    settings.outer.rng_seed = 202;
    const SynthesisReport report = local_reduction(testing::toy1d_spec(a), settings);
    const double u_star = report.params_star.u_bar[0][0];
    out.require(std::abs(u_star) <= 1e-3,
                "a=" + std::to_string(a) + ": u* = " + std::to_string(u_star));
    out.require(std::abs(report.tau_star - a * a) <= 1e-3,
                "a=" + std::to_string(a) + ": tau* = " + std::to_string(report.tau_star));
    out.require(std::abs(u_star - oracle_u) <= 1e-3 + 4.0 / 1000.0,
                "a=" + std::to_string(a) + ": disagrees with the grid oracle");
    out.require(std::abs(report.tau_star - oracle_tau) <= 2e-3,
                "a=" + std::to_string(a) + ": tau disagrees with the grid oracle");
  }
  const double secs = elapsed_s(t0);
  out.require(secs <= 30.0, "runtime " + std::to_string(secs) + "s exceeds 30 s");
  out.detail += (out.detail.empty() ? "" : "; ") + std::to_string(secs) + "s";
  return out;
}

// ---- criterion 3: quadrotor robustness across the three policies ----------

Outcome criterion_3() {
  Outcome out;
  struct Result {
    PolicyKind kind;
    double tau = 0.0, avg = 0.0, max = 0.0;
    int violations = 0;
    double secs = 0.0;
    std::string termination;
  };
  std::vector<Result> results;

  for (const PolicyKind kind :
       {PolicyKind::open_loop, PolicyKind::one_step, PolicyKind::two_step}) {
    const ProblemSpec spec = quadrotor_spec(kind, 0.1);
    ReductionSettings settings;
    settings.max_scenarios = 50;
    settings.max_iterations = 60;
    settings.inner.rng_seed = 11;
    settings.outer.rng_seed = 22;

    const auto t0 = std::chrono::steady_clock::now();
    const SynthesisReport report = local_reduction(spec, settings);
    const double synth_secs = elapsed_s(t0);

    const ValidationReport validation =
        validate(spec, report.params_star, 1000, 7, settings.inner);

    Result r;
    r.kind = kind;
    r.tau = report.tau_star;
    r.avg = validation.avg_cost;
    r.max = validation.max_cost;
    r.violations = validation.violation_count;
    r.secs = synth_secs;
    r.termination = termination_name(report.terminated_by);
    results.push_back(r);

    std::printf("  [%s] tau*=%.4g avg=%.4g max=%.4g violations=%d scenarios=%d %s (%.0fs)\n",
                policy_kind_name(kind), r.tau, r.avg, r.max, r.violations,
                report.scenario_set.size(), r.termination.c_str(), synth_secs);
    std::fflush(stdout);

    out.require(validation.violation_count == 0,
                std::string(policy_kind_name(kind)) + ": " +
                    std::to_string(validation.violation_count) + " constraint violations");
    out.require(synth_secs <= 900.0,
                std::string(policy_kind_name(kind)) + ": synthesis took " +
                    std::to_string(synth_secs) + "s (> 15 min)");
  }

  const double avg_open = results[0].avg, avg_one = results[1].avg, avg_two = results[2].avg;
  out.require(avg_open > avg_one && avg_one > avg_two,
              "cost ordering violated: open=" + std::to_string(avg_open) +
                  " one=" + std::to_string(avg_one) + " two=" + std::to_string(avg_two));
  out.require(avg_open >= 2.0 * avg_two,
              "open/two ratio " + std::to_string(avg_open / avg_two) + " < 2");
  out.detail += (out.detail.empty() ? "" : "; ") + std::string("avg costs ") +
                std::to_string(avg_open) + " > " + std::to_string(avg_one) + " > " +
                std::to_string(avg_two);
  return out;
}

// ---- criterion 4: exchange-loop invariants over 20 seeded runs ------------

Outcome criterion_4() {
  Outcome out;
  int runs_done = 0;

  auto check_report = [&](const ProblemSpec& spec, const ReductionSettings& settings,
                          const std::string& tag) {
    const SynthesisReport report = local_reduction(spec, settings);
    ++runs_done;

    for (std::size_t i = 1; i < report.history.size(); ++i) {
      out.require(report.history[i].tau >= report.history[i - 1].tau - 1e-6,
                  tag + ": tau decreased at iteration " + std::to_string(i + 1));
    }
    for (const auto& rec : report.scenario_set.records()) {
      if (rec.origin == ScenarioOrigin::cost_adversary)
        out.require(rec.replay_value > rec.tau_at_add + settings.eps_cost - 1e-12,
                    tag + ": unverified cost scenario");
      if (rec.origin == ScenarioOrigin::constraint_adversary)
        out.require(rec.replay_value > settings.eps_constraint - 1e-12,
                    tag + ": unverified constraint scenario");
    }
    for (const auto& rec : report.scenario_set.records()) {
      const TrajectoryBundle bundle = rollout(spec, report.params_star, rec.scenario);
      out.require(spec.cost.eval(bundle, rec.scenario) <= report.tau_star + 1e-6,
                  tag + ": stored scenario exceeds tau for the final gains");
      for (const auto& g : spec.path_constraints)
        out.require(g.eval(bundle, rec.scenario) <= 1e-6,
                    tag + ": stored scenario violates a constraint for the final gains");
    }
  };

  // Ten toy2d runs (two policy classes, five seeds each).
  for (const PolicyKind kind : {PolicyKind::open_loop, PolicyKind::one_step}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ProblemSpec spec = spec_from_registry("toy2d", kind, 0.1);
      ReductionSettings settings;
      settings.inner.rng_seed = seed;
      settings.outer.rng_seed = seed + 100;
      check_report(spec, settings,
                   std::string("toy2d/") + policy_kind_name(kind) + "/s" + std::to_string(seed));
    }
  }
  // Ten scalar-family runs (five half-widths, two seeds each).
  for (const double a : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
      ReductionSettings settings;
      settings.inner.rng_seed = 900 + seed;
      settings.outer.rng_seed = seed;
      check_report(testing::toy1d_spec_with_bound(a, a * a), settings,
                   "toy1d/a" + std::to_string(a) + "/s" + std::to_string(seed));
    }
  }

  out.require(runs_done == 20, "expected 20 runs, ran " + std::to_string(runs_done));
  out.detail += (out.detail.empty() ? "" : "; ") + std::to_string(runs_done) + " seeded runs";
  return out;
}

// ---- criterion 5: NLP solver suite ----------------------------------------

Outcome criterion_5() {
  Outcome out;

  // Rosenbrock.
  {
    NlpProblem p;
    p.n_vars = 2;
    p.lo = Vec::Constant(2, -kInf);
    p.hi = Vec::Constant(2, kInf);
    p.objective = [](const Vec& z) {
      const double a = 1.0 - z[0];
      const double b = z[1] - z[0] * z[0];
      return a * a + 100.0 * b * b;
    };
    const NlpResult r = solve(p, (Vec(2) << -1.2, 1.0).finished(), SolverSettings{});
    out.require(r.status == SolveStatus::converged, "rosenbrock: not converged");
    out.require(std::abs(r.z_star[0] - 1.0) <= 1e-4 && std::abs(r.z_star[1] - 1.0) <= 1e-4,
                "rosenbrock: wrong optimum");
    out.require(check_kkt(p, r.z_star, r.eq_multipliers, r.ineq_multipliers) <= 1e-6,
                "rosenbrock: kkt replay");
  }

  // Clipped parabola.
  {
    NlpProblem p;
    p.n_vars = 1;
    p.lo = Vec::Constant(1, -kInf);
    p.hi = Vec::Constant(1, 1.0);
    p.objective = [](const Vec& z) { return (z[0] - 3.0) * (z[0] - 3.0); };
    const NlpResult r = solve(p, Vec::Zero(1), SolverSettings{});
    out.require(r.status == SolveStatus::converged, "clipped parabola: not converged");
    out.require(std::abs(r.z_star[0] - 1.0) <= 1e-4 && std::abs(r.objective_value - 4.0) <= 1e-4,
                "clipped parabola: wrong optimum");
    out.require(check_kkt(p, r.z_star, r.eq_multipliers, r.ineq_multipliers) <= 1e-6,
                "clipped parabola: kkt replay");
  }

  // Linear objective on the unit circle.
  {
    NlpProblem p;
    p.n_vars = 2;
    p.lo = Vec::Constant(2, -kInf);
    p.hi = Vec::Constant(2, kInf);
    p.objective = [](const Vec& z) { return z[0] + z[1]; };
    p.eq_constraints.push_back([](const Vec& z) { return z.squaredNorm() - 1.0; });
    const NlpResult r = multi_start_solve(p, SolverSettings{});
    const double root_half = std::sqrt(0.5);
    out.require(r.status == SolveStatus::converged, "circle: not converged");
    out.require(std::abs(r.z_star[0] + root_half) <= 1e-4 &&
                    std::abs(r.z_star[1] + root_half) <= 1e-4,
                "circle: wrong optimum");
    out.require(check_kkt(p, r.z_star, r.eq_multipliers, r.ineq_multipliers) <= 1e-6,
                "circle: kkt replay");
  }

  // Finite-difference battery: ten smooth functions with analytic gradients.
  {
    using Fn = std::function<double(const Vec&)>;
    using Grad = std::function<Vec(const Vec&)>;
    auto vec2 = [](double a, double b) { return (Vec(2) << a, b).finished(); };
    std::vector<std::tuple<Fn, Grad, Vec>> battery = {
        {[](const Vec& z) { return z.squaredNorm(); }, [](const Vec& z) -> Vec { return 2.0 * z; },
         vec2(0.7, -1.3)},
        {[](const Vec& z) { return std::sin(z[0]) * std::cos(z[1]); },
         [&](const Vec& z) -> Vec {
           return (Vec(2) << std::cos(z[0]) * std::cos(z[1]), -std::sin(z[0]) * std::sin(z[1]))
               .finished();
         },
         vec2(0.4, 1.1)},
        {[](const Vec& z) { return std::exp(z[0]) + std::exp(-z[1]); },
         [](const Vec& z) -> Vec { return (Vec(2) << std::exp(z[0]), -std::exp(-z[1])).finished(); },
         vec2(0.2, 0.9)},
        {[](const Vec& z) { return -std::log(z[0]) - std::log(z[1]); },
         [](const Vec& z) -> Vec { return (Vec(2) << -1.0 / z[0], -1.0 / z[1]).finished(); },
         vec2(0.8, 1.7)},
        {[](const Vec& z) { return z[0] / (1.0 + z[1] * z[1]); },
         [](const Vec& z) -> Vec {
           const double d = 1.0 + z[1] * z[1];
           return (Vec(2) << 1.0 / d, -2.0 * z[0] * z[1] / (d * d)).finished();
         },
         vec2(1.4, -0.6)},
        {[](const Vec& z) { return z[0] * z[1]; },
         [](const Vec& z) -> Vec { return (Vec(2) << z[1], z[0]).finished(); }, vec2(2.0, 5.0)},
        {[](const Vec& z) { return std::pow(z[0], 4) + std::pow(z[1], 4); },
         [](const Vec& z) -> Vec {
           return (Vec(2) << 4.0 * std::pow(z[0], 3), 4.0 * std::pow(z[1], 3)).finished();
         },
         vec2(1.1, -0.9)},
        {[](const Vec& z) { return std::log1p(std::exp(z[0] + 2.0 * z[1])); },
         [](const Vec& z) -> Vec {
           const double s = 1.0 / (1.0 + std::exp(-(z[0] + 2.0 * z[1])));
           return (Vec(2) << s, 2.0 * s).finished();
         },
         vec2(0.3, -0.2)},
        {[](const Vec& z) { return std::cosh(z[0]) * std::sinh(z[1]); },
         [](const Vec& z) -> Vec {
           return (Vec(2) << std::sinh(z[0]) * std::sinh(z[1]),
                   std::cosh(z[0]) * std::cosh(z[1]))
               .finished();
         },
         vec2(0.5, 0.6)},
        {[](const Vec& z) { return std::exp(-z.squaredNorm()); },
         [](const Vec& z) -> Vec { return -2.0 * std::exp(-z.squaredNorm()) * z; },
         vec2(0.4, -0.3)}};
    int index = 0;
    for (const auto& [f, grad, at] : battery) {
      const Vec numeric = fd_gradient(f, at, 1e-6);
      const Vec analytic = grad(at);
      const double rel = (numeric - analytic).norm() / std::max(1e-12, analytic.norm());
      out.require(rel < 1e-5, "fd battery entry " + std::to_string(index) + " rel err " +
                                  std::to_string(rel));
      ++index;
    }
    out.require(index == 10, "fd battery incomplete");
  }
  return out;
}

// ---- criterion 6: byte-identical CSV artifacts under a fixed seed ---------

Outcome criterion_6() {
  Outcome out;

  // Demo fig1 twice.
  const std::string d1 = fresh_dir("sipg_acc6_fig1_a");
  const std::string d2 = fresh_dir("sipg_acc6_fig1_b");
  out.require(run_cli("demo fig1 --out " + d1 + " --seed 5 --n 500 > " + d1 + "/log.txt") == 0,
              "fig1 run A failed");
  out.require(run_cli("demo fig1 --out " + d2 + " --seed 5 --n 500 > " + d2 + "/log.txt") == 0,
              "fig1 run B failed");
  if (out.pass) {
    out.require(files_identical(d1 + "/cloud.csv", d2 + "/cloud.csv"), "fig1 clouds differ");
    out.require(files_identical(d1 + "/cloud_box.csv", d2 + "/cloud_box.csv"),
                "fig1 boxes differ");
  }

  // Synthesis and validation twice on a small toy instance.
  const std::string cfg_dir = fresh_dir("sipg_acc6_cfg");
  const std::string cfg = cfg_dir + "/toy.cfg";
  {
    std::ofstream f(cfg);
    f << "model.name = toy2d\nreduction.max_iterations = 5\nreduction.max_scenarios = 5\n";
  }
  const std::string s1 = fresh_dir("sipg_acc6_syn_a");
  const std::string s2 = fresh_dir("sipg_acc6_syn_b");
  for (const std::string* dir : {&s1, &s2}) {
    out.require(run_cli("synthesize --config " + cfg + " --out " + *dir + " --seed 3 > " + *dir +
                        "/log.txt") == 0,
                "synthesize run failed");
  }
  if (out.pass) {
    out.require(files_identical(s1 + "/history.csv", s2 + "/history.csv"),
                "synthesis histories differ");
    out.require(files_identical(s1 + "/gains.txt", s2 + "/gains.txt"), "gains files differ");
  }

  const std::string v1 = fresh_dir("sipg_acc6_val_a");
  const std::string v2 = fresh_dir("sipg_acc6_val_b");
  for (const std::string* dir : {&v1, &v2}) {
    out.require(run_cli("validate --config " + cfg + " --gains " + s1 +
                        "/gains.txt --runs 200 --seed 9 --out " + *dir + " > " + *dir +
                        "/log.txt") == 0,
                "validate run failed");
  }
  if (out.pass) {
    out.require(files_identical(v1 + "/runs.csv", v2 + "/runs.csv"), "run records differ");
    out.require(files_identical(v1 + "/cloud.csv", v2 + "/cloud.csv"),
                "trajectory clouds differ");
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  if (argc > 1) {
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
  } else {
    wanted = {1, 2, 3, 4, 5, 6};
  }

  static const char* kNames[] = {
      "",
      "feasible-set geometry of the toy example (cloud in the disk, box [-1,3]x[0,4])",
      "scalar min-max family matches the nested grid oracle",
      "quadrotor: zero violations and open > 1-step > 2-step average cost",
      "exchange-loop invariants over 20 seeded runs",
      "NLP solver suite (named optima, KKT replay, FD battery)",
      "byte-identical CSV artifacts for repeated seeds",
  };

  bool all_pass = true;
  for (const int c : wanted) {
    if (c < 1 || c > 6) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    Outcome outcome;
    switch (c) {
      case 1: outcome = criterion_1(); break;
      case 2: outcome = criterion_2(); break;
      case 3: outcome = criterion_3(); break;
      case 4: outcome = criterion_4(); break;
      case 5: outcome = criterion_5(); break;
      case 6: outcome = criterion_6(); break;
    }
    std::printf("%s criterion %d: %s%s%s\n", outcome.pass ? "PASS" : "FAIL", c, kNames[c],
                outcome.detail.empty() ? "" : " -- ", outcome.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && outcome.pass;
  }
  return all_pass ? 0 : 1;
}
