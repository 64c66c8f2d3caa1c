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

#include <doctest.h>

#include <cmath>

#include "sipg/analysis/validate.hpp"
#include "sipg/sip/builders.hpp"
#include "sipg/util/errors.hpp"
#include "sipg/zoo/models.hpp"
#include "support/toy1d.hpp"

using namespace sipg;

namespace {

PolicyParams hover_params(const ProblemSpec& spec) {
  PolicyParams p = PolicyParams::zeros(spec.policy.lags, spec.model.n_u, spec.model.n_y, spec.N);
  for (auto& u : p.u_bar) u.setConstant(4.905);
  return p;
}

}  // namespace

TEST_CASE("consistent draws respect every quadrotor bound") {
  const ProblemSpec spec = quadrotor_spec(PolicyKind::open_loop, 0.1);
  const ConsistentScenarioSampler sampler(spec, SolverSettings{});
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Scenario s = sampler.draw(11, i);
    CHECK(s.rho_f[0] >= 0.9);
    CHECK(s.rho_f[0] <= 1.1);
    CHECK(s.rho_f[1] >= 0.001);
    CHECK(s.rho_f[1] <= 0.0015);
    CHECK(s.V.minCoeff() >= -0.1);
    CHECK(s.V.maxCoeff() <= 0.1);
    CHECK(s.x_init[1] >= -0.05);
    CHECK(s.x_init[1] <= 0.05);
    // Substituting the implied noise reproduces the measurement history.
    CHECK(history_inconsistency(spec, s) <= 1e-12);
  }
}

TEST_CASE("singleton uncertainty yields one unique consistent scenario") {
  const ProblemSpec spec = testing::toy1d_spec(0.0);
  const ConsistentScenarioSampler sampler(spec, SolverSettings{});
  const ScenarioLayout layout = spec.scenario_layout();
  const Vec first = layout.pack(sampler.draw(1, 0));
  for (std::uint64_t i = 1; i < 20; ++i) {
    const Vec other = layout.pack(sampler.draw(2 * i + 1, i));
    CHECK((other - first).lpNorm<Eigen::Infinity>() <= 1e-6);
  }
}

TEST_CASE("validate: singleton uncertainty collapses the cost spread") {
  const ProblemSpec spec = testing::toy1d_spec(0.0);
  PolicyParams params = PolicyParams::zeros(0, 1, 1, 1);
  params.u_bar[0][0] = 0.4;
  const ValidationReport report = validate(spec, params, 64, 5, SolverSettings{});
  CHECK(report.avg_cost == doctest::Approx(0.16).epsilon(1e-9));
  CHECK(report.max_cost == doctest::Approx(report.min_cost).epsilon(1e-12));
  CHECK(report.violation_count == 0);
  CHECK(report.diverged_count == 0);
}

TEST_CASE("validate: hovering quadrotor never breaches the height bound") {
  const ProblemSpec spec = quadrotor_spec(PolicyKind::open_loop, 0.1);
  const ValidationReport report = validate(spec, hover_params(spec), 400, 21, SolverSettings{});
  CHECK(report.violation_count == 0);
  CHECK(report.diverged_count == 0);
  CHECK(report.min_cost <= report.avg_cost);
  CHECK(report.avg_cost <= report.max_cost);
  // Hover leaves the height near zero, so the cost sits near (0 - 2)^2 = 4.
  CHECK(report.avg_cost == doctest::Approx(4.0).epsilon(0.25));
  CHECK(report.acceptance_rate > 1e-4);
}

TEST_CASE("validate is reproducible and halves agree statistically") {
  const ProblemSpec spec = quadrotor_spec(PolicyKind::open_loop, 0.1);
  const PolicyParams params = hover_params(spec);
  const ValidationReport a = validate(spec, params, 1000, 33, SolverSettings{});
  const ValidationReport b = validate(spec, params, 1000, 33, SolverSettings{});
  REQUIRE(a.runs.size() == b.runs.size());
  CHECK(a.avg_cost == b.avg_cost);
  CHECK(a.max_cost == b.max_cost);
  for (std::size_t i = 0; i < a.runs.size(); ++i) CHECK(a.runs[i].cost == b.runs[i].cost);

  double mean1 = 0.0, mean2 = 0.0;
  for (int i = 0; i < 500; ++i) mean1 += a.runs[static_cast<std::size_t>(i)].cost;
  for (int i = 500; i < 1000; ++i) mean2 += a.runs[static_cast<std::size_t>(i)].cost;
  mean1 /= 500.0;
  mean2 /= 500.0;
  double var = 0.0;
  for (const auto& run : a.runs) var += (run.cost - a.avg_cost) * (run.cost - a.avg_cost);
  var /= 999.0;
  const double se = std::sqrt(var * (1.0 / 500.0 + 1.0 / 500.0));
  CHECK(std::abs(mean1 - mean2) < 3.0 * se);
}

TEST_CASE("validate counts diverged rollouts separately") {
  ProblemSpec spec = testing::toy1d_spec(0.5);
  spec.N = 4;
  spec.model.step = [](ConstRef x, ConstRef u, ConstRef, ConstRef w, MutRef out) {
    out[0] = (x[0] + u[0] + w[0]) * 1e150;
  };
  PolicyParams params = PolicyParams::zeros(0, 1, 1, spec.N);
  for (auto& u : params.u_bar) u[0] = 1.0;
  const ValidationReport report = validate(spec, params, 16, 2, SolverSettings{});
  CHECK(report.diverged_count == 16);
  CHECK(report.violation_count == 0);
  CHECK(report.avg_cost == 0.0);
}

TEST_CASE("validate rejects a non-positive run count") {
  const ProblemSpec spec = testing::toy1d_spec(1.0);
  const PolicyParams params = PolicyParams::zeros(0, 1, 1, 1);
  CHECK_THROWS_AS((void)validate(spec, params, 0, 1, SolverSettings{}), Error);
}

TEST_CASE("thread count does not change validation results") {
  const ProblemSpec spec = quadrotor_spec(PolicyKind::open_loop, 0.1);
  const PolicyParams params = hover_params(spec);

  setenv("SIPGAINS_THREADS", "1", 1);
  const ValidationReport serial = validate(spec, params, 200, 44, SolverSettings{});
  setenv("SIPGAINS_THREADS", "2", 1);
  const ValidationReport parallel = validate(spec, params, 200, 44, SolverSettings{});
  unsetenv("SIPGAINS_THREADS");

  CHECK(serial.avg_cost == parallel.avg_cost);
  CHECK(serial.max_cost == parallel.max_cost);
  CHECK(serial.acceptance_rate == parallel.acceptance_rate);
  for (std::size_t i = 0; i < serial.runs.size(); ++i)
    CHECK(serial.runs[i].cost == parallel.runs[i].cost);
}
