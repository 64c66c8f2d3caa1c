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
#include <cstring>
#include <functional>
#include <vector>

#include "sipg/nlp/fd.hpp"
#include "sipg/nlp/solver.hpp"
#include "sipg/util/errors.hpp"

using namespace sipg;

namespace {

NlpProblem unconstrained(int n, std::function<double(const Vec&)> f) {
  NlpProblem p;
  p.n_vars = n;
  p.lo = Vec::Constant(n, -kInf);
  p.hi = Vec::Constant(n, kInf);
  p.objective = std::move(f);
  return p;
}

}  // namespace

TEST_CASE("fd_gradient on the spec'd basics") {
  auto square = [](const Vec& z) { return z[0] * z[0]; };
  Vec g = fd_gradient(square, Vec::Constant(1, 3.0), 1e-6);
  CHECK(g[0] == doctest::Approx(6.0).epsilon(1e-6));

  auto bilinear = [](const Vec& z) { return z[0] * z[1]; };
  g = fd_gradient(bilinear, (Vec(2) << 2.0, 5.0).finished(), 1e-6);
  CHECK(g[0] == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(g[1] == doctest::Approx(2.0).epsilon(1e-6));

  auto constant = [](const Vec&) { return 4.2; };
  g = fd_gradient(constant, Vec::Zero(3), 1e-6);
  CHECK(g.cwiseAbs().maxCoeff() == 0.0);

  auto bad = [](const Vec& z) { return std::sqrt(z[0]); };  // non-finite below zero
  CHECK_THROWS_AS((void)fd_gradient(bad, Vec::Zero(1), 1e-6), Error);
}

TEST_CASE("fd_gradient matches analytic gradients on ten smooth functions") {
  struct Entry {
    const char* name;
    std::function<double(const Vec&)> f;
    std::function<Vec(const Vec&)> g;
    Vec at;
  };
  auto vec2 = [](double a, double b) { return (Vec(2) << a, b).finished(); };

  std::vector<Entry> battery;
  battery.push_back({"quadratic", [](const Vec& z) { return z.squaredNorm(); },
                     [](const Vec& z) -> Vec { return 2.0 * z; }, vec2(0.7, -1.3)});
  battery.push_back({"trig product", [](const Vec& z) { return std::sin(z[0]) * std::cos(z[1]); },
                     [](const Vec& z) -> Vec {
                       return (Vec(2) << std::cos(z[0]) * std::cos(z[1]),
                               -std::sin(z[0]) * std::sin(z[1]))
                           .finished();
                     },
                     vec2(0.4, 1.1)});
  battery.push_back({"exp sum", [](const Vec& z) { return std::exp(z[0]) + std::exp(-z[1]); },
                     [](const Vec& z) -> Vec {
                       return (Vec(2) << std::exp(z[0]), -std::exp(-z[1])).finished();
                     },
                     vec2(0.2, 0.9)});
  battery.push_back({"log barrier", [](const Vec& z) { return -std::log(z[0]) - std::log(z[1]); },
                     [](const Vec& z) -> Vec {
                       return (Vec(2) << -1.0 / z[0], -1.0 / z[1]).finished();
                     },
                     vec2(0.8, 1.7)});
  battery.push_back({"rational", [](const Vec& z) { return z[0] / (1.0 + z[1] * z[1]); },
                     [](const Vec& z) -> Vec {
                       const double d = 1.0 + z[1] * z[1];
                       return (Vec(2) << 1.0 / d, -2.0 * z[0] * z[1] / (d * d)).finished();
                     },
                     vec2(1.4, -0.6)});
  battery.push_back({"bilinear", [](const Vec& z) { return z[0] * z[1]; },
                     [](const Vec& z) -> Vec { return (Vec(2) << z[1], z[0]).finished(); },
                     vec2(2.0, 5.0)});
  battery.push_back({"quartic", [](const Vec& z) { return std::pow(z[0], 4) + std::pow(z[1], 4); },
                     [](const Vec& z) -> Vec {
                       return (Vec(2) << 4.0 * std::pow(z[0], 3), 4.0 * std::pow(z[1], 3))
                           .finished();
                     },
                     vec2(1.1, -0.9)});
  battery.push_back({"softplus",
                     [](const Vec& z) { return std::log1p(std::exp(z[0] + 2.0 * z[1])); },
                     [](const Vec& z) -> Vec {
                       const double s = 1.0 / (1.0 + std::exp(-(z[0] + 2.0 * z[1])));
                       return (Vec(2) << s, 2.0 * s).finished();
                     },
                     vec2(0.3, -0.2)});
  battery.push_back({"cosh mix", [](const Vec& z) { return std::cosh(z[0]) * std::sinh(z[1]); },
                     [](const Vec& z) -> Vec {
                       return (Vec(2) << std::sinh(z[0]) * std::sinh(z[1]),
                               std::cosh(z[0]) * std::cosh(z[1]))
                           .finished();
                     },
                     vec2(0.5, 0.6)});
  battery.push_back({"gaussian", [](const Vec& z) { return std::exp(-z.squaredNorm()); },
                     [](const Vec& z) -> Vec { return -2.0 * std::exp(-z.squaredNorm()) * z; },
                     vec2(0.4, -0.3)});

  REQUIRE(battery.size() == 10);
  for (const auto& entry : battery) {
    const Vec numeric = fd_gradient(entry.f, entry.at, 1e-6);
    const Vec analytic = entry.g(entry.at);
    const double rel = (numeric - analytic).norm() / std::max(1e-12, analytic.norm());
    INFO(entry.name);
    CHECK(rel < 1e-5);
  }
}

TEST_CASE("solve: clipped parabola hits its bound") {
  NlpProblem p = unconstrained(1, [](const Vec& z) { return (z[0] - 3.0) * (z[0] - 3.0); });
  p.hi[0] = 1.0;
  const NlpResult r = solve(p, Vec::Zero(1), SolverSettings{});
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.z_star[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.objective_value == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("solve: Rosenbrock from the classic start") {
  auto rosenbrock = [](const Vec& z) {
    const double a = 1.0 - z[0];
    const double b = z[1] - z[0] * z[0];
    return a * a + 100.0 * b * b;
  };
  const NlpResult r =
      solve(unconstrained(2, rosenbrock), (Vec(2) << -1.2, 1.0).finished(), SolverSettings{});
  CHECK(r.status == SolveStatus::converged);
  CHECK(r.z_star[0] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.z_star[1] == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(r.objective_value <= 1e-8);
}

TEST_CASE("solve: linear objective on the unit circle (equality constrained)") {
  NlpProblem p = unconstrained(2, [](const Vec& z) { return z[0] + z[1]; });
  p.eq_constraints.push_back([](const Vec& z) { return z.squaredNorm() - 1.0; });
  const NlpResult r = multi_start_solve(p, SolverSettings{});
  CHECK(r.status == SolveStatus::converged);
  const double root_half = std::sqrt(0.5);
  CHECK(r.z_star[0] == doctest::Approx(-root_half).epsilon(1e-4));
  CHECK(r.z_star[1] == doctest::Approx(-root_half).epsilon(1e-4));
  CHECK(check_kkt(p, r.z_star, r.eq_multipliers, r.ineq_multipliers) <= 1e-6);
}

TEST_CASE("converged results satisfy an independent KKT replay") {
  NlpProblem p = unconstrained(2, [](const Vec& z) {
    return (z[0] - 1.0) * (z[0] - 1.0) + 0.5 * (z[1] + 2.0) * (z[1] + 2.0);
  });
  p.ineq_constraints.push_back([](const Vec& z) { return z[0] + z[1]; });  // x + y <= 0
  const NlpResult r = solve(p, Vec::Zero(2), SolverSettings{});
  REQUIRE(r.status == SolveStatus::converged);
  CHECK(r.max_constraint_violation <= 1e-6);
  const double replay = check_kkt(p, r.z_star, r.eq_multipliers, r.ineq_multipliers);
  CHECK(replay <= 1e-6);
  CHECK(replay == doctest::Approx(r.kkt_residual).epsilon(1e-12));

  // Far from the optimum the same residual is large.
  CHECK(check_kkt(p, (Vec(2) << 5.0, 5.0).finished(), r.eq_multipliers, r.ineq_multipliers) >
        1e-3);
}

TEST_CASE("check_kkt at an unconstrained vertex is tiny") {
  NlpProblem p = unconstrained(2, [](const Vec& z) { return (z - Vec::Ones(2)).squaredNorm(); });
  CHECK(check_kkt(p, Vec::Ones(2), Vec(0), Vec(0)) <= 1e-10);
}

TEST_CASE("augmented-Lagrangian violation history is non-increasing") {
  // A mildly awkward equality-constrained problem.
  NlpProblem p = unconstrained(3, [](const Vec& z) {
    return std::cos(z[0]) + z.squaredNorm() + 0.3 * z[1] * z[2];
  });
  p.eq_constraints.push_back([](const Vec& z) { return z[0] * z[0] + z[1] - 1.0; });
  p.eq_constraints.push_back([](const Vec& z) { return z[2] - z[0] * z[1]; });
  p.ineq_constraints.push_back([](const Vec& z) { return 0.25 - z.squaredNorm(); });

  const NlpResult r = solve(p, (Vec(3) << 2.0, -1.5, 0.7).finished(), SolverSettings{});
  REQUIRE(r.violation_history.size() >= 1);
  for (std::size_t i = 1; i < r.violation_history.size(); ++i)
    CHECK(r.violation_history[i] <= r.violation_history[i - 1] + 1e-12);
  if (r.status == SolveStatus::converged) CHECK(r.max_constraint_violation <= 1e-6);
}

TEST_CASE("multi_start_solve: escapes the stationary saddle of cos(3z) + 0.1 z^2") {
  auto f = [](const Vec& z) { return std::cos(3.0 * z[0]) + 0.1 * z[0] * z[0]; };
  NlpProblem p = unconstrained(1, f);
  p.lo[0] = -3.0;
  p.hi[0] = 3.0;

  // Brute-force oracle on a fine grid.
  double best = kInf;
  for (int i = 0; i <= 10000; ++i) {
    const double z = -3.0 + 6.0 * i / 10000.0;
    best = std::min(best, std::cos(3.0 * z) + 0.1 * z * z);
  }
  CHECK(best == doctest::Approx(-0.902).epsilon(5e-3));

  // The midpoint start alone is stuck at the stationary point z = 0.
  const NlpResult single = solve(p, Vec::Zero(1), SolverSettings{});
  CHECK(single.objective_value == doctest::Approx(1.0).epsilon(1e-6));

  SolverSettings settings;
  settings.rng_seed = 5;
  const NlpResult multi = multi_start_solve(p, settings);
  CHECK(multi.status == SolveStatus::converged);
  CHECK(multi.objective_value == doctest::Approx(best).epsilon(1e-4));
}

TEST_CASE("multi_start_solve: convex problem matches the midpoint solve; seeds reproduce bits") {
  NlpProblem p = unconstrained(2, [](const Vec& z) { return (z - Vec::Ones(2)).squaredNorm(); });
  p.lo = Vec::Constant(2, -4.0);
  p.hi = Vec::Constant(2, 4.0);

  SolverSettings settings;
  settings.rng_seed = 77;
  const NlpResult a = multi_start_solve(p, settings);
  const NlpResult mid = solve(p, Vec::Zero(2), settings);
  CHECK(a.objective_value == doctest::Approx(mid.objective_value).epsilon(1e-9));
  CHECK((a.z_star - mid.z_star).lpNorm<Eigen::Infinity>() < 1e-6);

  const NlpResult b = multi_start_solve(p, settings);
  REQUIRE(a.z_star.size() == b.z_star.size());
  CHECK(std::memcmp(a.z_star.data(), b.z_star.data(),
                    sizeof(double) * static_cast<std::size_t>(a.z_star.size())) == 0);
  CHECK(a.objective_value == b.objective_value);
  CHECK(a.start_index == b.start_index);
}

TEST_CASE("solve rejects a non-finite start") {
  NlpProblem p = unconstrained(1, [](const Vec& z) { return std::log(z[0]); });
  try {
    (void)solve(p, Vec::Constant(1, -1.0), SolverSettings{});
    FAIL("expected invalid_start");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_start);
  }
}
