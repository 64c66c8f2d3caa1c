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

#include "sipg/nlp/solver.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <deque>
#include <memory>
#include <vector>

#include "sipg/nlp/fd.hpp"
#include "sipg/util/errors.hpp"
#include "sipg/util/parallel.hpp"
#include "sipg/util/rng.hpp"

namespace sipg {

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_iters: return "max_iters";
    case SolveStatus::diverged: return "diverged";
  }
  return "unknown";
}

namespace {

Vec clamp_to_box(Vec z, const Vec& lo, const Vec& hi) {
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = std::min(std::max(z[i], lo[i]), hi[i]);
  return z;
}

/// Per-variable magnitudes derived from finite bounds. The solver and the
/// KKT measure work in these units so that narrow physical ranges (say an
/// inertia in [0.001, 0.0015]) condition no worse than unit-sized ones.
Vec bound_scales(const Vec& lo, const Vec& hi) {
  Vec s(lo.size());
  for (Eigen::Index i = 0; i < lo.size(); ++i) {
    if (std::isfinite(lo[i]) && std::isfinite(hi[i])) {
      const double m = std::max(std::abs(lo[i]), std::abs(hi[i]));
      s[i] = (m > 1e-8) ? m : 1.0;
    } else {
      s[i] = 1.0;
    }
  }
  return s;
}

/// View of a problem in scaled coordinates z_hat = z / s.
NlpProblem scale_problem(const NlpProblem& problem, const std::shared_ptr<const Vec>& s) {
  auto wrap = [&s](const std::function<double(const Vec&)>& f) {
    return [f, s](const Vec& zh) { return f(s->cwiseProduct(zh)); };
  };
  NlpProblem scaled;
  scaled.n_vars = problem.n_vars;
  scaled.lo = problem.lo.cwiseQuotient(*s);
  scaled.hi = problem.hi.cwiseQuotient(*s);
  scaled.objective = wrap(problem.objective);
  scaled.eq_constraints.reserve(problem.eq_constraints.size());
  for (const auto& c : problem.eq_constraints) scaled.eq_constraints.push_back(wrap(c));
  scaled.ineq_constraints.reserve(problem.ineq_constraints.size());
  for (const auto& c : problem.ineq_constraints) scaled.ineq_constraints.push_back(wrap(c));
  return scaled;
}

void eval_constraints(const NlpProblem& p, const Vec& z, Vec& ce, Vec& ci) {
  ce.resize(static_cast<Eigen::Index>(p.eq_constraints.size()));
  ci.resize(static_cast<Eigen::Index>(p.ineq_constraints.size()));
  for (std::size_t j = 0; j < p.eq_constraints.size(); ++j)
    ce[static_cast<Eigen::Index>(j)] = p.eq_constraints[j](z);
  for (std::size_t j = 0; j < p.ineq_constraints.size(); ++j)
    ci[static_cast<Eigen::Index>(j)] = p.ineq_constraints[j](z);
}

// Violations below this are numerical zero: without the floor, noise-level
// positive parts (~1e-10) register as feasibility backsliding, trip the
// monotonicity safeguard and ratchet the penalty until finite differences
// across the stiff penalty drown in curvature error.
constexpr double kViolationFloor = 1e-9;

// Beyond this penalty, central differences at fd_step ~ 1e-6 measure the
// penalty curvature instead of the gradient, so growing further only stalls
// the inner minimization. Applied on top of the user's penalty_cap.
constexpr double kPenaltyFdCeiling = 1e6;

double violation_measure(const Vec& ce, const Vec& ci) {
  double v = 0.0;
  for (Eigen::Index j = 0; j < ce.size(); ++j) v = std::max(v, std::abs(ce[j]));
  for (Eigen::Index j = 0; j < ci.size(); ++j) v = std::max(v, ci[j]);
  return v > kViolationFloor ? v : 0.0;
}

/// Augmented Lagrangian value at z for multipliers (lambda, mu) and penalty rho.
double augmented_lagrangian(const NlpProblem& p, const Vec& z, const Vec& lambda, const Vec& mu,
                            double rho) {
  double value = p.objective(z);
  for (std::size_t j = 0; j < p.eq_constraints.size(); ++j) {
    const double c = p.eq_constraints[j](z);
    const Eigen::Index je = static_cast<Eigen::Index>(j);
    value += lambda[je] * c + 0.5 * rho * c * c;
  }
  for (std::size_t j = 0; j < p.ineq_constraints.size(); ++j) {
    const double c = p.ineq_constraints[j](z);
    const Eigen::Index ji = static_cast<Eigen::Index>(j);
    const double t = std::max(0.0, mu[ji] + rho * c);
    value += (t * t - mu[ji] * mu[ji]) / (2.0 * rho);
  }
  return value;
}

struct BoxMinResult {
  Vec z;
  double pg_norm = kInf;
  int iterations = 0;
  /// Set when the function ran away below the divergence floor, which means
  /// the penalized subproblem is unbounded at the current penalty.
  bool unbounded = false;
};

// Abort threshold for the inner minimization. Augmented Lagrangians of
// maximization-type subproblems can be unbounded below until the penalty
// outweighs the objective's growth; values this low are never legitimate.
constexpr double kSubproblemFloor = -1e15;

/// Projected L-BFGS with a backtracking Armijo search along the projected arc.
BoxMinResult lbfgs_box_min(const std::function<double(const Vec&)>& phi, Vec z, const Vec& lo,
                           const Vec& hi, double tol, int max_iters, double fd_step) {
  constexpr int kMemory = 10;
  constexpr double kArmijoC1 = 1e-4;
  constexpr int kMaxBacktracks = 45;

  std::deque<Vec> s_hist, y_hist;
  std::deque<double> rho_hist;

  double f = phi(z);
  Vec g;
  try {
    g = fd_gradient_bounded(phi, z, fd_step, lo, hi);
  } catch (const Error&) {
    return {std::move(z), kInf, 0};
  }

  BoxMinResult out;
  int iter = 0;
  for (; iter < max_iters; ++iter) {
    const double pg = (clamp_to_box(z - g, lo, hi) - z).lpNorm<Eigen::Infinity>();
    if (pg <= tol) break;

    // Two-loop recursion.
    bool steepest = s_hist.empty();
    Vec d = -g;
    if (!s_hist.empty()) {
      std::vector<double> alpha(s_hist.size());
      for (int j = static_cast<int>(s_hist.size()) - 1; j >= 0; --j) {
        alpha[static_cast<std::size_t>(j)] =
            rho_hist[static_cast<std::size_t>(j)] * s_hist[static_cast<std::size_t>(j)].dot(d);
        d -= alpha[static_cast<std::size_t>(j)] * y_hist[static_cast<std::size_t>(j)];
      }
      const Vec& sl = s_hist.back();
      const Vec& yl = y_hist.back();
      d *= sl.dot(yl) / yl.squaredNorm();
      for (std::size_t j = 0; j < s_hist.size(); ++j) {
        const double beta = rho_hist[j] * y_hist[j].dot(d);
        d += (alpha[j] - beta) * s_hist[j];
      }
    }
    if (!d.allFinite() || d.dot(g) > -1e-14 * d.norm() * g.norm()) {
      d = -g;
      steepest = true;
    }

    // Backtracking along the projected arc.
    double step = 1.0;
    if (s_hist.empty()) {
      const double gn = g.lpNorm<Eigen::Infinity>();
      if (gn > 1.0) step = 1.0 / gn;
    }
    bool accepted = false;
    Vec z_new;
    double f_new = 0.0;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      z_new = clamp_to_box(z + step * d, lo, hi);
      const Vec dz = z_new - z;
      const double dz_norm = dz.lpNorm<Eigen::Infinity>();
      if (dz_norm == 0.0) break;
      f_new = phi(z_new);
      if (std::isfinite(f_new) && f_new <= f + kArmijoC1 * g.dot(dz)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted && !steepest) {
      // Retry once with steepest descent.
      d = -g;
      step = 1.0 / std::max(1.0, g.lpNorm<Eigen::Infinity>());
      for (int bt = 0; bt < kMaxBacktracks; ++bt) {
        z_new = clamp_to_box(z + step * d, lo, hi);
        const Vec dz = z_new - z;
        if (dz.lpNorm<Eigen::Infinity>() == 0.0) break;
        f_new = phi(z_new);
        if (std::isfinite(f_new) && f_new <= f + kArmijoC1 * g.dot(dz)) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
    }
    if (!accepted) break;  // stationary to numerical precision
    if (f_new < kSubproblemFloor) {
      z = std::move(z_new);
      f = f_new;
      out.unbounded = true;
      break;
    }

    Vec g_new;
    try {
      g_new = fd_gradient_bounded(phi, z_new, fd_step, lo, hi);
    } catch (const Error&) {
      z = std::move(z_new);
      f = f_new;
      ++iter;
      break;
    }

    const Vec s = z_new - z;
    const Vec y = g_new - g;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > kMemory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    z = std::move(z_new);
    f = f_new;
    g = std::move(g_new);
  }

  out.z = std::move(z);
  out.pg_norm = (clamp_to_box(out.z - g, lo, hi) - out.z).lpNorm<Eigen::Infinity>();
  out.iterations = iter;
  return out;
}

}  // namespace

namespace {

/// Least-squares multiplier estimate at a feasible point: minimizes the
/// Lagrangian-gradient norm over (lambda, mu >= 0 on the active set) in the
/// scaled coordinates. First-order multiplier iteration converges slowly on
/// problems with linear objectives; this refit closes the gap in one step.
/// Returns false when the estimate is unusable.
bool refit_multipliers(const NlpProblem& scaled, const Vec& zh, double fd_step, Vec& lambda,
                       Vec& mu) {
  const Eigen::Index n_eq = static_cast<Eigen::Index>(scaled.eq_constraints.size());
  const Eigen::Index n_in = static_cast<Eigen::Index>(scaled.ineq_constraints.size());
  if (n_eq + n_in == 0) return false;

  std::vector<Eigen::Index> active;
  for (Eigen::Index j = 0; j < n_in; ++j) {
    if (scaled.ineq_constraints[static_cast<std::size_t>(j)](zh) >= -1e-4) active.push_back(j);
  }

  std::vector<Eigen::Index> free_coords;
  for (Eigen::Index i = 0; i < zh.size(); ++i) {
    if (zh[i] > scaled.lo[i] + 1e-7 && zh[i] < scaled.hi[i] - 1e-7) free_coords.push_back(i);
  }
  if (free_coords.empty() || n_eq + static_cast<Eigen::Index>(active.size()) == 0) {
    lambda.setZero();
    mu.setZero();
    return true;  // nothing to fit: zero multipliers are the estimate
  }

  Vec g0;
  Mat A(static_cast<Eigen::Index>(free_coords.size()),
        n_eq + static_cast<Eigen::Index>(active.size()));
  try {
    g0 = fd_gradient_bounded(scaled.objective, zh, fd_step, scaled.lo, scaled.hi);
    for (Eigen::Index j = 0; j < n_eq; ++j) {
      const Vec gc = fd_gradient_bounded(scaled.eq_constraints[static_cast<std::size_t>(j)], zh,
                                         fd_step, scaled.lo, scaled.hi);
      for (std::size_t r = 0; r < free_coords.size(); ++r)
        A(static_cast<Eigen::Index>(r), j) = gc[free_coords[r]];
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
      const Vec gc = fd_gradient_bounded(
          scaled.ineq_constraints[static_cast<std::size_t>(active[a])], zh, fd_step, scaled.lo,
          scaled.hi);
      for (std::size_t r = 0; r < free_coords.size(); ++r)
        A(static_cast<Eigen::Index>(r), n_eq + static_cast<Eigen::Index>(a)) = gc[free_coords[r]];
    }
  } catch (const Error&) {
    return false;
  }

  Vec rhs(static_cast<Eigen::Index>(free_coords.size()));
  for (std::size_t r = 0; r < free_coords.size(); ++r) rhs[static_cast<Eigen::Index>(r)] = -g0[free_coords[r]];

  Vec y = A.colPivHouseholderQr().solve(rhs);
  if (!y.allFinite() || y.lpNorm<Eigen::Infinity>() > 1e8) return false;

  // Nonnegativity for inequality multipliers: clamp and re-solve once with
  // the offending columns removed.
  bool clamped = false;
  for (std::size_t a = 0; a < active.size(); ++a) {
    if (y[n_eq + static_cast<Eigen::Index>(a)] < 0.0) clamped = true;
  }
  if (clamped) {
    std::vector<Eigen::Index> kept;
    for (std::size_t a = 0; a < active.size(); ++a) {
      if (y[n_eq + static_cast<Eigen::Index>(a)] >= 0.0) kept.push_back(active[a]);
    }
    Mat A2(A.rows(), n_eq + static_cast<Eigen::Index>(kept.size()));
    A2.leftCols(n_eq) = A.leftCols(n_eq);
    Eigen::Index col = n_eq;
    for (std::size_t a = 0; a < active.size(); ++a) {
      if (y[n_eq + static_cast<Eigen::Index>(a)] >= 0.0)
        A2.col(col++) = A.col(n_eq + static_cast<Eigen::Index>(a));
    }
    Vec y2 = A2.colPivHouseholderQr().solve(rhs);
    if (!y2.allFinite() || y2.lpNorm<Eigen::Infinity>() > 1e8) return false;
    active = std::move(kept);
    y = std::move(y2);
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(active.size()); ++j)
      if (y[n_eq + j] < 0.0) y[n_eq + j] = 0.0;
  }

  lambda = y.head(n_eq);
  mu.setZero();
  for (std::size_t a = 0; a < active.size(); ++a)
    mu[active[a]] = y[n_eq + static_cast<Eigen::Index>(a)];
  return true;
}

}  // namespace

double check_kkt(const NlpProblem& problem, const Vec& z, const Vec& eq_multipliers,
                 const Vec& ineq_multipliers, double fd_step) {
  if (z.size() != problem.n_vars) throw_invalid("check_kkt: variable dimension mismatch");
  const Vec scales = bound_scales(problem.lo, problem.hi);
  auto lagrangian = [&](const Vec& x) {
    double value = problem.objective(x);
    for (std::size_t j = 0; j < problem.eq_constraints.size(); ++j)
      value += eq_multipliers[static_cast<Eigen::Index>(j)] * problem.eq_constraints[j](x);
    for (std::size_t j = 0; j < problem.ineq_constraints.size(); ++j)
      value += ineq_multipliers[static_cast<Eigen::Index>(j)] * problem.ineq_constraints[j](x);
    return value;
  };

  // Projected gradient of the Lagrangian in the bound-scaled coordinates.
  double pg = 0.0;
  {
    auto scaled = [&](const Vec& zh) { return lagrangian(scales.cwiseProduct(zh)); };
    const Vec zh = z.cwiseQuotient(scales);
    const Vec lo_h = problem.lo.cwiseQuotient(scales);
    const Vec hi_h = problem.hi.cwiseQuotient(scales);
    Vec grad;
    try {
      grad = fd_gradient_bounded(scaled, zh, fd_step, lo_h, hi_h);
    } catch (const Error&) {
      return kInf;
    }
    pg = (clamp_to_box(zh - grad, lo_h, hi_h) - zh).lpNorm<Eigen::Infinity>();
  }

  Vec ce, ci;
  eval_constraints(problem, z, ce, ci);
  const double viol = violation_measure(ce, ci);

  // Complementarity, normalized by the multiplier magnitude as interior-point
  // practice does, so a tightly active constraint does not fail on mu * tol.
  double comp = 0.0;
  for (Eigen::Index j = 0; j < ci.size(); ++j) {
    const double mu_j = ineq_multipliers[j];
    comp = std::max(comp, std::abs(mu_j * ci[j]) / std::max(1.0, mu_j));
  }

  return std::max({pg, viol, comp});
}

NlpResult solve(const NlpProblem& problem, Vec z0, const SolverSettings& settings) {
  if (problem.n_vars <= 0 || problem.lo.size() != problem.n_vars ||
      problem.hi.size() != problem.n_vars)
    throw_invalid("solve: malformed problem bounds");
  if (!problem.objective) throw_invalid("solve: objective not set");
  if (z0.size() != problem.n_vars) throw_invalid("solve: start dimension mismatch");

  // The search runs in bound-scaled coordinates; raw values are reported.
  const auto scales = std::make_shared<const Vec>(bound_scales(problem.lo, problem.hi));
  const NlpProblem scaled = scale_problem(problem, scales);
  const Vec& s = *scales;

  Vec z = clamp_to_box(z0.cwiseQuotient(s), scaled.lo, scaled.hi);
  if (!std::isfinite(scaled.objective(z)))
    throw Error(ErrorCode::invalid_start, "solve: objective non-finite at projected start");

  const Eigen::Index n_eq = static_cast<Eigen::Index>(problem.eq_constraints.size());
  const Eigen::Index n_in = static_cast<Eigen::Index>(problem.ineq_constraints.size());
  Vec lambda = Vec::Zero(n_eq);
  Vec mu = Vec::Zero(n_in);
  double rho = settings.penalty_init;

  NlpResult result;
  result.status = SolveStatus::max_iters;

  Vec ce, ci;
  double best_violation = kInf;
  Vec best_z = z, best_lambda = lambda, best_mu = mu;
  double omega = std::max(1e-2, settings.tol_kkt);  // inner tolerance, tightened per round
  int total_inner = 0;
  int stagnant_rounds = 0;
  double best_kkt = kInf;
  int rounds_without_kkt_progress = 0;

  const bool unconstrained = (n_eq == 0 && n_in == 0);
  constexpr double kBlowupViolation = 1e6;

  for (int outer = 0; outer < settings.max_outer_iters; ++outer) {
    auto phi = [&](const Vec& x) { return augmented_lagrangian(scaled, x, lambda, mu, rho); };
    const double inner_tol = unconstrained ? settings.tol_kkt : omega;
    BoxMinResult inner = lbfgs_box_min(phi, z, scaled.lo, scaled.hi, inner_tol,
                                       settings.max_inner_iters, settings.fd_step);
    total_inner += inner.iterations;
    Vec z_trial = std::move(inner.z);

    eval_constraints(scaled, z_trial, ce, ci);
    const double v = violation_measure(ce, ci);

    // Unbounded subproblem: the penalty is still too weak against the
    // objective's growth along unbounded directions. Discard the runaway
    // iterate and retry from the best point with a stronger penalty.
    if (inner.unbounded || (std::isfinite(v) && v > kBlowupViolation)) {
      z = best_z;
      const double rho_cap = std::min(settings.penalty_cap, kPenaltyFdCeiling);
      if (rho >= rho_cap) {
        result.status = SolveStatus::diverged;
        break;
      }
      rho = std::min(rho * settings.penalty_growth, rho_cap);
      continue;
    }

    if (!std::isfinite(v) || !std::isfinite(scaled.objective(z_trial))) {
      result.status = SolveStatus::diverged;
      break;
    }

    // Monotone-violation safeguard: an outer iterate that worsens feasibility
    // is rejected; the penalty is raised and the search resumes from the best
    // accepted point with unchanged multipliers.
    if (v > best_violation + 1e-12) {
      z = best_z;
      const double rho_cap = std::min(settings.penalty_cap, kPenaltyFdCeiling);
      if (rho >= rho_cap) break;
      rho = std::min(rho * settings.penalty_growth, rho_cap);
      ++stagnant_rounds;
      if (stagnant_rounds > 3 && best_violation > settings.tol_feas) break;
      continue;
    }

    const double v_prev = result.violation_history.empty() ? kInf : result.violation_history.back();
    result.violation_history.push_back(v);
    z = std::move(z_trial);
    best_violation = v;
    best_z = z;

    // First-order multiplier update.
    lambda += rho * ce;
    for (Eigen::Index j = 0; j < n_in; ++j) mu[j] = std::max(0.0, mu[j] + rho * ci[j]);
    best_lambda = lambda;
    best_mu = mu;
    ++result.outer_iterations;

    double kkt = check_kkt(problem, s.cwiseProduct(z), lambda, mu, settings.fd_step);
    if (v <= settings.tol_feas && kkt > settings.tol_kkt) {
      // Feasible but not yet stationary: a least-squares multiplier estimate
      // often certifies the point immediately.
      Vec lambda_fit = lambda, mu_fit = mu;
      if (refit_multipliers(scaled, z, settings.fd_step, lambda_fit, mu_fit)) {
        const double kkt_fit =
            check_kkt(problem, s.cwiseProduct(z), lambda_fit, mu_fit, settings.fd_step);
        if (kkt_fit < kkt) {
          kkt = kkt_fit;
          lambda = lambda_fit;
          mu = mu_fit;
          best_lambda = lambda;
          best_mu = mu;
        }
      }
    }
    if (std::getenv("SIPG_DEBUG_AL") != nullptr) {
      std::fprintf(stderr,
                   "AL round %d: v=%.3e kkt=%.3e rho=%.1e omega=%.1e inner=%d mu0=%.6f\n",
                   outer, v, kkt, rho, omega, inner.iterations,
                   mu.size() > 0 ? mu[0] : 0.0);
    }
    if (kkt <= settings.tol_kkt && v <= settings.tol_feas) {
      result.status = SolveStatus::converged;
      break;
    }
    // Stall exit: feasible but the stationarity residual has stopped
    // improving; further rounds only burn the iteration budget.
    if (kkt < 0.9 * best_kkt) {
      best_kkt = kkt;
      rounds_without_kkt_progress = 0;
    } else if (v <= settings.tol_feas && ++rounds_without_kkt_progress >= 8) {
      break;
    }
    if (unconstrained && inner.pg_norm <= settings.tol_kkt) {
      // No multipliers to improve; the inner minimizer is the whole story.
      result.status = (kkt <= settings.tol_kkt) ? SolveStatus::converged : SolveStatus::max_iters;
      break;
    }

    if (v > 0.25 * v_prev && v > settings.tol_feas) {
      const double rho_cap = std::min(settings.penalty_cap, kPenaltyFdCeiling);
      if (rho >= rho_cap) {
        ++stagnant_rounds;
        if (stagnant_rounds > 3) break;
      }
      rho = std::min(rho * settings.penalty_growth, rho_cap);
    } else {
      stagnant_rounds = 0;
    }
    omega = std::max(0.1 * settings.tol_kkt, omega * 0.2);
  }

  result.z_star = s.cwiseProduct(best_z);
  result.objective_value = problem.objective(result.z_star);
  result.eq_multipliers = best_lambda;
  result.ineq_multipliers = best_mu;
  eval_constraints(problem, result.z_star, ce, ci);
  result.max_constraint_violation = violation_measure(ce, ci);
  result.kkt_residual = check_kkt(problem, result.z_star, best_lambda, best_mu, settings.fd_step);
  result.inner_iterations = total_inner;
  if (result.status == SolveStatus::converged &&
      (result.kkt_residual > settings.tol_kkt ||
       result.max_constraint_violation > settings.tol_feas)) {
    result.status = SolveStatus::max_iters;  // keep the converged contract honest
  }
  return result;
}

NlpResult multi_start_solve(const NlpProblem& problem, const SolverSettings& settings,
                            std::span<const Vec> extra_starts) {
  std::vector<Vec> starts;
  starts.reserve(static_cast<std::size_t>(settings.n_starts) + 1 + extra_starts.size());

  Vec mid(problem.n_vars);
  for (int i = 0; i < problem.n_vars; ++i) {
    const bool finite = std::isfinite(problem.lo[i]) && std::isfinite(problem.hi[i]);
    mid[i] = finite ? 0.5 * (problem.lo[i] + problem.hi[i]) : 0.0;
  }
  starts.push_back(mid);

  for (int k = 0; k < settings.n_starts; ++k) {
    Rng rng = Rng::child(settings.rng_seed, static_cast<std::uint64_t>(k));
    Vec z(problem.n_vars);
    for (int i = 0; i < problem.n_vars; ++i) {
      const bool finite = std::isfinite(problem.lo[i]) && std::isfinite(problem.hi[i]);
      z[i] = finite ? rng.uniform(problem.lo[i], problem.hi[i]) : 0.0;
    }
    starts.push_back(std::move(z));
  }
  for (const Vec& z : extra_starts) starts.push_back(z);

  const int n = static_cast<int>(starts.size());
  std::vector<NlpResult> results(static_cast<std::size_t>(n));
  std::vector<bool> failed(static_cast<std::size_t>(n), false);
  parallel_for(n, [&](int i) {
    try {
      results[static_cast<std::size_t>(i)] = solve(problem, starts[static_cast<std::size_t>(i)], settings);
      results[static_cast<std::size_t>(i)].start_index = i;
    } catch (const Error&) {
      failed[static_cast<std::size_t>(i)] = true;
    }
  });

  int best = -1;
  auto better = [&](int a, int b) {  // is a better than b
    const NlpResult& ra = results[static_cast<std::size_t>(a)];
    const NlpResult& rb = results[static_cast<std::size_t>(b)];
    const bool ca = ra.status == SolveStatus::converged;
    const bool cb = rb.status == SolveStatus::converged;
    if (ca != cb) return ca;
    if (ca) return ra.objective_value < rb.objective_value;
    const double va = std::max(ra.max_constraint_violation, 0.0);
    const double vb = std::max(rb.max_constraint_violation, 0.0);
    if (va != vb) return va < vb;
    return ra.objective_value < rb.objective_value;
  };
  for (int i = 0; i < n; ++i) {
    if (failed[static_cast<std::size_t>(i)]) continue;
    if (best < 0 || better(i, best)) best = i;
  }
  if (best < 0)
    throw Error(ErrorCode::invalid_start, "multi_start_solve: every start failed to evaluate");
  return results[static_cast<std::size_t>(best)];
}

}  // namespace sipg
