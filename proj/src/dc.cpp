#include "bdca/dc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <memory>
#include <mutex>

namespace bdca {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void warn_fd_fallback(const std::string& problem) {
  static std::once_flag once;
  std::call_once(once, [&] {
    std::cerr << "warning: " << problem
              << ": no analytic gradient of g, subproblem gradients use finite differences\n";
  });
}

SubproblemObjective with_model(const DCProblem& problem, ScalarField model_value,
                               TangentField model_grad) {
  SubproblemObjective obj;
  const DCProblem* pr = &problem;
  obj.value = [pr, model_value](const Point& p) { return pr->g(p) + model_value(p); };
  if (problem.g_grad) {
    obj.grad = [pr, model_grad](const Point& p) { return pr->g_grad(p) + model_grad(p); };
  } else {
    warn_fd_fallback(problem.name);
    const Manifold m = problem.manifold;
    ScalarField value = obj.value;
    obj.grad = [m, value](const Point& p) { return fd_riemannian_grad(m, value, p); };
    obj.fd_gradient = true;
  }
  return obj;
}

} // namespace

Tangent DCProblem::phi_grad(const Point& p) const {
  if (!g_grad)
    throw ValidationError(name + ": grad phi needs an analytic gradient of g");
  return g_grad(p) - h_subgrad(p);
}

const char* algorithm_name(Algorithm a) { return a == Algorithm::cr_dca ? "cr" : "b"; }

const char* exit_reason_name(ExitReason r) {
  switch (r) {
  case ExitReason::gradient:
    return "gradient";
  case ExitReason::step:
    return "step";
  case ExitReason::fixed_point:
    return "fixed_point";
  case ExitReason::max_outer:
    return "max_outer";
  case ExitReason::stalled:
    return "stalled";
  }
  return "unknown";
}

double scale_factor(const DCProblem& problem, const Point& p0) {
  return 1.0 / (norm(problem.manifold, problem.phi_grad(p0)) + 1.0);
}

SubproblemObjective make_cr_subproblem(const DCProblem& problem, const Point& pk,
                                       const Tangent& sk) {
  if (problem.cr_subproblem)
    return problem.cr_subproblem(pk, sk);
  auto pairing = std::make_shared<LogPairing>(problem.manifold, sk);
  return with_model(
      problem, [pairing](const Point& p) { return -pairing->value(p); },
      [pairing](const Point& p) { return -pairing->grad(p); });
}

SubproblemObjective make_b_subproblem(const DCProblem& problem, const Point& pk,
                                      const Tangent& sk) {
  if (problem.b_subproblem)
    return problem.b_subproblem(pk, sk);
  const Manifold& m = problem.manifold;
  const double snorm = norm(m, sk);
  if (!(snorm > 0.0)) {
    // zero subgradient: the Busemann term is the constant 0
    return with_model(
        problem, [](const Point&) { return 0.0; },
        [m](const Point& p) { return zero_tangent(m, p); });
  }
  auto busemann = std::make_shared<BusemannFunction>(m, BusemannRay{pk, sk});
  return with_model(
      problem, [busemann, snorm](const Point& p) { return snorm * busemann->value(p); },
      [busemann, snorm](const Point& p) { return snorm * busemann->grad(p); });
}

InnerResult inner_solve(const Manifold& m, const SubproblemObjective& obj, const Point& start,
                        const InnerConfig& cfg, double tol) {
  if (!(tol > 0.0))
    throw ValidationError("inner_solve: tolerance must be positive");
  if (!(cfg.armijo_c1 > 0.0 && cfg.armijo_c1 < 1.0))
    throw ValidationError("inner_solve: armijo c1 must lie in (0,1)");
  if (!(cfg.backtrack > 0.0 && cfg.backtrack < 1.0))
    throw ValidationError("inner_solve: backtrack factor must lie in (0,1)");

  InnerResult cur;
  cur.point = start;
  cur.value = obj.value(start);
  Tangent g = obj.grad(start);
  cur.grad_norm = norm(m, g);
  double alpha0 = 1.0;

  while (true) {
    if (cur.grad_norm <= tol) {
      cur.converged = true;
      return cur;
    }
    if (cur.iterations >= cfg.max_iters)
      return cur;

    const double gg = cur.grad_norm * cur.grad_norm;
    double alpha = alpha0;
    bool accepted = false;
    Point trial;
    double f_trial = 0.0;
    for (int halving = 0; halving <= cfg.max_halvings; ++halving, alpha *= cfg.backtrack) {
      try {
        trial = exp_map(m, (-alpha) * g);
        f_trial = obj.value(trial);
      } catch (const OverflowError&) {
        continue;
      } catch (const DefinitenessError&) {
        continue;
      } catch (const NumericalDomainError&) {
        continue;
      }
      // once the step rounds away, the Armijo test passes on rounding alone
      if (trial.coords == cur.point.coords)
        break;
      if (std::isfinite(f_trial) && f_trial <= cur.value - cfg.armijo_c1 * alpha * gg) {
        accepted = true;
        break;
      }
    }

    if (!accepted) {
      // Near the minimizer the decrease a good step can buy sinks below the
      // resolution of the objective value; that is a precision limit, not a
      // failed line search.
      const double expected = 0.5 * std::min(alpha0, 1.0) * gg;
      if (expected <= 1e3 * kEps * (1.0 + std::abs(cur.value)))
        return cur;
      throw StalledSolveError("inner_solve: line search failed after " +
                                  std::to_string(cfg.max_halvings) + " halvings",
                              cur);
    }

    Tangent g_new = obj.grad(trial);
    if (cfg.step_rule == StepRule::bb) {
      // s = previous step carried to the new point (exact along the geodesic),
      // <s, y> = <s, g_new> - <-alpha g, g>
      const Tangent s = -log_map(m, trial, cur.point);
      const double sy = inner(m, s, g_new) + alpha * gg;
      const double ss = alpha * alpha * gg;
      alpha0 = sy > 0.0 ? std::clamp(ss / sy, 1e-10, 1e10) : std::min(1e10, 2.0 * alpha);
    } else {
      alpha0 = 1.0;
    }
    cur.point = std::move(trial);
    cur.value = f_trial;
    cur.grad_norm = norm(m, g_new);
    g = std::move(g_new);
    ++cur.iterations;
  }
}

SolverTrace run_dca(const DCProblem& problem, const Point& p0, const SolverConfig& cfg) {
  const Manifold& m = problem.manifold;
  check_point(m, p0);
  if (!(cfg.eps_base > 0.0))
    throw ValidationError("run_dca: eps_base must be positive");

  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - t0).count(); };

  // The solver minimizes the scaled objective gamma phi: its gradient test
  // gamma |grad phi| <= gamma eps_base and the inner test on gamma psi_k both
  // drop gamma, while the step test d <= eps keeps it.
  SolverTrace trace;
  trace.gamma = scale_factor(problem, p0);
  trace.eps = trace.gamma * cfg.eps_base;
  const double inner_tol = cfg.inner.tol_factor * cfg.eps_base;

  Point p = p0;
  double fp = problem.phi(p);
  double gn = norm(m, problem.phi_grad(p));
  int inn = 0;
  for (int k = 0;; ++k) {
    IterationRecord rec;
    rec.k = k;
    rec.point = p;
    rec.fval = fp;
    rec.grad_norm = gn;
    rec.elapsed = elapsed();
    if (trace.gamma * gn <= trace.eps) {
      trace.exit = ExitReason::gradient;
      trace.records.push_back(std::move(rec));
      break;
    }
    if (k >= cfg.max_outer) {
      trace.exit = ExitReason::max_outer;
      trace.records.push_back(std::move(rec));
      break;
    }

    const Tangent s = problem.h_subgrad(p);
    const SubproblemObjective obj = cfg.algorithm == Algorithm::cr_dca
                                        ? make_cr_subproblem(problem, p, s)
                                        : make_b_subproblem(problem, p, s);
    InnerResult r;
    try {
      r = inner_solve(m, obj, p, cfg.inner, inner_tol);
    } catch (const StalledSolveError& e) {
      rec.inner_iters = e.best().iterations;
      inn += rec.inner_iters;
      trace.records.push_back(std::move(rec));
      trace.exit = ExitReason::stalled;
      trace.message = e.what();
      break;
    }
    rec.inner_iters = r.iterations;
    rec.step = dist(m, p, r.point);
    inn += r.iterations;
    const bool same = r.point.coords == p.coords;
    const double step = rec.step;
    trace.records.push_back(std::move(rec));

    p = std::move(r.point);
    fp = problem.phi(p);
    gn = norm(m, problem.phi_grad(p));
    if (same || step <= trace.eps) {
      IterationRecord last;
      last.k = k + 1;
      last.point = p;
      last.fval = fp;
      last.grad_norm = gn;
      last.elapsed = elapsed();
      trace.records.push_back(std::move(last));
      trace.exit = same ? ExitReason::fixed_point : ExitReason::step;
      break;
    }
  }

  const IterationRecord& last = trace.records.back();
  trace.k = last.k;
  trace.inn = inn;
  trace.inn_per_k = trace.k > 0 ? static_cast<double>(inn) / trace.k : 0.0;
  trace.fval = last.fval;
  trace.grad_norm = trace.gamma * last.grad_norm;
  trace.time_s = elapsed();
  return trace;
}

ComplexityCheck complexity_bound_check(const SolverTrace& trace, double sigma, double phi_inf) {
  if (!(sigma > 0.0))
    throw ValidationError("complexity_bound_check: sigma must be positive");
  if (!std::isfinite(phi_inf))
    throw ValidationError("complexity_bound_check: phi_inf must be finite");
  ComplexityCheck out;
  if (trace.records.empty())
    return out;
  const double phi0 = trace.records.front().fval;
  double min_step = std::numeric_limits<double>::infinity();
  // the last record has no outgoing step
  for (std::size_t n = 0; n + 1 < trace.records.size(); ++n) {
    min_step = std::min(min_step, trace.records[n].step);
    const double bound =
        std::sqrt(std::max(0.0, 2.0 * (phi0 - phi_inf) / (sigma * static_cast<double>(n + 1))));
    if (min_step > bound + 1e-12) {
      out.passed = false;
      out.witness = static_cast<int>(n);
      return out;
    }
  }
  return out;
}

} // namespace bdca
