#ifndef BDCA_DC_HPP
#define BDCA_DC_HPP

#include "bdca/manifold.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bdca {

/// Objective of one outer step, p -> psi_k(p) or p -> phi_k(p).
struct SubproblemObjective {
  ScalarField value;
  TangentField grad;
  /// grad is a finite-difference fallback rather than a closed form.
  bool fd_gradient = false;
};

using SubproblemFactory = std::function<SubproblemObjective(const Point& pk, const Tangent& sk)>;

/// phi = g - h with g sigma-strongly convex and h convex.
struct DCProblem {
  Manifold manifold = Manifold::euclidean(1);
  std::string name;
  ScalarField g;
  ScalarField h;
  /// A subgradient of h (the gradient on the smooth benchmarks).
  TangentField h_subgrad;
  /// Riemannian gradient of g; when empty the subproblems fall back to
  /// finite differences.
  TangentField g_grad;
  double sigma = 0.0;
  std::optional<double> phi_inf;
  /// Problem-specific subproblem objectives; the generic constructions are
  /// used when these are empty.
  SubproblemFactory cr_subproblem;
  SubproblemFactory b_subproblem;

  double phi(const Point& p) const { return g(p) - h(p); }
  /// grad g - grad h; requires g_grad.
  Tangent phi_grad(const Point& p) const;
};

enum class Algorithm { cr_dca, b_dca };

const char* algorithm_name(Algorithm a);

enum class StepRule { fixed, bb };

struct InnerConfig {
  int max_iters = 500;
  double armijo_c1 = 1e-4;
  double backtrack = 0.5;
  int max_halvings = 60;
  StepRule step_rule = StepRule::bb;
  /// Inner tolerance on the scaled subproblem = tol_factor * outer epsilon.
  double tol_factor = 0.1;
};

struct SolverConfig {
  double eps_base = 1e-4;
  int max_outer = 20000;
  InnerConfig inner;
  Algorithm algorithm = Algorithm::b_dca;
};

/// 1 / (|grad phi(p0)| + 1).
double scale_factor(const DCProblem& problem, const Point& p0);

/// psi_k(p) = g(p) - <s_k, log_{p_k} p>.
SubproblemObjective make_cr_subproblem(const DCProblem& problem, const Point& pk,
                                       const Tangent& sk);
/// phi_k(p) = g(p) + |s_k| B_{p_k,s_k}(p); the Busemann term is the constant 0
/// when s_k = 0.
SubproblemObjective make_b_subproblem(const DCProblem& problem, const Point& pk,
                                      const Tangent& sk);

struct InnerResult {
  Point point;
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  /// Gradient tolerance reached (otherwise max_iters or the rounding floor).
  bool converged = false;
};

/// The line search failed while a meaningful decrease was still predicted.
class StalledSolveError : public Error {
public:
  StalledSolveError(const std::string& what, InnerResult best)
      : Error(what), best_(std::move(best)) {}
  const InnerResult& best() const { return best_; }

private:
  InnerResult best_;
};

/// Riemannian steepest descent with Armijo backtracking along
/// exp_p(-alpha grad). The bb rule starts each line search from a
/// Barzilai-Borwein step built with the exactly transported previous step
/// -log_{p_new} p. Stops at grad norm <= tol, at max_iters, or when the
/// predicted decrease of the trial step is below the rounding floor of the
/// objective value.
InnerResult inner_solve(const Manifold& m, const SubproblemObjective& obj, const Point& start,
                        const InnerConfig& cfg, double tol);

enum class ExitReason { gradient, step, fixed_point, max_outer, stalled };

const char* exit_reason_name(ExitReason r);

struct IterationRecord {
  int k = 0;
  Point point;
  double fval = 0.0;
  /// |grad phi(p_k)| of the unscaled objective.
  double grad_norm = 0.0;
  /// Inner iterations and distance d(p_k, p_{k+1}) of the step leaving p_k;
  /// zero on the last record.
  int inner_iters = 0;
  double step = 0.0;
  double elapsed = 0.0;
};

struct SolverTrace {
  std::vector<IterationRecord> records;
  ExitReason exit = ExitReason::max_outer;
  std::string message;
  double gamma = 1.0;
  double eps = 0.0;
  // totals, taken at the last record
  int k = 0;
  int inn = 0;
  double inn_per_k = 0.0;
  double fval = 0.0;
  /// Scaled norm gamma |grad phi|, the quantity tested against eps.
  double grad_norm = 0.0;
  double time_s = 0.0;

  const Point& final_point() const { return records.back().point; }
};

/// Algorithm 1 (cr_dca) or Algorithm 2 (b_dca) from p0 on the scaled
/// objective gamma phi. Stops when gamma |grad phi(p_k)| <= eps or
/// d(p_{k+1}, p_k) <= eps (eps = gamma * eps_base),
/// when the inner solver returns p_k itself, or after max_outer steps. A
/// stalled inner solve ends the run with exit = stalled and the partial trace.
SolverTrace run_dca(const DCProblem& problem, const Point& p0, const SolverConfig& cfg);

struct ComplexityCheck {
  bool passed = true;
  /// First prefix length N violating the bound.
  std::optional<int> witness;
};

/// min_{k<=N} d(p_k, p_{k+1}) <= sqrt(2 (phi(p_0) - phi_inf) / (sigma (N+1)))
/// for every prefix N of the trace.
ComplexityCheck complexity_bound_check(const SolverTrace& trace, double sigma, double phi_inf);

} // namespace bdca

#endif // BDCA_DC_HPP
