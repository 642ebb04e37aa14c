#ifndef BDCA_PROBLEMS_HPP
#define BDCA_PROBLEMS_HPP

#include "bdca/dc.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bdca {

/// A DC problem together with what is known about its optimum.
struct Benchmark {
  DCProblem problem;
  /// Deterministic start replacing random draws (the academic problem).
  std::optional<Point> fixed_start;
  std::optional<double> f_star;
  std::string minimizer_set;
};

/// random_point on the problem's manifold, or the fixed start when there is one.
Point random_start(const Benchmark& bench, Rng& rng);

enum class Tangency { internal, external };

const char* tangency_name(Tangency t);

struct RosenbrockParams {
  double a = 1.0;
  double b = 100.0;
  double theta = 1.0;
  int n = 2;
  Tangency tangency = Tangency::internal;
  /// Reference points; the tangent configuration for `tangency` when empty.
  std::optional<Point> p_ref;
  std::optional<Point> q_ref;
};

struct RosenbrockInstance {
  Benchmark bench;
  Point p_ref;
  Point q_ref;
  /// Minimizers lie at distance a^{1/theta} from p_ref and a^{2/theta} from q_ref.
  double radius_p = 0.0;
  double radius_q = 0.0;
  /// Set for the tangent configurations with distinct reference points.
  std::optional<Point> unique_minimizer;
  /// p_ref == q_ref (internal tangency with a = 1): every point of the
  /// sphere about p_ref is a minimizer.
  bool coincident_refs = false;
};

/// (sinh x, 0, ..., 0, cosh x) in H^n.
Point hyperbolic_axis_point(int n, double x);

/// f(p) = (a - d(p,P)^theta)^2 + b (d(p,Q)^theta - d(p,P)^{2 theta})^2 on H^n
/// with g = a^2 + d_P^{2theta} + 2b d_Q^{2theta} + 2b d_P^{4theta} and
/// h = 2a d_P^theta + b (d_P^{2theta} + d_Q^theta)^2. Throws ConstructionError
/// when d(P,Q) violates a^{2/theta} - a^{1/theta} <= d(P,Q) <= a^{2/theta} + a^{1/theta}.
RosenbrockInstance rosenbrock_problem(const RosenbrockParams& params);

struct AcademicParams {
  int n = 4;
};

/// ln(n) I + e_1 e_n^T + e_n e_1^T. Positive definite for n >= 3 only.
Eigen::MatrixXd academic_start(int n);

/// g = (ln det X)^4, h = (ln det X)^2 on P(n), started from academic_start(n).
/// Throws ConstructionError when the start is not positive definite.
Benchmark academic_problem(const AcademicParams& params);

/// ln det X through a Cholesky factor.
double log_det(const Eigen::MatrixXd& x);

struct ContrastiveParams {
  int n = 5;
  /// Counts used when the reference sets are drawn.
  int m = 5;
  int r = 1;
  std::vector<Point> positives;
  std::vector<Point> negatives;
  /// Unit weights when empty.
  std::vector<double> positive_weights;
  std::vector<double> negative_weights;
  /// Drawn references are geodesic perturbations of a random center, up to
  /// these radii.
  double cluster_radius = 0.5;
  double negative_radius = 0.5;
};

struct ContrastiveInstance {
  Benchmark bench;
  ContrastiveParams params;
};

/// g = sum_i w+_i d^2(X, P_i), h = sum_j w-_j d^2(X, N_j) on P(n). Reference
/// sets left empty are drawn from rng around one random center, positives
/// within cluster_radius and negatives independently within negative_radius.
ContrastiveInstance contrastive_problem(ContrastiveParams params, Rng& rng);

/// g = d^2(p, z1), h = d^2(p, z2)/2 on R^n: phi is 1-strongly convex with
/// minimizer 2 z1 - z2, and g is 2-strongly convex.
Benchmark euclidean_quadratic_problem(const Eigen::VectorXd& z1, const Eigen::VectorXd& z2);

} // namespace bdca

#endif // BDCA_PROBLEMS_HPP
