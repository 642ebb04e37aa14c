#include "bdca/problems.hpp"

#include <cmath>
#include <iostream>
#include <memory>

namespace bdca {

namespace {

// grad of p -> d(p,z)^alpha, i.e. -alpha d^{alpha-2} log_p z. At p = z the
// zero vector, which for alpha = 1 is the subgradient selection we use.
Tangent dist_power_grad(const Manifold& m, const Point& p, const Point& z, double alpha) {
  const double d = dist(m, p, z);
  if (d == 0.0)
    return zero_tangent(m, p);
  return (-alpha * std::pow(d, alpha - 2.0)) * log_map(m, p, z);
}

} // namespace

Point random_start(const Benchmark& bench, Rng& rng) {
  if (bench.fixed_start)
    return *bench.fixed_start;
  return random_point(bench.problem.manifold, rng);
}

const char* tangency_name(Tangency t) { return t == Tangency::internal ? "internal" : "external"; }

Point hyperbolic_axis_point(int n, double x) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n + 1);
  v(0) = std::sinh(x);
  v(n) = std::cosh(x);
  return make_point(v);
}

RosenbrockInstance rosenbrock_problem(const RosenbrockParams& params) {
  const double a = params.a;
  const double b = params.b;
  const double theta = params.theta;
  if (!(a > 0.0) || !(b > 0.0))
    throw ConstructionError("rosenbrock: a and b must be positive");
  if (!(theta >= 1.0))
    throw ConstructionError("rosenbrock: theta must be at least 1");
  if (params.n < 1)
    throw ConstructionError("rosenbrock: n must be positive");
  if (params.p_ref.has_value() != params.q_ref.has_value())
    throw ConstructionError("rosenbrock: give both reference points or neither");

  const Manifold m = Manifold::hyperbolic(params.n);
  RosenbrockInstance out;
  out.radius_p = std::pow(a, 1.0 / theta);
  out.radius_q = std::pow(a, 2.0 / theta);
  if (params.p_ref) {
    check_point(m, *params.p_ref);
    check_point(m, *params.q_ref);
    out.p_ref = *params.p_ref;
    out.q_ref = *params.q_ref;
  } else {
    out.p_ref = hyperbolic_axis_point(params.n, out.radius_p);
    out.q_ref = hyperbolic_axis_point(params.n, params.tangency == Tangency::internal
                                                    ? out.radius_q
                                                    : -out.radius_q);
  }
  const double d_ref = dist(m, out.p_ref, out.q_ref);
  const double lo = out.radius_q - out.radius_p;
  const double hi = out.radius_q + out.radius_p;
  const double slack = 1e-9 * (1.0 + hi);
  if (d_ref < lo - slack || d_ref > hi + slack)
    throw ConstructionError("rosenbrock: d(p_ref, q_ref) = " + std::to_string(d_ref) +
                            " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  out.coincident_refs = d_ref == 0.0;
  const bool tangent_config = std::abs(d_ref - lo) <= slack || std::abs(d_ref - hi) <= slack;
  if (!params.p_ref && !out.coincident_refs)
    out.unique_minimizer = hyperbolic_axis_point(params.n, 0.0);

  const Point pr = out.p_ref;
  const Point qr = out.q_ref;
  const double t = theta;
  DCProblem& dc = out.bench.problem;
  dc.manifold = m;
  dc.name = std::string("rosenbrock-") + tangency_name(params.tangency);
  dc.g = [=](const Point& p) {
    const double dp = dist(m, p, pr);
    const double dq = dist(m, p, qr);
    return a * a + std::pow(dp, 2 * t) + 2 * b * std::pow(dq, 2 * t) + 2 * b * std::pow(dp, 4 * t);
  };
  dc.h = [=](const Point& p) {
    const double dp = dist(m, p, pr);
    const double dq = dist(m, p, qr);
    const double inner_sum = std::pow(dp, 2 * t) + std::pow(dq, t);
    return 2 * a * std::pow(dp, t) + b * inner_sum * inner_sum;
  };
  dc.g_grad = [=](const Point& p) {
    return dist_power_grad(m, p, pr, 2 * t) + (2 * b) * dist_power_grad(m, p, qr, 2 * t) +
           (2 * b) * dist_power_grad(m, p, pr, 4 * t);
  };
  dc.h_subgrad = [=](const Point& p) {
    const double dp = dist(m, p, pr);
    const double dq = dist(m, p, qr);
    if (t == 1.0 && (dp == 0.0 || dq == 0.0))
      std::cerr << "warning: rosenbrock: iterate hit a reference point, using the zero "
                   "contribution of the nonsmooth term\n";
    const double inner_sum = std::pow(dp, 2 * t) + std::pow(dq, t);
    return (2 * a) * dist_power_grad(m, p, pr, t) +
           (2 * b * inner_sum) * (dist_power_grad(m, p, pr, 2 * t) + dist_power_grad(m, p, qr, t));
  };
  // d^2 is 2-strongly convex on a Hadamard manifold; higher powers of d are
  // convex but flat at their center
  dc.sigma = t == 1.0 ? 2.0 + 4.0 * b : 0.0;
  dc.phi_inf = 0.0;

  out.bench.f_star = 0.0;
  if (out.coincident_refs)
    out.bench.minimizer_set = "sphere of radius " + std::to_string(out.radius_p) + " about p_ref";
  else if (tangent_config)
    out.bench.minimizer_set = "single point";
  else
    out.bench.minimizer_set = "intersection of two spheres";
  return out;
}

Eigen::MatrixXd academic_start(int n) {
  if (n < 2)
    throw ConstructionError("academic: n must be at least 2");
  Eigen::MatrixXd x = std::log(static_cast<double>(n)) * Eigen::MatrixXd::Identity(n, n);
  x(0, n - 1) += 1.0;
  x(n - 1, 0) += 1.0;
  return x;
}

double log_det(const Eigen::MatrixXd& x) {
  const Eigen::LLT<Eigen::MatrixXd> llt(x);
  if (llt.info() != Eigen::Success)
    throw DefinitenessError("log_det: matrix is not positive definite");
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Benchmark academic_problem(const AcademicParams& params) {
  const int n = params.n;
  const Manifold m = Manifold::spd(n);
  Point x0{academic_start(n)};
  try {
    check_point(m, x0);
  } catch (const Error&) {
    throw ConstructionError("academic: start matrix is not positive definite for n = " +
                            std::to_string(n));
  }

  Benchmark out;
  DCProblem& dc = out.problem;
  dc.manifold = m;
  dc.name = "spd-academic";
  dc.g = [](const Point& p) { return std::pow(log_det(p.coords), 4); };
  dc.h = [](const Point& p) { return std::pow(log_det(p.coords), 2); };
  // the Riemannian gradient of ln det is X itself
  dc.g_grad = [](const Point& p) {
    const double l = log_det(p.coords);
    return make_tangent(p, 4.0 * l * l * l * p.coords);
  };
  dc.h_subgrad = [](const Point& p) { return make_tangent(p, 2.0 * log_det(p.coords) * p.coords); };
  dc.sigma = 0.0;
  dc.phi_inf = -0.25;
  out.fixed_start = std::move(x0);
  out.f_star = -0.25;
  out.minimizer_set = "ln det X = +-1/sqrt(2)";
  return out;
}

ContrastiveInstance contrastive_problem(ContrastiveParams params, Rng& rng) {
  if (params.n < 1)
    throw ConstructionError("contrastive: n must be positive");
  const Manifold m = Manifold::spd(params.n);
  if (params.positives.empty() && params.m < 1)
    throw ConstructionError("contrastive: the positive set is empty");
  const Point center = random_point(m, rng);
  const auto perturb = [&](double radius_max) {
    const Tangent u = random_tangent(m, center, rng);
    const double radius = rng.uniform(0.0, radius_max);
    const double un = norm(m, u);
    return un > 0.0 ? exp_map(m, (radius / un) * u) : center;
  };
  if (params.positives.empty())
    for (int i = 0; i < params.m; ++i)
      params.positives.push_back(perturb(params.cluster_radius));
  if (params.negatives.empty())
    for (int j = 0; j < params.r; ++j)
      params.negatives.push_back(perturb(params.negative_radius));
  for (const Point& x : params.positives)
    check_point(m, x);
  for (const Point& y : params.negatives)
    check_point(m, y);
  if (params.positive_weights.empty())
    params.positive_weights.assign(params.positives.size(), 1.0);
  if (params.negative_weights.empty())
    params.negative_weights.assign(params.negatives.size(), 1.0);
  if (params.positive_weights.size() != params.positives.size() ||
      params.negative_weights.size() != params.negatives.size())
    throw ConstructionError("contrastive: one weight per reference matrix");
  double pos_total = 0.0;
  for (double w : params.positive_weights) {
    if (!(w > 0.0))
      throw ConstructionError("contrastive: weights must be positive");
    pos_total += w;
  }
  for (double w : params.negative_weights)
    if (!(w > 0.0))
      throw ConstructionError("contrastive: weights must be positive");
  params.m = static_cast<int>(params.positives.size());
  params.r = static_cast<int>(params.negatives.size());

  auto refs = std::make_shared<const ContrastiveParams>(params);
  const auto weighted_sq = [m](const std::vector<Point>& pts, const std::vector<double>& w,
                               const Point& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const double d = dist(m, p, pts[i]);
      s += w[i] * d * d;
    }
    return s;
  };
  // grad of d^2(., z) is -2 log_p z
  const auto weighted_grad = [m](const std::vector<Point>& pts, const std::vector<double>& w,
                                 const Point& p) {
    Tangent g = zero_tangent(m, p);
    for (std::size_t i = 0; i < pts.size(); ++i)
      g = g + (-2.0 * w[i]) * log_map(m, p, pts[i]);
    return g;
  };

  ContrastiveInstance out;
  DCProblem& dc = out.bench.problem;
  dc.manifold = m;
  dc.name = "spd-contrastive";
  dc.g = [=](const Point& p) { return weighted_sq(refs->positives, refs->positive_weights, p); };
  dc.h = [=](const Point& p) { return weighted_sq(refs->negatives, refs->negative_weights, p); };
  dc.g_grad = [=](const Point& p) {
    return weighted_grad(refs->positives, refs->positive_weights, p);
  };
  dc.h_subgrad = [=](const Point& p) {
    return weighted_grad(refs->negatives, refs->negative_weights, p);
  };
  dc.sigma = 2.0 * pos_total;
  out.params = std::move(params);
  return out;
}

Benchmark euclidean_quadratic_problem(const Eigen::VectorXd& z1, const Eigen::VectorXd& z2) {
  if (z1.size() != z2.size() || z1.size() == 0)
    throw ConstructionError("euclidean quadratic: centers must have the same positive size");
  const Manifold m = Manifold::euclidean(static_cast<int>(z1.size()));
  Benchmark out;
  DCProblem& dc = out.problem;
  dc.manifold = m;
  dc.name = "euclidean-quadratic";
  dc.g = [z1](const Point& p) { return (p.coords.col(0) - z1).squaredNorm(); };
  dc.h = [z2](const Point& p) { return 0.5 * (p.coords.col(0) - z2).squaredNorm(); };
  dc.g_grad = [z1](const Point& p) { return make_tangent(p, 2.0 * (p.coords.col(0) - z1)); };
  dc.h_subgrad = [z2](const Point& p) { return make_tangent(p, p.coords.col(0) - z2); };
  dc.sigma = 2.0;
  // phi(2 z1 - z2) = |z1 - z2|^2 - 2 |z1 - z2|^2
  dc.phi_inf = -(z1 - z2).squaredNorm();
  out.f_star = dc.phi_inf;
  out.minimizer_set = "single point 2 z1 - z2";
  return out;
}

} // namespace bdca
