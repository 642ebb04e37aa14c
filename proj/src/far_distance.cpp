// Distances to far points of a geodesic ray, d(p, exp_q(t v)) for t up to
// a few tens. Kept in its own translation unit because the P(n) path
// instantiates the matrix kernels at 120-digit precision.

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <Eigen/Core>

#include <limits>

using Wide = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>,
                                           boost::multiprecision::et_off>;

// Boost's own Eigen adaptor (boost/multiprecision/eigen.hpp) predates the
// NumTraits members Eigen 3.4 asks for, so the traits are spelled out here.
namespace Eigen {
template <> struct NumTraits<Wide> : GenericNumTraits<Wide> {
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 16,
    MulCost = 32
  };
  typedef Wide Real;
  typedef Wide NonInteger;
  typedef Wide Literal;
  typedef Wide Nested;
  static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
  static Real dummy_precision() { return 1000 * epsilon(); }
  static Real highest() { return (std::numeric_limits<Real>::max)(); }
  static Real lowest() { return std::numeric_limits<Real>::lowest(); }
  static Real infinity() { return std::numeric_limits<Real>::infinity(); }
  static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
  static int digits10() { return std::numeric_limits<Real>::digits10; }
};
} // namespace Eigen

#include "bdca/busemann_analysis.hpp"
#include "bdca/hyperbolic.hpp"
#include "bdca/spd.hpp"

#include <cmath>

namespace bdca {

namespace {

// Below this geodesic parameter the ordinary double-precision path is exact
// enough and avoids the log-domain special cases near c = 1.
constexpr double kLogDomainThreshold = 20.0;

double hyperbolic_far_distance(const Hyperbolic& h, const BusemannRay& ray, const Point& p,
                               double t) {
  const Eigen::VectorXd q = ray.base.coords.col(0);
  const Eigen::VectorXd v = ray.dir.coords.col(0);
  const Eigen::VectorXd x = p.coords.col(0);
  const double sk = std::sqrt(h.kappa);
  const double vnorm = std::sqrt(std::max(0.0, hyperbolic::lorentz_inner(v, v)));
  const double theta = sk * vnorm * t;
  if (theta <= kLogDomainThreshold) {
    const Eigen::VectorXd far = hyperbolic::exp(h.kappa, q, Eigen::VectorXd(t * v));
    return hyperbolic::dist(h.kappa, x, far);
  }
  // -k <p, exp_q(tv)> = a cosh(theta) + b sinh(theta)
  //                   = e^theta ((a+b)/2 + e^{-2 theta} (a-b)/2)
  const double a = -h.kappa * hyperbolic::lorentz_inner(x, q);
  const double b = -sk * hyperbolic::lorentz_inner(x, v) / vnorm;
  const double e2 = std::exp(-2.0 * theta);
  const double bracket = 0.5 * (a + b) + 0.5 * e2 * (a - b);
  if (!(bracket > 0.0))
    throw NumericalDomainError("far_distance: horospherical coordinate is not positive");
  const double log_c = theta + std::log(bracket);
  // arcosh(c) = ln c + ln(1 + sqrt(1 - c^{-2}))
  return (log_c + std::log1p(std::sqrt(-std::expm1(-2.0 * log_c)))) / sk;
}

double spd_far_distance(const BusemannRay& ray, const Point& p, double t) {
  using WideMat = spd::Mat<Wide>;
  using WideVec = spd::Vec<Wide>;
  const WideMat y = ray.base.coords.cast<Wide>();
  const WideMat v = ray.dir.coords.cast<Wide>();
  const WideMat x = p.coords.cast<Wide>();
  // By affine invariance d(X, exp_Y(tV)) = d(U^T M U, Exp(t Lambda)) with
  // M = Y^{-1/2} X Y^{-1/2} and Y^{-1/2} V Y^{-1/2} = U Lambda U^T.
  const spd::SqrtPair<Wide> roots = spd::sqrt_pair(y);
  const spd::SymEig<Wide> dir = spd::sym_eig(spd::symmetrize(roots.inv_sqrt * v * roots.inv_sqrt));
  const WideMat m = spd::symmetrize(roots.inv_sqrt * x * roots.inv_sqrt);
  WideMat c = dir.vectors.transpose() * m * dir.vectors;
  WideVec scale(dir.values.size());
  for (Eigen::Index i = 0; i < scale.size(); ++i)
    scale(i) = boost::multiprecision::exp(-Wide(t) * dir.values(i) / 2);
  c = spd::symmetrize(scale.asDiagonal() * c * scale.asDiagonal());
  const WideVec mu = spd::sym_eig(c).values;
  Wide s(0);
  for (Eigen::Index i = 0; i < mu.size(); ++i) {
    if (!(mu(i) > 0))
      throw DefinitenessError("far_distance: congruence lost definiteness");
    const Wide l = boost::multiprecision::log(mu(i));
    s += l * l;
  }
  return static_cast<double>(boost::multiprecision::sqrt(s));
}

} // namespace

double far_distance(const Manifold& m, const BusemannRay& ray, const Point& p, double t) {
  check_ray(m, ray);
  check_point(m, p);
  if (const auto* h = std::get_if<Hyperbolic>(&m.kind()))
    return hyperbolic_far_distance(*h, ray, p, t);
  if (std::holds_alternative<Spd>(m.kind()))
    return spd_far_distance(ray, p, t);
  return dist(m, p, exp_map(m, t * ray.dir));
}

} // namespace bdca
