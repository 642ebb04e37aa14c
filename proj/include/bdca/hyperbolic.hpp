#ifndef BDCA_HYPERBOLIC_HPP
#define BDCA_HYPERBOLIC_HPP

// Kernels for the kappa-hyperbolic space form in the hyperboloid model
//   H^n_k = { p in R^{n+1} : <p,p> = -1/k, p_{n+1} > 0 },
// with the Lorentzian form <x,y> = x^T J y, J = diag(1,...,1,-1).
// Everything is templated on the scalar type; the library instantiates
// double only.

#include "bdca/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <string>

namespace bdca::hyperbolic {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Cosh/sinh arguments above this overflow-guard threshold are refused.
inline constexpr double kMaxExpArgument = 350.0;

template <typename DerivedX, typename DerivedY>
typename DerivedX::Scalar lorentz_inner(const Eigen::MatrixBase<DerivedX>& x,
                                        const Eigen::MatrixBase<DerivedY>& y) {
  const Eigen::Index n = x.size() - 1;
  if (y.size() != x.size())
    throw ValidationError("lorentz_inner: dimension mismatch");
  return x.head(n).dot(y.head(n)) - x(n) * y(n);
}

/// J x: flips the sign of the last coordinate.
template <typename Derived>
Vec<typename Derived::Scalar> apply_j(const Eigen::MatrixBase<Derived>& x) {
  Vec<typename Derived::Scalar> out = x;
  out(out.size() - 1) = -out(out.size() - 1);
  return out;
}

/// Proj_p x = x + k <p,x> p.
template <typename Scalar, typename DerivedP, typename DerivedX>
Vec<Scalar> project_tangent(Scalar kappa, const Eigen::MatrixBase<DerivedP>& p,
                            const Eigen::MatrixBase<DerivedX>& x) {
  if (x.size() != p.size())
    throw ValidationError("project_tangent: dimension mismatch");
  return x + kappa * lorentz_inner(p, x) * p;
}

/// arcosh(x) = ln(x + sqrt(x^2 - 1)), argument clamped to >= 1 and switched
/// to ln(2x) for x > 1e8 where x^2 would lose the subtraction.
template <typename Scalar> Scalar arcosh(Scalar x) {
  using std::log;
  using std::sqrt;
  if (!(x > Scalar(1)))
    return Scalar(0);
  if (x > Scalar(1e8))
    return log(Scalar(2) * x);
  return log(x + sqrt(x * x - Scalar(1)));
}

/// Lift the first n coordinates back onto the upper sheet.
template <typename Scalar, typename Derived>
Vec<Scalar> renormalize(Scalar kappa, const Eigen::MatrixBase<Derived>& p) {
  using std::sqrt;
  Vec<Scalar> out = p;
  const Eigen::Index n = p.size() - 1;
  out(n) = sqrt(Scalar(1) / kappa + p.head(n).squaredNorm());
  return out;
}

/// -k <p,q> - 1 computed without cancellation for nearby points:
/// for points on the shell, <p-q,p-q> = -2/k - 2<p,q>.
template <typename Scalar, typename DerivedP, typename DerivedQ>
Scalar cosh_dist_minus_one(Scalar kappa, const Eigen::MatrixBase<DerivedP>& p,
                           const Eigen::MatrixBase<DerivedQ>& q) {
  const Scalar c = -kappa * lorentz_inner(p, q);
  if (c > Scalar(2))
    return c - Scalar(1);
  const Vec<Scalar> u = p - q;
  const Scalar chord2 = lorentz_inner(u, u);
  return chord2 > Scalar(0) ? kappa * chord2 / Scalar(2) : Scalar(0);
}

/// d_k(p,q) = arcosh(-k <p,q>) / sqrt(k).
template <typename Scalar, typename DerivedP, typename DerivedQ>
Scalar dist(Scalar kappa, const Eigen::MatrixBase<DerivedP>& p,
            const Eigen::MatrixBase<DerivedQ>& q) {
  using std::asinh;
  using std::sqrt;
  const Scalar c = -kappa * lorentz_inner(p, q);
  if (c > Scalar(2))
    return arcosh(c) / sqrt(kappa);
  // cosh d - 1 = 2 sinh^2(d/2) keeps full relative accuracy near d = 0
  const Scalar cm1 = cosh_dist_minus_one(kappa, p, q);
  return Scalar(2) * asinh(sqrt(cm1 / Scalar(2))) / sqrt(kappa);
}

template <typename Scalar, typename DerivedQ, typename DerivedV>
Vec<Scalar> exp(Scalar kappa, const Eigen::MatrixBase<DerivedQ>& q,
                const Eigen::MatrixBase<DerivedV>& v) {
  using std::cosh;
  using std::sinh;
  using std::sqrt;
  const Scalar vv = lorentz_inner(v, v);
  const Scalar norm = vv > Scalar(0) ? sqrt(vv) : Scalar(0);
  if (norm == Scalar(0))
    return q;
  const Scalar theta = sqrt(kappa) * norm;
  if (theta > Scalar(kMaxExpArgument))
    throw OverflowError("hyperbolic exp: sqrt(kappa)*|v| exceeds overflow guard");
  const Vec<Scalar> out = cosh(theta) * q + (sinh(theta) / theta) * v;
  return renormalize(kappa, out);
}

template <typename Scalar, typename DerivedQ, typename DerivedP>
Vec<Scalar> log(Scalar kappa, const Eigen::MatrixBase<DerivedQ>& q,
                const Eigen::MatrixBase<DerivedP>& p) {
  using std::sinh;
  using std::sqrt;
  const Scalar d = dist(kappa, q, p);
  if (d == Scalar(0))
    return Vec<Scalar>::Zero(q.size());
  // Proj_q p = p - c q = (p - q) - (c - 1) q
  const Scalar cm1 = cosh_dist_minus_one(kappa, q, p);
  const Vec<Scalar> w = (p - q) - cm1 * q;
  const Scalar w_norm = sinh(sqrt(kappa) * d) / sqrt(kappa);
  return project_tangent(kappa, q, (d / w_norm) * w);
}

/// Riemannian gradient from the Euclidean one: Proj_p J f'(p).
template <typename Scalar, typename DerivedP, typename DerivedG>
Vec<Scalar> egrad_to_rgrad(Scalar kappa, const Eigen::MatrixBase<DerivedP>& p,
                           const Eigen::MatrixBase<DerivedG>& egrad) {
  if (egrad.size() != p.size())
    throw ValidationError("egrad_to_rgrad: dimension mismatch");
  return project_tangent(kappa, p, apply_j(egrad));
}

/// Busemann ray with its horospherical normal w = k q + sqrt(k) v/|v|
/// precomputed. A zero direction keeps only the base point.
template <typename Scalar> struct PreparedRay {
  Scalar kappa;
  Vec<Scalar> base;
  Vec<Scalar> w;
  bool zero_direction = false;
};

template <typename Scalar, typename DerivedQ, typename DerivedV>
PreparedRay<Scalar> prepare_ray(Scalar kappa, const Eigen::MatrixBase<DerivedQ>& q,
                                const Eigen::MatrixBase<DerivedV>& v) {
  using std::sqrt;
  PreparedRay<Scalar> ray{kappa, q, Vec<Scalar>::Zero(q.size()), false};
  const Scalar vv = lorentz_inner(v, v);
  if (!(vv > Scalar(0))) {
    ray.zero_direction = true;
    return ray;
  }
  ray.w = kappa * q + (sqrt(kappa) / sqrt(vv)) * v;
  return ray;
}

/// B_{q,v}(p) = ln(-<p, k q + sqrt(k) v/|v|>) / sqrt(k); d(q,p) for v = 0.
template <typename Scalar, typename DerivedP>
Scalar busemann(const PreparedRay<Scalar>& ray, const Eigen::MatrixBase<DerivedP>& p) {
  using std::abs;
  using std::log;
  using std::sqrt;
  if (ray.zero_direction)
    return dist(ray.kappa, ray.base, p);
  Scalar arg = -lorentz_inner(p, ray.w);
  if (!(arg > Scalar(0))) {
    const Scalar slack = Scalar(64) * Eigen::NumTraits<Scalar>::epsilon() *
                         (Scalar(1) + p.norm() * ray.w.norm());
    if (arg < -slack)
      throw NumericalDomainError("hyperbolic busemann: logarithm argument is negative");
    arg = Eigen::NumTraits<Scalar>::epsilon();
  }
  return log(arg) / sqrt(ray.kappa);
}

template <typename Scalar, typename DerivedP>
Vec<Scalar> busemann_grad(const PreparedRay<Scalar>& ray,
                          const Eigen::MatrixBase<DerivedP>& p) {
  using std::sqrt;
  if (ray.zero_direction)
    throw UndefinedGradientError("hyperbolic busemann_grad: zero direction");
  const Scalar pw = lorentz_inner(p, ray.w);
  const Vec<Scalar> g = (ray.w + ray.kappa * pw * p) / (sqrt(ray.kappa) * pw);
  return project_tangent(ray.kappa, p, g);
}

/// The apex (0,...,0,1/sqrt(k)).
template <typename Scalar> Vec<Scalar> apex(int n, Scalar kappa) {
  using std::sqrt;
  Vec<Scalar> p = Vec<Scalar>::Zero(n + 1);
  p(n) = Scalar(1) / sqrt(kappa);
  return p;
}

} // namespace bdca::hyperbolic

#endif // BDCA_HYPERBOLIC_HPP
