#ifndef BDCA_MANIFOLD_HPP
#define BDCA_MANIFOLD_HPP

#include "bdca/errors.hpp"
#include "bdca/random.hpp"

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace bdca {

struct Euclidean {
  int n;
};
/// Positive orthant with the Dikin metric G(q) = diag(q_i^{-2}).
struct Dikin {
  int n;
};
/// Hyperboloid model of H^n_kappa, points in R^{n+1}.
struct Hyperbolic {
  int n;
  double kappa;
};
/// Symmetric positive definite n x n matrices, affine-invariant metric.
struct Spd {
  int n;
};

/// A named geometry. Cheap to copy; all operations on it are pure.
class Manifold {
public:
  using Kind = std::variant<Euclidean, Dikin, Hyperbolic, Spd>;

  static Manifold euclidean(int n);
  static Manifold dikin(int n);
  static Manifold hyperbolic(int n, double kappa = 1.0);
  static Manifold spd(int n);

  const Kind& kind() const { return kind_; }
  template <typename Visitor> decltype(auto) visit(Visitor&& vis) const {
    return std::visit(std::forward<Visitor>(vis), kind_);
  }

  std::string name() const;
  /// Intrinsic dimension.
  int dimension() const;
  /// Shape of the coordinate representation of points and tangents.
  Eigen::Index rows() const;
  Eigen::Index cols() const;
  /// Zero sectional curvature (Euclidean, Dikin).
  bool is_flat() const;

private:
  explicit Manifold(Kind kind) : kind_(kind) {}
  Kind kind_;
};

/// Coordinates of a point: a column vector, or a symmetric matrix on P(n).
struct Point {
  Eigen::MatrixXd coords;
};

/// Tangent vector together with the point it is attached to.
struct Tangent {
  Eigen::MatrixXd coords;
  Point base;
};

/// Base point q and direction v (zero allowed) defining B_{q,v}.
struct BusemannRay {
  Point base;
  Tangent dir;
};

using ScalarField = std::function<double(const Point&)>;
using TangentField = std::function<Tangent(const Point&)>;

inline constexpr double kValidationTol = 1e-8;
inline constexpr double kSymmetryTol = 1e-10;

// Validation. Every public operation below runs these once on entry.
void check_point(const Manifold& m, const Point& p);
void check_tangent(const Manifold& m, const Tangent& v);
void check_ray(const Manifold& m, const BusemannRay& ray);

Tangent zero_tangent(const Manifold& m, const Point& p);
/// Orthogonal projection of an ambient array onto T_p (identity on the flat
/// geometries, symmetrization on P(n)).
Tangent project_tangent(const Manifold& m, const Point& p, const Eigen::MatrixXd& ambient);

double inner(const Manifold& m, const Tangent& u, const Tangent& v);
double norm(const Manifold& m, const Tangent& v);
Point exp_map(const Manifold& m, const Tangent& v);
Tangent log_map(const Manifold& m, const Point& p, const Point& q);
double dist(const Manifold& m, const Point& p, const Point& q);

/// Riemannian gradient from the Euclidean derivative f'(p).
Tangent egrad_to_rgrad(const Manifold& m, const Point& p, const Eigen::MatrixXd& egrad);

Tangent operator+(const Tangent& a, const Tangent& b);
Tangent operator-(const Tangent& a, const Tangent& b);
Tangent operator*(double s, const Tangent& a);
Tangent operator-(const Tangent& a);

/// Busemann function B_{q,v} with its per-geometry precomputation (the
/// horospherical normal on H^n, the spectral split on P(n)) done once.
class BusemannFunction {
public:
  BusemannFunction(const Manifold& m, const BusemannRay& ray);
  ~BusemannFunction();
  BusemannFunction(BusemannFunction&&) noexcept;
  BusemannFunction& operator=(BusemannFunction&&) noexcept;

  double value(const Point& p) const;
  /// Unit-norm gradient. For a zero direction, the gradient of d(q, .),
  /// refused at q itself.
  Tangent grad(const Point& p) const;

  const BusemannRay& ray() const { return ray_; }
  bool zero_direction() const { return zero_direction_; }
  /// ||v|| at the base point.
  double direction_norm() const { return dir_norm_; }

private:
  struct Impl;
  Manifold manifold_;
  BusemannRay ray_;
  double dir_norm_;
  bool zero_direction_;
  std::unique_ptr<Impl> impl_;
};

double busemann_value(const Manifold& m, const BusemannRay& ray, const Point& p);
Tangent busemann_grad(const Manifold& m, const BusemannRay& ray, const Point& p);

/// p -> <s, log_q p>_q for a fixed s in T_q, with its Riemannian gradient.
/// This is the linear model of h used by the classical DC subproblem.
class LogPairing {
public:
  LogPairing(const Manifold& m, const Tangent& s);
  ~LogPairing();
  LogPairing(LogPairing&&) noexcept;
  LogPairing& operator=(LogPairing&&) noexcept;

  double value(const Point& p) const;
  Tangent grad(const Point& p) const;

private:
  struct Impl;
  Manifold manifold_;
  Tangent s_;
  std::unique_ptr<Impl> impl_;
};

/// Orthonormal basis of T_p: coordinate directions projected onto the
/// tangent space, then Gram-Schmidt under the metric at p.
std::vector<Tangent> tangent_basis(const Manifold& m, const Point& p);

inline constexpr double kDefaultFdStep = 1e-6;

/// Central differences (f(exp_p(h e_i)) - f(exp_p(-h e_i)))/(2h) along an
/// orthonormal basis of T_p. The step is a Riemannian length.
Tangent fd_riemannian_grad(const Manifold& m, const ScalarField& f, const Point& p,
                           double h = kDefaultFdStep);

/// Seeded sampling. Euclidean: standard normal coordinates. Dikin:
/// exp(u_i), u_i ~ U[-1.5,1.5]. Hyperbolic: exp at the apex of a normal
/// direction rescaled to length U[0,3]/sqrt(kappa). SPD: Q diag(e^u) Q^T, Q from the QR
/// factorization of a normal matrix, u ~ U[-1.5,1.5]^n.
Point random_point(const Manifold& m, Rng& rng);
/// Standard normal coordinates in a metric-orthonormal frame of T_p.
Tangent random_tangent(const Manifold& m, const Point& p, Rng& rng);

Point make_point(const Eigen::VectorXd& v);
Tangent make_tangent(const Point& base, const Eigen::MatrixXd& coords);

} // namespace bdca

#endif // BDCA_MANIFOLD_HPP
