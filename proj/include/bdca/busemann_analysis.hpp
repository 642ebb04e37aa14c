#ifndef BDCA_BUSEMANN_ANALYSIS_HPP
#define BDCA_BUSEMANN_ANALYSIS_HPP

#include "bdca/manifold.hpp"

#include <limits>
#include <optional>
#include <vector>

namespace bdca {

/// How the limit t -> infinity is approximated.
///
/// With T = |v| t the arc length reached along the ray:
/// difference:   d(p, exp_q(tv)) - T. Nonincreasing in t; converges
///               exponentially on H^n and P(n), only like 1/t on flat spaces.
/// quotient:     (d^2 - T^2) / (2T). Carries an exact B^2/(2T)
///               bias term, so it converges like 1/t everywhere.
/// extrapolated: quotient with the 1/t term eliminated between consecutive
///               schedule entries, i.e. (d_i^2 - T_i^2 - d_{i-1}^2 + T_{i-1}^2)
///               / (2 (T_i - T_{i-1})). Exact on flat spaces, and on
///               P(n) it removes the 1/T term contributed by the flats.
enum class OracleMode { difference, quotient, extrapolated };

struct OracleSchedule {
  std::vector<double> t_values{5.0, 10.0, 20.0, 30.0};
  OracleMode mode = OracleMode::difference;
  /// Walk exp_q(t v/|v|) instead of exp_q(t v), making t itself the arc length.
  bool unit_speed = true;
};

/// Difference mode on H^n, extrapolated mode on the flat geometries and P(n).
OracleSchedule default_schedule(const Manifold& m);

struct OracleResult {
  /// Estimate at the largest t.
  double value = 0.0;
  /// One estimate per schedule entry (extrapolated mode: from the second on).
  std::vector<double> sequence;
  /// The sequence is monotone up to 1e-12 rounding slack.
  bool monotone = true;
};

/// d(p, exp_q(t v)) evaluated without forming the far point in double
/// precision: log-domain arcosh on H^n, 120-digit arithmetic on P(n).
double far_distance(const Manifold& m, const BusemannRay& ray, const Point& p, double t);

/// Numerical-limit Busemann value. Requires a nonzero direction.
OracleResult busemann_numeric(const Manifold& m, const BusemannRay& ray, const Point& p,
                              const OracleSchedule& schedule);
OracleResult busemann_numeric(const Manifold& m, const BusemannRay& ray, const Point& p);

struct SupportCheckReport {
  int samples = 0;
  int violations = 0;
  /// Largest (f(q) - |s| B_{q,s}(p) + sigma/2 d^2(p,q)) - f(p); <= 0 on pass.
  double max_violation = -std::numeric_limits<double>::infinity();
  std::optional<Point> witness;

  bool passed() const { return violations == 0; }
};

/// Samples p and tests f(p) >= f(q) - |s| B_{q,s}(p) + (sigma/2) d^2(p,q)
/// with s = subgrad(q). A sample counts as a violation when the gap exceeds
/// rel_slack * (1 + |f(p)| + |rhs|). Samples come from random_point, pulled
/// back along the geodesic from q to distance 5 when farther.
SupportCheckReport support_check(const Manifold& m, const ScalarField& f,
                                 const TangentField& subgrad, double sigma, const Point& q,
                                 int samples, Rng& rng, double rel_slack = 1e-10);

/// |s| <= L + 1e-10 for a subgradient s of an L-Lipschitz function.
bool lipschitz_subgrad_bound_check(const Manifold& m, const Tangent& s, double lipschitz);

/// D(p,q) = psi(p) - psi(q) + |grad psi(q)| B_{q, grad psi(q)}(p). The
/// Busemann term is 0 when grad psi(q) = 0.
double bregman_busemann(const Manifold& m, const ScalarField& psi, const TangentField& grad_psi,
                        const Point& p, const Point& q);

} // namespace bdca

#endif // BDCA_BUSEMANN_ANALYSIS_HPP
