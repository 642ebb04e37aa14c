#include "bdca/busemann_analysis.hpp"

#include <cmath>

namespace bdca {

OracleSchedule default_schedule(const Manifold& m) {
  OracleSchedule s;
  s.mode = std::holds_alternative<Hyperbolic>(m.kind()) ? OracleMode::difference
                                                       : OracleMode::extrapolated;
  return s;
}

OracleResult busemann_numeric(const Manifold& m, const BusemannRay& ray, const Point& p,
                              const OracleSchedule& schedule) {
  check_ray(m, ray);
  check_point(m, p);
  const std::vector<double>& ts = schedule.t_values;
  if (ts.empty())
    throw ValidationError("busemann_numeric: empty schedule");
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (!(ts[i] > 0.0) || (i > 0 && !(ts[i] > ts[i - 1])))
      throw ValidationError("busemann_numeric: t values must be positive and increasing");
  if (schedule.mode == OracleMode::extrapolated && ts.size() < 2)
    throw ValidationError("busemann_numeric: extrapolation needs two t values");
  const double raw_norm = norm(m, ray.dir);
  if (!(raw_norm > 0.0))
    throw ZeroDirectionError("busemann_numeric: direction is zero");
  // B_{q,v} = B_{q,v/|v|}, so rescaling the direction only changes which
  // arc lengths |v| t the schedule reaches
  const double scale = schedule.unit_speed ? 1.0 / raw_norm : 1.0;
  const BusemannRay walk{ray.base, scale * ray.dir};
  const double speed = scale * raw_norm;

  OracleResult out;
  double prev_excess = 0.0;
  double prev_len = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double len = speed * ts[i];
    const double d = far_distance(m, walk, p, ts[i]);
    if (!std::isfinite(d))
      throw OverflowError("busemann_numeric: distance overflowed at t = " + std::to_string(ts[i]));
    // d^2 - T^2 as (d - T)(d + T) to keep the cancellation in one place
    const double excess = (d - len) * (d + len);
    switch (schedule.mode) {
    case OracleMode::difference:
      out.sequence.push_back(d - len);
      break;
    case OracleMode::quotient:
      out.sequence.push_back(excess / (2.0 * len));
      break;
    case OracleMode::extrapolated:
      if (i > 0)
        out.sequence.push_back((excess - prev_excess) / (2.0 * (len - prev_len)));
      break;
    }
    prev_excess = excess;
    prev_len = len;
  }
  out.value = out.sequence.back();

  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < out.sequence.size(); ++i) {
    const double step = out.sequence[i] - out.sequence[i - 1];
    up = up && step >= -1e-12;
    down = down && step <= 1e-12;
  }
  out.monotone = up || down;
  return out;
}

OracleResult busemann_numeric(const Manifold& m, const BusemannRay& ray, const Point& p) {
  return busemann_numeric(m, ray, p, default_schedule(m));
}

SupportCheckReport support_check(const Manifold& m, const ScalarField& f,
                                 const TangentField& subgrad, double sigma, const Point& q,
                                 int samples, Rng& rng, double rel_slack) {
  check_point(m, q);
  if (sigma < 0.0)
    throw ValidationError("support_check: sigma must be nonnegative");
  const double fq = f(q);
  const Tangent s = subgrad(q);
  const double snorm = norm(m, s);
  std::optional<BusemannFunction> busemann;
  if (snorm > 0.0)
    busemann.emplace(m, BusemannRay{q, s});

  constexpr double kMaxRadius = 5.0;
  SupportCheckReport report;
  for (int i = 0; i < samples; ++i) {
    Point p = random_point(m, rng);
    const double d = dist(m, q, p);
    if (d > kMaxRadius)
      p = exp_map(m, (kMaxRadius / d) * log_map(m, q, p));
    const double dq = dist(m, p, q);
    const double rhs =
        fq - (busemann ? snorm * busemann->value(p) : 0.0) + 0.5 * sigma * dq * dq;
    const double fp = f(p);
    const double gap = rhs - fp;
    ++report.samples;
    if (gap > report.max_violation) {
      report.max_violation = gap;
      if (gap > 0.0)
        report.witness = p;
    }
    if (gap > rel_slack * (1.0 + std::abs(fp) + std::abs(rhs)))
      ++report.violations;
  }
  return report;
}

bool lipschitz_subgrad_bound_check(const Manifold& m, const Tangent& s, double lipschitz) {
  return norm(m, s) <= lipschitz + 1e-10;
}

double bregman_busemann(const Manifold& m, const ScalarField& psi, const TangentField& grad_psi,
                        const Point& p, const Point& q) {
  check_point(m, p);
  check_point(m, q);
  const Tangent g = grad_psi(q);
  const double gnorm = norm(m, g);
  const double base = psi(p) - psi(q);
  if (!(gnorm > 0.0))
    return base;
  return base + gnorm * BusemannFunction(m, BusemannRay{q, g}).value(p);
}

} // namespace bdca
