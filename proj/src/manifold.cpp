#include "bdca/manifold.hpp"

#include "bdca/hyperbolic.hpp"
#include "bdca/spd.hpp"

#include <cmath>
#include <sstream>

namespace bdca {

namespace {

template <class... Ts> struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts> Overloaded(Ts...) -> Overloaded<Ts...>;

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

Vec col(const Eigen::MatrixXd& m) { return m.col(0); }

void require_shape(const Manifold& m, const Eigen::MatrixXd& a, const char* what) {
  if (a.rows() != m.rows() || a.cols() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a " << m.rows() << "x" << m.cols() << " array on " << m.name()
       << ", got " << a.rows() << "x" << a.cols();
    throw ValidationError(os.str());
  }
  if (!a.allFinite())
    throw ValidationError(std::string(what) + ": non-finite coordinates");
}

void require_finite_result(const Eigen::MatrixXd& a, const char* what) {
  if (!a.allFinite())
    throw OverflowError(std::string(what) + ": result is not finite");
}

bool symmetric(const Mat& a, double tol) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

void require_same_base(const Tangent& a, const Tangent& b, const char* what) {
  if (a.base.coords.rows() != b.base.coords.rows() ||
      a.base.coords.cols() != b.base.coords.cols())
    throw ValidationError(std::string(what) + ": tangents have different shapes");
  const double scale = 1.0 + a.base.coords.cwiseAbs().maxCoeff();
  if ((a.base.coords - b.base.coords).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw ValidationError(std::string(what) + ": tangents live at different base points");
}

/// Inner product at a fixed base point, with the per-point factorization
/// done once.
std::function<double(const Mat&, const Mat&)> metric_at(const Manifold& m, const Point& p) {
  return m.visit(Overloaded{
      [](const Euclidean&) -> std::function<double(const Mat&, const Mat&)> {
        return [](const Mat& u, const Mat& v) { return u.col(0).dot(v.col(0)); };
      },
      [&](const Dikin&) -> std::function<double(const Mat&, const Mat&)> {
        const Vec w = p.coords.col(0).array().square().inverse();
        return [w](const Mat& u, const Mat& v) {
          return (u.col(0).array() * v.col(0).array() * w.array()).sum();
        };
      },
      [](const Hyperbolic&) -> std::function<double(const Mat&, const Mat&)> {
        return [](const Mat& u, const Mat& v) {
          return hyperbolic::lorentz_inner(u.col(0), v.col(0));
        };
      },
      [&](const Spd&) -> std::function<double(const Mat&, const Mat&)> {
        const Mat l = spd::chol(p.coords);
        return [l](const Mat& u, const Mat& v) {
          const auto tri = l.triangularView<Eigen::Lower>();
          const Mat lu = tri.solve(tri.solve(u).transpose());
          const Mat lv = tri.solve(tri.solve(v).transpose());
          return lu.cwiseProduct(lv).sum();
        };
      },
  });
}

/// theta/sinh(theta) and its derivative with respect to cosh(theta).
struct DistanceRatio {
  double f;
  double df_dc;
};

DistanceRatio distance_ratio(double theta) {
  if (theta < 1e-3) {
    const double t2 = theta * theta;
    return {1.0 - t2 / 6.0, -1.0 / 3.0 + 2.0 * t2 / 15.0};
  }
  if (theta < 1.0) {
    const double sh = std::sinh(theta);
    const double ch = std::cosh(theta);
    return {theta / sh, (sh - theta * ch) / (sh * sh * sh)};
  }
  // exact, written with x = e^{-2 theta} so that large theta cannot overflow
  const double x = std::exp(-2.0 * theta);
  const double e1 = std::exp(-theta);
  const double f = 2.0 * theta * e1 / (1.0 - x);
  const double g = 4.0 * x * ((1.0 - x) - theta * (1.0 + x)) / std::pow(1.0 - x, 3);
  return {f, g};
}

} // namespace

// ----------------------------------------------------------------------------
// Manifold

Manifold Manifold::euclidean(int n) {
  if (n < 1)
    throw ValidationError("euclidean: n must be >= 1");
  return Manifold(Euclidean{n});
}

Manifold Manifold::dikin(int n) {
  if (n < 1)
    throw ValidationError("dikin: n must be >= 1");
  return Manifold(Dikin{n});
}

Manifold Manifold::hyperbolic(int n, double kappa) {
  if (n < 1)
    throw ValidationError("hyperbolic: n must be >= 1");
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw ValidationError("hyperbolic: kappa must be positive");
  return Manifold(Hyperbolic{n, kappa});
}

Manifold Manifold::spd(int n) {
  if (n < 1)
    throw ValidationError("spd: n must be >= 1");
  return Manifold(Spd{n});
}

std::string Manifold::name() const {
  std::ostringstream os;
  visit(Overloaded{
      [&](const Euclidean& e) { os << "euclidean(" << e.n << ")"; },
      [&](const Dikin& d) { os << "dikin(" << d.n << ")"; },
      [&](const Hyperbolic& h) { os << "hyperbolic(" << h.n << ", kappa=" << h.kappa << ")"; },
      [&](const Spd& s) { os << "spd(" << s.n << ")"; },
  });
  return os.str();
}

int Manifold::dimension() const {
  return visit(Overloaded{
      [](const Euclidean& e) { return e.n; },
      [](const Dikin& d) { return d.n; },
      [](const Hyperbolic& h) { return h.n; },
      [](const Spd& s) { return s.n * (s.n + 1) / 2; },
  });
}

Eigen::Index Manifold::rows() const {
  return visit(Overloaded{
      [](const Euclidean& e) -> Eigen::Index { return e.n; },
      [](const Dikin& d) -> Eigen::Index { return d.n; },
      [](const Hyperbolic& h) -> Eigen::Index { return h.n + 1; },
      [](const Spd& s) -> Eigen::Index { return s.n; },
  });
}

Eigen::Index Manifold::cols() const {
  return std::holds_alternative<Spd>(kind_) ? std::get<Spd>(kind_).n : 1;
}

bool Manifold::is_flat() const {
  return std::holds_alternative<Euclidean>(kind_) || std::holds_alternative<Dikin>(kind_);
}

// ----------------------------------------------------------------------------
// Validation

void check_point(const Manifold& m, const Point& p) {
  require_shape(m, p.coords, "point");
  m.visit(Overloaded{
      [](const Euclidean&) {},
      [&](const Dikin&) {
        if ((p.coords.array() <= 0.0).any())
          throw ValidationError("dikin point: coordinates must be strictly positive");
      },
      [&](const Hyperbolic& h) {
        const Vec x = col(p.coords);
        if (!(x(h.n) > 0.0))
          throw ValidationError("hyperbolic point: last coordinate must be positive");
        const double shell = hyperbolic::lorentz_inner(x, x) + 1.0 / h.kappa;
        const double scale = std::max(1.0 / h.kappa, x.squaredNorm());
        if (std::abs(shell) > kValidationTol * scale)
          throw ValidationError("hyperbolic point: Lorentz constraint <p,p> = -1/kappa violated");
      },
      [&](const Spd&) {
        if (!symmetric(p.coords, kSymmetryTol))
          throw ValidationError("spd point: matrix is not symmetric");
        Eigen::LLT<Mat> llt(spd::symmetrize(p.coords));
        if (llt.info() != Eigen::Success)
          throw ValidationError("spd point: matrix is not positive definite");
      },
  });
}

void check_tangent(const Manifold& m, const Tangent& v) {
  check_point(m, v.base);
  require_shape(m, v.coords, "tangent");
  m.visit(Overloaded{
      [](const Euclidean&) {},
      [](const Dikin&) {},
      [&](const Hyperbolic&) {
        const Vec p = col(v.base.coords);
        const Vec t = col(v.coords);
        const double tangency = hyperbolic::lorentz_inner(p, t);
        if (std::abs(tangency) > kValidationTol * (1.0 + p.norm() * t.norm()))
          throw ValidationError("hyperbolic tangent: <p,v> = 0 violated");
      },
      [&](const Spd&) {
        if (!symmetric(v.coords, kSymmetryTol))
          throw ValidationError("spd tangent: matrix is not symmetric");
      },
  });
}

void check_ray(const Manifold& m, const BusemannRay& ray) {
  check_point(m, ray.base);
  check_tangent(m, ray.dir);
  require_same_base(Tangent{ray.dir.coords, ray.base}, ray.dir, "busemann ray");
}

// ----------------------------------------------------------------------------
// Tangent algebra

Tangent zero_tangent(const Manifold& m, const Point& p) {
  check_point(m, p);
  return {Mat::Zero(p.coords.rows(), p.coords.cols()), p};
}

Tangent project_tangent(const Manifold& m, const Point& p, const Eigen::MatrixXd& ambient) {
  check_point(m, p);
  require_shape(m, ambient, "project_tangent");
  return m.visit(Overloaded{
      [&](const Hyperbolic& h) -> Tangent {
        return {hyperbolic::project_tangent(h.kappa, col(p.coords), col(ambient)), p};
      },
      [&](const Spd&) -> Tangent { return {spd::symmetrize(ambient), p}; },
      [&](const auto&) -> Tangent { return {ambient, p}; },
  });
}

Tangent operator+(const Tangent& a, const Tangent& b) {
  require_same_base(a, b, "tangent +");
  return {a.coords + b.coords, a.base};
}

Tangent operator-(const Tangent& a, const Tangent& b) {
  require_same_base(a, b, "tangent -");
  return {a.coords - b.coords, a.base};
}

Tangent operator*(double s, const Tangent& a) { return {s * a.coords, a.base}; }

Tangent operator-(const Tangent& a) { return {-a.coords, a.base}; }

double inner(const Manifold& m, const Tangent& u, const Tangent& v) {
  check_tangent(m, u);
  check_tangent(m, v);
  require_same_base(u, v, "inner");
  return metric_at(m, u.base)(u.coords, v.coords);
}

double norm(const Manifold& m, const Tangent& v) {
  check_tangent(m, v);
  return std::sqrt(std::max(0.0, metric_at(m, v.base)(v.coords, v.coords)));
}

// ----------------------------------------------------------------------------
// exp / log / dist

Point exp_map(const Manifold& m, const Tangent& v) {
  check_tangent(m, v);
  const Point& p = v.base;
  Point out = m.visit(Overloaded{
      [&](const Euclidean&) -> Point { return {p.coords + v.coords}; },
      [&](const Dikin&) -> Point {
        return {(p.coords.array() * (v.coords.array() / p.coords.array()).exp()).matrix()};
      },
      [&](const Hyperbolic& h) -> Point {
        return {hyperbolic::exp(h.kappa, col(p.coords), col(v.coords))};
      },
      [&](const Spd&) -> Point { return {spd::exp(p.coords, v.coords)}; },
  });
  require_finite_result(out.coords, "exp_map");
  return out;
}

Tangent log_map(const Manifold& m, const Point& p, const Point& q) {
  check_point(m, p);
  check_point(m, q);
  return m.visit(Overloaded{
      [&](const Euclidean&) -> Tangent { return {q.coords - p.coords, p}; },
      [&](const Dikin&) -> Tangent {
        return {(p.coords.array() * (q.coords.array() / p.coords.array()).log()).matrix(), p};
      },
      [&](const Hyperbolic& h) -> Tangent {
        return {hyperbolic::log(h.kappa, col(p.coords), col(q.coords)), p};
      },
      [&](const Spd&) -> Tangent { return {spd::log(p.coords, q.coords), p}; },
  });
}

double dist(const Manifold& m, const Point& p, const Point& q) {
  check_point(m, p);
  check_point(m, q);
  return m.visit(Overloaded{
      [&](const Euclidean&) { return (q.coords - p.coords).norm(); },
      [&](const Dikin&) { return (q.coords.array() / p.coords.array()).log().matrix().norm(); },
      [&](const Hyperbolic& h) { return hyperbolic::dist(h.kappa, col(p.coords), col(q.coords)); },
      [&](const Spd&) { return spd::dist(p.coords, q.coords); },
  });
}

Tangent egrad_to_rgrad(const Manifold& m, const Point& p, const Eigen::MatrixXd& egrad) {
  check_point(m, p);
  require_shape(m, egrad, "egrad_to_rgrad");
  return m.visit(Overloaded{
      [&](const Euclidean&) -> Tangent { return {egrad, p}; },
      [&](const Dikin&) -> Tangent {
        return {(p.coords.array().square() * egrad.array()).matrix(), p};
      },
      [&](const Hyperbolic& h) -> Tangent {
        return {hyperbolic::egrad_to_rgrad(h.kappa, col(p.coords), col(egrad)), p};
      },
      [&](const Spd&) -> Tangent { return {spd::egrad_to_rgrad(p.coords, egrad), p}; },
  });
}

// ----------------------------------------------------------------------------
// Busemann functions

struct BusemannFunction::Impl {
  // flat geometries: B(p) = -<v/|v|, log_q p>, stored in closed form
  Vec flat_weights;
  std::variant<std::monostate, hyperbolic::PreparedRay<double>, spd::PreparedRay<double>> prepared;
};

BusemannFunction::BusemannFunction(const Manifold& m, const BusemannRay& ray)
    : manifold_(m), ray_(ray), dir_norm_(0.0), zero_direction_(false),
      impl_(std::make_unique<Impl>()) {
  check_ray(m, ray);
  dir_norm_ = std::sqrt(std::max(0.0, metric_at(m, ray.base)(ray.dir.coords, ray.dir.coords)));
  zero_direction_ = !(dir_norm_ > 0.0);
  if (zero_direction_)
    return;
  m.visit(Overloaded{
      [&](const Euclidean&) { impl_->flat_weights = col(ray.dir.coords) / dir_norm_; },
      [&](const Dikin&) {
        impl_->flat_weights =
            (col(ray.dir.coords).array() / col(ray.base.coords).array()).matrix() / dir_norm_;
      },
      [&](const Hyperbolic& h) {
        impl_->prepared =
            hyperbolic::prepare_ray(h.kappa, col(ray.base.coords), col(ray.dir.coords));
      },
      [&](const Spd&) { impl_->prepared = spd::prepare_ray(ray.base.coords, ray.dir.coords); },
  });
}

BusemannFunction::~BusemannFunction() = default;
BusemannFunction::BusemannFunction(BusemannFunction&&) noexcept = default;
BusemannFunction& BusemannFunction::operator=(BusemannFunction&&) noexcept = default;

double BusemannFunction::value(const Point& p) const {
  check_point(manifold_, p);
  if (zero_direction_)
    return dist(manifold_, ray_.base, p);
  return manifold_.visit(Overloaded{
      [&](const Euclidean&) {
        return -impl_->flat_weights.dot(col(p.coords) - col(ray_.base.coords));
      },
      [&](const Dikin&) {
        const Vec logs = (col(p.coords).array() / col(ray_.base.coords).array()).log();
        return -impl_->flat_weights.dot(logs);
      },
      [&](const Hyperbolic&) {
        return hyperbolic::busemann(std::get<hyperbolic::PreparedRay<double>>(impl_->prepared),
                                    col(p.coords));
      },
      [&](const Spd&) {
        return spd::busemann(std::get<spd::PreparedRay<double>>(impl_->prepared), p.coords);
      },
  });
}

Tangent BusemannFunction::grad(const Point& p) const {
  check_point(manifold_, p);
  if (zero_direction_) {
    // dist(q, q) on P(n) is rounding noise rather than an exact 0
    const double d = dist(manifold_, ray_.base, p);
    if (d == 0.0 || p.coords == ray_.base.coords)
      throw UndefinedGradientError(
          "busemann_grad: zero direction has no gradient at the base point");
    return (-1.0 / d) * log_map(manifold_, p, ray_.base);
  }
  return manifold_.visit(Overloaded{
      [&](const Euclidean&) -> Tangent { return {-impl_->flat_weights, p}; },
      [&](const Dikin&) -> Tangent {
        return {(-impl_->flat_weights.array() * col(p.coords).array()).matrix(), p};
      },
      [&](const Hyperbolic&) -> Tangent {
        return {hyperbolic::busemann_grad(
                    std::get<hyperbolic::PreparedRay<double>>(impl_->prepared), col(p.coords)),
                p};
      },
      [&](const Spd&) -> Tangent {
        return {spd::busemann_grad(std::get<spd::PreparedRay<double>>(impl_->prepared), p.coords),
                p};
      },
  });
}

double busemann_value(const Manifold& m, const BusemannRay& ray, const Point& p) {
  return BusemannFunction(m, ray).value(p);
}

Tangent busemann_grad(const Manifold& m, const BusemannRay& ray, const Point& p) {
  return BusemannFunction(m, ray).grad(p);
}

// ----------------------------------------------------------------------------
// Linear model <s, log_q p>

struct LogPairing::Impl {
  // SPD: A = Q^{-1/2} S Q^{-1/2} and the base square roots
  spd::SqrtPair<double> roots;
  Mat whitened_s;
  // Dikin: s_i / q_i
  Vec dikin_weights;
};

LogPairing::LogPairing(const Manifold& m, const Tangent& s)
    : manifold_(m), s_(s), impl_(std::make_unique<Impl>()) {
  check_tangent(m, s);
  m.visit(Overloaded{
      [&](const Dikin&) {
        impl_->dikin_weights =
            (col(s.coords).array() / col(s.base.coords).array()).matrix();
      },
      [&](const Spd&) {
        impl_->roots = spd::sqrt_pair(s.base.coords);
        impl_->whitened_s =
            spd::symmetrize(impl_->roots.inv_sqrt * s.coords * impl_->roots.inv_sqrt);
      },
      [](const auto&) {},
  });
}

LogPairing::~LogPairing() = default;
LogPairing::LogPairing(LogPairing&&) noexcept = default;
LogPairing& LogPairing::operator=(LogPairing&&) noexcept = default;

double LogPairing::value(const Point& p) const {
  check_point(manifold_, p);
  const Point& q = s_.base;
  return manifold_.visit(Overloaded{
      [&](const Euclidean&) { return col(s_.coords).dot(col(p.coords) - col(q.coords)); },
      [&](const Dikin&) {
        return impl_->dikin_weights.dot(
            (col(p.coords).array() / col(q.coords).array()).log().matrix());
      },
      [&](const Hyperbolic& h) {
        // <s, log_q p> = (theta / sinh theta) <s, p>, theta = sqrt(k) d(q,p)
        const double theta = std::sqrt(h.kappa) * hyperbolic::dist(h.kappa, col(q.coords),
                                                                   col(p.coords));
        return distance_ratio(theta).f * hyperbolic::lorentz_inner(col(s_.coords), col(p.coords));
      },
      [&](const Spd&) {
        const Mat congruent = spd::symmetrize(impl_->roots.inv_sqrt * p.coords * impl_->roots.inv_sqrt);
        return impl_->whitened_s.cwiseProduct(spd::mat_log(congruent)).sum();
      },
  });
}

Tangent LogPairing::grad(const Point& p) const {
  check_point(manifold_, p);
  const Point& q = s_.base;
  return manifold_.visit(Overloaded{
      [&](const Euclidean&) -> Tangent { return {s_.coords, p}; },
      [&](const Dikin&) -> Tangent {
        return {(impl_->dikin_weights.array() * col(p.coords).array()).matrix(), p};
      },
      [&](const Hyperbolic& h) -> Tangent {
        const Vec pv = col(p.coords);
        const Vec qv = col(q.coords);
        const Vec sv = col(s_.coords);
        const double theta = std::sqrt(h.kappa) * hyperbolic::dist(h.kappa, qv, pv);
        const DistanceRatio r = distance_ratio(theta);
        // Euclidean derivative of F(c) <s,p>, c = -k <q,p>, mapped through Proj_p J
        const Vec ambient = -h.kappa * r.df_dc * hyperbolic::lorentz_inner(sv, pv) * qv + r.f * sv;
        return {hyperbolic::project_tangent(h.kappa, pv, ambient), p};
      },
      [&](const Spd&) -> Tangent {
        const Mat congruent = spd::symmetrize(impl_->roots.inv_sqrt * p.coords * impl_->roots.inv_sqrt);
        const Mat egrad =
            impl_->roots.inv_sqrt * spd::frechet_log(congruent, impl_->whitened_s) * impl_->roots.inv_sqrt;
        return {spd::egrad_to_rgrad(p.coords, egrad), p};
      },
  });
}

// ----------------------------------------------------------------------------
// Bases, finite differences, sampling

std::vector<Tangent> tangent_basis(const Manifold& m, const Point& p) {
  check_point(m, p);
  std::vector<Mat> candidates;
  const Eigen::Index rows = m.rows();
  if (std::holds_alternative<Spd>(m.kind())) {
    for (Eigen::Index j = 0; j < rows; ++j)
      for (Eigen::Index i = j; i < rows; ++i) {
        Mat e = Mat::Zero(rows, rows);
        e(i, j) = 1.0;
        e(j, i) = 1.0;
        candidates.push_back(e);
      }
  } else {
    for (Eigen::Index i = 0; i < rows; ++i) {
      Mat e = Mat::Zero(rows, 1);
      e(i, 0) = 1.0;
      candidates.push_back(e);
    }
  }
  const auto metric = metric_at(m, p);
  std::vector<Tangent> basis;
  const auto target = static_cast<std::size_t>(m.dimension());
  for (const Mat& c : candidates) {
    if (basis.size() == target)
      break;
    Mat v = m.visit(Overloaded{
        [&](const Hyperbolic& h) -> Mat {
          return hyperbolic::project_tangent(h.kappa, col(p.coords), col(c));
        },
        [&](const auto&) -> Mat { return c; },
    });
    const double initial = std::sqrt(std::max(0.0, metric(v, v)));
    // two Gram-Schmidt passes for orthogonality at working precision
    for (int pass = 0; pass < 2; ++pass)
      for (const Tangent& b : basis)
        v -= metric(v, b.coords) * b.coords;
    const double nv = std::sqrt(std::max(0.0, metric(v, v)));
    if (nv <= 1e-8 * initial)
      continue;
    basis.push_back({v / nv, p});
  }
  return basis;
}

Tangent fd_riemannian_grad(const Manifold& m, const ScalarField& f, const Point& p, double h) {
  if (!(h > 0.0))
    throw ValidationError("fd_riemannian_grad: step must be positive");
  const std::vector<Tangent> basis = tangent_basis(m, p);
  Tangent g = zero_tangent(m, p);
  for (const Tangent& b : basis) {
    const double fp = f(exp_map(m, h * b));
    const double fm = f(exp_map(m, (-h) * b));
    g.coords += ((fp - fm) / (2.0 * h)) * b.coords;
  }
  return g;
}

Point random_point(const Manifold& m, Rng& rng) {
  return m.visit(Overloaded{
      [&](const Euclidean& e) -> Point { return {rng.normal_vector(e.n)}; },
      [&](const Dikin& d) -> Point {
        Vec x(d.n);
        for (int i = 0; i < d.n; ++i)
          x(i) = std::exp(rng.uniform(-1.5, 1.5));
        return {x};
      },
      [&](const Hyperbolic& h) -> Point {
        const Vec apex = hyperbolic::apex(h.n, h.kappa);
        Vec z = rng.normal_vector(h.n);
        // radius in curvature units, so every kappa samples the same
        // conditioning (coordinates grow like e^{sqrt(k) d})
        const double radius = rng.uniform(0.0, 3.0) / std::sqrt(h.kappa);
        Vec v = Vec::Zero(h.n + 1);
        if (z.norm() > 0.0)
          v.head(h.n) = (radius / z.norm()) * z;
        return {hyperbolic::exp(h.kappa, apex, v)};
      },
      [&](const Spd& s) -> Point {
        const Mat g = rng.normal_matrix(s.n, s.n);
        Eigen::HouseholderQR<Mat> qr(g);
        const Mat q = qr.householderQ();
        Vec u(s.n);
        for (int i = 0; i < s.n; ++i)
          u(i) = std::exp(rng.uniform(-1.5, 1.5));
        return {spd::symmetrize(q * u.asDiagonal() * q.transpose())};
      },
  });
}

Tangent random_tangent(const Manifold& m, const Point& p, Rng& rng) {
  check_point(m, p);
  return m.visit(Overloaded{
      [&](const Euclidean& e) -> Tangent { return {rng.normal_vector(e.n), p}; },
      [&](const Dikin& d) -> Tangent {
        return {(rng.normal_vector(d.n).array() * col(p.coords).array()).matrix(), p};
      },
      [&](const Hyperbolic&) -> Tangent {
        Tangent v = zero_tangent(m, p);
        for (const Tangent& b : tangent_basis(m, p))
          v.coords += rng.normal() * b.coords;
        return v;
      },
      [&](const Spd& s) -> Tangent {
        // X^{1/2} W X^{1/2} with W standard normal in the orthonormal frame
        // {E_ii, (E_ij + E_ji)/sqrt 2}
        Mat w = Mat::Zero(s.n, s.n);
        for (int j = 0; j < s.n; ++j)
          for (int i = j; i < s.n; ++i) {
            const double z = rng.normal();
            if (i == j) {
              w(i, i) = z;
            } else {
              w(i, j) = z / std::sqrt(2.0);
              w(j, i) = w(i, j);
            }
          }
        const Mat root = spd::sqrt_pair(p.coords).sqrt;
        return {spd::symmetrize(root * w * root), p};
      },
  });
}

Point make_point(const Eigen::VectorXd& v) { return {v}; }

Tangent make_tangent(const Point& base, const Eigen::MatrixXd& coords) { return {coords, base}; }

} // namespace bdca
