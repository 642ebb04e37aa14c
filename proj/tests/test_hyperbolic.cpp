#include "bdca/hyperbolic.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace bdca;
namespace hy = bdca::hyperbolic;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) { return Eigen::Vector3d(a, b, c); }

} // namespace

TEST(Hyperbolic, ProjectTangentExamples) {
  const Eigen::VectorXd p = vec3(0, 0, 1);
  EXPECT_LE(hy::project_tangent(1.0, p, vec3(0, 0, 1)).norm(), 1e-15);
  EXPECT_EQ(hy::project_tangent(1.0, p, vec3(1, 0, 0)), vec3(1, 0, 0));

  Rng rng(1);
  const Manifold m = Manifold::hyperbolic(4, 1.7);
  for (int i = 0; i < 50; ++i) {
    const Eigen::VectorXd q = random_point(m, rng).coords;
    const Eigen::VectorXd x = rng.normal_vector(5);
    const Eigen::VectorXd once = hy::project_tangent(1.7, q, x);
    EXPECT_LE((hy::project_tangent(1.7, q, once) - once).norm(), 1e-10 * (1 + once.norm()));
    EXPECT_NEAR(hy::lorentz_inner(q, once), 0.0, 1e-8 * (1 + once.norm()));
  }
}

TEST(Hyperbolic, DistanceExamples) {
  const Eigen::VectorXd q = vec3(0, 0, 1);
  const Eigen::VectorXd p = vec3(std::sinh(1.0), 0, std::cosh(1.0));
  EXPECT_NEAR(hy::dist(1.0, p, q), 1.0, 1e-14);
  EXPECT_EQ(hy::dist(1.0, q, q), 0.0);

  Rng rng(2);
  const Manifold m = Manifold::hyperbolic(3, 0.6);
  for (int i = 0; i < 100; ++i) {
    const Point a = random_point(m, rng);
    const Point b = random_point(m, rng);
    EXPECT_NEAR(dist(m, a, b), dist(m, b, a), 1e-12);
  }
}

TEST(Hyperbolic, ExpLogExamples) {
  const Eigen::VectorXd q = vec3(0, 0, 1);
  const Eigen::VectorXd e = hy::exp(1.0, q, vec3(1, 0, 0));
  EXPECT_LE((e - vec3(std::sinh(1.0), 0, std::cosh(1.0))).norm(), 1e-15);
  EXPECT_EQ(hy::log(1.0, q, q).norm(), 0.0);
  EXPECT_THROW(hy::exp(1.0, q, vec3(351, 0, 0)), OverflowError);
}

// Round trip for random |v| <= 10, and the Lorentz constraint on every output.
TEST(Hyperbolic, ExpLogRoundTrip) {
  Rng rng(3);
  for (double kappa : {1.0, 0.3, 4.0}) {
    const Manifold m = Manifold::hyperbolic(3, kappa);
    for (int i = 0; i < 200; ++i) {
      const Point q = random_point(m, rng);
      Tangent v = random_tangent(m, q, rng);
      v = (rng.uniform(0.0, 10.0) / norm(m, v)) * v;
      const Point p = exp_map(m, v);
      // rounding in <p,p> alone is ~eps |p|^2, so the shell test is relative
      const double p2 = p.coords.squaredNorm();
      EXPECT_NEAR(kappa * hy::lorentz_inner(p.coords.col(0), p.coords.col(0)), -1.0,
                  1e-8 * (1.0 + kappa * p2));
      const Tangent back = log_map(m, q, p);
      EXPECT_NEAR(hy::lorentz_inner(q.coords.col(0), back.coords.col(0)), 0.0, 1e-8 * (1 + back.coords.norm()));
      EXPECT_LE(norm(m, back - v), 1e-9 * (1 + norm(m, v)));
    }
  }
}

TEST(Hyperbolic, EgradToRgradMatchesFd) {
  const Manifold m = Manifold::hyperbolic(2);
  const Eigen::VectorXd apex = vec3(0, 0, 1);
  const Tangent zero = egrad_to_rgrad(m, Point{apex}, Eigen::VectorXd::Zero(3));
  EXPECT_EQ(zero.coords.norm(), 0.0);

  // f(p) = <c, p> + sum_i a_i p_i^2 restricted to the hyperboloid
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const Eigen::VectorXd c = rng.normal_vector(3);
    const Eigen::VectorXd a = rng.normal_vector(3);
    const ScalarField f = [=](const Point& p) {
      const Eigen::VectorXd x = p.coords.col(0);
      return c.dot(x) + a.dot(x.cwiseProduct(x));
    };
    const Point p = random_point(m, rng);
    const Eigen::VectorXd x = p.coords.col(0);
    const Tangent g = egrad_to_rgrad(m, p, c + 2.0 * a.cwiseProduct(x));
    EXPECT_NEAR(hy::lorentz_inner(x, g.coords.col(0)), 0.0, 1e-8 * (1 + g.coords.norm()));
    EXPECT_LE(support::grad_error(m, f, g, p), 1e-5);
  }
}

TEST(Hyperbolic, BusemannExamples) {
  const Manifold m = Manifold::hyperbolic(2);
  const Point q{vec3(0, 0, 1)};
  const BusemannRay ray{q, make_tangent(q, vec3(1, 0, 0))};
  EXPECT_EQ(busemann_value(m, ray, q), 0.0);
  for (double tau : {-3.0, -0.5, 0.7, 4.0}) {
    const Point p{vec3(std::sinh(tau), 0, std::cosh(tau))};
    EXPECT_NEAR(busemann_value(m, ray, p), -tau, 1e-12);
    // ln(p_3 - p_1) independently of the kernel
    EXPECT_NEAR(busemann_value(m, ray, p), std::log(p.coords(2) - p.coords(0)), 1e-12);
  }
  const Tangent g = busemann_grad(m, ray, q);
  EXPECT_LE((g.coords - vec3(-1, 0, 0)).norm(), 1e-15);
}

// Comparison inequality of Hadamard manifolds:
// d^2(x,y) + d^2(x,z) - 2 <log_x y, log_x z> <= d^2(y,z).
TEST(Hyperbolic, ComparisonInequality) {
  Rng rng(5);
  const Manifold m = Manifold::hyperbolic(3);
  for (int i = 0; i < 1000; ++i) {
    const Point x = random_point(m, rng), y = random_point(m, rng), z = random_point(m, rng);
    const double dxy = dist(m, x, y), dxz = dist(m, x, z), dyz = dist(m, y, z);
    const double lhs = dxy * dxy + dxz * dxz - 2.0 * inner(m, log_map(m, x, y), log_map(m, x, z));
    ASSERT_LE(lhs, dyz * dyz + 1e-9 * (1 + dyz * dyz));
  }
}

TEST(Hyperbolic, BusemannIsGeodesicallyConvex) {
  Rng rng(6);
  for (const Manifold& m : {Manifold::hyperbolic(2), Manifold::hyperbolic(5, 2.0)})
    for (int i = 0; i < 300; ++i) {
      const Point q = random_point(m, rng);
      const BusemannFunction b(m, {q, random_tangent(m, q, rng)});
      const Point p1 = random_point(m, rng), p2 = random_point(m, rng);
      const Tangent w = log_map(m, p1, p2);
      for (double t : {0.25, 0.5, 0.75})
        ASSERT_LE(b.value(exp_map(m, t * w)), (1 - t) * b.value(p1) + t * b.value(p2) + 1e-10);
    }
}
