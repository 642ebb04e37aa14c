#include "bdca/spd.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace bdca;
namespace sp = bdca::spd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

MatrixXd diag2(double a, double b) { return Eigen::Vector2d(a, b).asDiagonal(); }

MatrixXd random_spd(int n, Rng& rng) { return random_point(Manifold::spd(n), rng).coords; }

MatrixXd random_sym(int n, Rng& rng) {
  const MatrixXd a = rng.normal_matrix(n, n);
  return (a + a.transpose()) / 2.0;
}

double rel(const MatrixXd& a, const MatrixXd& b) { return (a - b).norm() / (1.0 + b.norm()); }

} // namespace

TEST(Spd, MatrixFunctionExamples) {
  EXPECT_EQ(sp::mat_log(MatrixXd::Identity(3, 3)).norm(), 0.0);
  const double e = std::exp(1.0);
  EXPECT_LE((sp::mat_log(diag2(e * e, 1 / e)) - diag2(2, -1)).norm(), 1e-15);
  EXPECT_LE((sp::chol(diag2(4, 9)) - diag2(2, 3)).norm(), 1e-15);
  EXPECT_THROW(sp::chol(diag2(1, -1)), DefinitenessError);
  EXPECT_THROW(sp::mat_log(diag2(1, -1)), DefinitenessError);

  const VectorXd ev = sp::sym_eig(MatrixXd(diag2(3, -2))).values;
  EXPECT_LT(ev(0), ev(1));
}

TEST(Spd, MetricExamples) {
  const double e = std::exp(1.0);
  const MatrixXd id = MatrixXd::Identity(2, 2);
  EXPECT_NEAR(sp::dist(diag2(e * e, 1 / e), id), std::sqrt(5.0), 1e-14);

  Rng rng(1);
  const MatrixXd v = random_sym(2, rng);
  EXPECT_LE(rel(sp::exp(id, v), sp::mat_exp(v)), 1e-14);
  const MatrixXd x = random_spd(2, rng);
  EXPECT_LE(rel(sp::log(id, x), sp::mat_log(x)), 1e-14);
}

// Exp(Log X) = X and exp_Y(log_Y X) = X.
TEST(Spd, RoundTrips) {
  Rng rng(2);
  for (int n : {2, 3, 5})
    for (int i = 0; i < 100; ++i) {
      const MatrixXd x = random_spd(n, rng);
      const MatrixXd y = random_spd(n, rng);
      EXPECT_LE(rel(sp::mat_exp(sp::mat_log(x)), x), 1e-10);
      EXPECT_LE(rel(sp::exp(y, sp::log(y, x)), x), 1e-9);
    }
}

// d(Z X V, Y) = d(X, Z^{-1} Y V^{-1}) with V = Z^T keeping both arguments SPD.
TEST(Spd, CongruenceIdentity) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const int n = 3;
    const MatrixXd x = random_spd(n, rng);
    const MatrixXd y = random_spd(n, rng);
    const MatrixXd z = rng.normal_matrix(n, n) + 2.0 * MatrixXd::Identity(n, n);
    const MatrixXd v = z.transpose();
    const MatrixXd lhs_arg = sp::symmetrize(z * x * v);
    const MatrixXd rhs_arg = sp::symmetrize(z.inverse() * y * v.inverse());
    const double lhs = sp::dist(lhs_arg, y);
    EXPECT_NEAR(lhs, sp::dist(x, rhs_arg), 1e-9 * (1 + lhs));
  }
}

TEST(Spd, AffineInvariance) {
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const MatrixXd x = random_spd(3, rng), y = random_spd(3, rng);
    const MatrixXd a = rng.normal_matrix(3, 3) + 2.0 * MatrixXd::Identity(3, 3);
    const double d = sp::dist(x, y);
    EXPECT_NEAR(sp::dist(MatrixXd(a.transpose() * x * a), MatrixXd(a.transpose() * y * a)), d,
                1e-9 * (1 + d));
  }
}

TEST(Spd, EgradToRgradExamples) {
  Rng rng(5);
  const Manifold m = Manifold::spd(3);
  const Point x = random_point(m, rng);
  EXPECT_LE(rel(sp::egrad_to_rgrad(x.coords, MatrixXd(x.coords.inverse())), x.coords), 1e-12);

  // (ln det X)^2 has gradient 2 ln det(X) X
  const ScalarField f = [](const Point& p) {
    const double ld = std::log(p.coords.determinant());
    return ld * ld;
  };
  const double ld = std::log(x.coords.determinant());
  const Tangent g = make_tangent(x, 2.0 * ld * x.coords);
  EXPECT_LE(rel(egrad_to_rgrad(m, x, 2.0 * ld * x.coords.inverse()).coords, g.coords), 1e-12);
  EXPECT_LE(support::grad_error(m, f, g, x), 1e-5);

  // tr(A X) + tr(X^2) against the fd oracle
  for (int i = 0; i < 20; ++i) {
    const MatrixXd a = random_sym(3, rng);
    const Point p = random_point(m, rng);
    const ScalarField h = [a](const Point& q) {
      return (a * q.coords).trace() + (q.coords * q.coords).trace();
    };
    const Tangent gh = egrad_to_rgrad(m, p, a + 2.0 * p.coords);
    EXPECT_LE(support::grad_error(m, h, gh, p), 1e-5);
  }
}

TEST(Spd, SpectralSplitExamples) {
  const auto id = sp::sqrt_pair(MatrixXd(MatrixXd::Identity(2, 2)));
  const auto s = sp::spectral_split(id, diag2(1, -1));
  ASSERT_EQ(s.eigenvalues.size(), 2u);
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-15);
  EXPECT_EQ(s.multiplicities, (std::vector<int>{1, 1}));
  EXPECT_NEAR(s.norm, std::sqrt(2.0), 1e-15);

  const auto id3 = sp::sqrt_pair(MatrixXd(MatrixXd::Identity(3, 3)));
  const auto t = sp::spectral_split(id3, MatrixXd(MatrixXd::Identity(3, 3)));
  ASSERT_EQ(t.eigenvalues.size(), 1u);
  EXPECT_EQ(t.multiplicities[0], 3);
  EXPECT_NEAR((t.orthogonal.transpose() * t.orthogonal - MatrixXd::Identity(3, 3)).norm(), 0.0,
              1e-10);

  EXPECT_THROW(sp::spectral_split(id, MatrixXd(MatrixXd::Zero(2, 2))), ZeroDirectionError);
}

// Grouping tied eigenvalues does not change the value.
TEST(Spd, GroupingDoesNotChangeBusemann) {
  Rng rng(6);
  for (int i = 0; i < 50; ++i) {
    const MatrixXd y = random_spd(4, rng);
    const MatrixXd q = support::random_orthogonal(4, rng);
    const VectorXd lam = Eigen::Vector4d(-1.0, 0.5, 0.5 + 1e-13, 2.0);
    const auto roots = sp::sqrt_pair(y);
    const MatrixXd v = sp::symmetrize(roots.sqrt * q * lam.asDiagonal() * q.transpose() * roots.sqrt);
    const MatrixXd x = random_spd(4, rng);
    const auto grouped = sp::prepare_ray(y, v, 1e-10);
    const auto split = sp::prepare_ray(y, v, 0.0);
    ASSERT_EQ(grouped.split.eigenvalues.size(), 3u);
    ASSERT_EQ(split.split.eigenvalues.size(), 4u);
    EXPECT_NEAR(sp::busemann(grouped, x), sp::busemann(split, x), 1e-11);
  }
}

TEST(Spd, BusemannExample) {
  const double e = std::exp(1.0);
  const Manifold m = Manifold::spd(2);
  const Point id{MatrixXd::Identity(2, 2)};
  const BusemannRay ray{id, make_tangent(id, diag2(1, -1))};
  // commuting case: -tr(V Log X)/|V| = -(1 + 1)/sqrt(2)
  EXPECT_NEAR(busemann_value(m, ray, Point{diag2(e, 1 / e)}), -std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(busemann_value(m, ray, id), 0.0, 1e-15);
}

// Simultaneously diagonalizable X and V at Y = I: B = -sum v_i ln x_i / |v|.
TEST(Spd, CommutingCaseOracle) {
  Rng rng(7);
  const Manifold m = Manifold::spd(4);
  const Point id{MatrixXd::Identity(4, 4)};
  for (int i = 0; i < 200; ++i) {
    const MatrixXd q = support::random_orthogonal(4, rng);
    const VectorXd v = rng.normal_vector(4);
    VectorXd x(4);
    for (int j = 0; j < 4; ++j)
      x(j) = std::exp(rng.uniform(-2.0, 2.0));
    double expected = 0.0;
    for (int j = 0; j < 4; ++j)
      expected -= v(j) * std::log(x(j));
    expected /= v.norm();
    const BusemannRay ray{id, make_tangent(id, q * v.asDiagonal() * q.transpose())};
    const Point xp{q * x.asDiagonal() * q.transpose()};
    EXPECT_NEAR(busemann_value(m, ray, xp), expected, 1e-10);
  }
}

TEST(Spd, BusemannGradient) {
  Rng rng(8);
  const Manifold m = Manifold::spd(3);
  for (int i = 0; i < 20; ++i) {
    const Point y = random_point(m, rng);
    const Tangent v = random_tangent(m, y, rng);
    const BusemannFunction b(m, {y, v});
    const Tangent at_base = b.grad(y);
    EXPECT_LE(norm(m, at_base + (1.0 / norm(m, v)) * v), 1e-9);
    const Point x = random_point(m, rng);
    const Tangent g = b.grad(x);
    EXPECT_NEAR(norm(m, g), 1.0, 1e-8);
    EXPECT_LE(support::grad_error(m, [&](const Point& p) { return b.value(p); }, g, x), 1e-5);
  }
}

TEST(Spd, BusemannIsGeodesicallyConvex) {
  Rng rng(9);
  const Manifold m = Manifold::spd(3);
  for (int i = 0; i < 300; ++i) {
    const Point y = random_point(m, rng);
    const BusemannFunction b(m, {y, random_tangent(m, y, rng)});
    const Point p1 = random_point(m, rng), p2 = random_point(m, rng);
    const Point mid = exp_map(m, 0.5 * log_map(m, p1, p2));
    ASSERT_LE(b.value(mid), 0.5 * (b.value(p1) + b.value(p2)) + 1e-10);
  }
}

TEST(Spd, FrechetLog) {
  Rng rng(10);
  const MatrixXd e = random_sym(3, rng);
  EXPECT_LE(rel(sp::frechet_log(MatrixXd(MatrixXd::Identity(3, 3)), e), e), 1e-15);
  EXPECT_LE(rel(sp::frechet_log(MatrixXd(2.5 * MatrixXd::Identity(3, 3)), e), e / 2.5), 1e-15);

  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const MatrixXd a = random_spd(4, rng);
    const MatrixXd d = random_sym(4, rng);
    const MatrixXd fd = (sp::mat_log(MatrixXd(a + h * d)) - sp::mat_log(MatrixXd(a - h * d))) / (2 * h);
    EXPECT_LE((sp::frechet_log(a, d) - fd).norm(), 1e-6);
  }
  EXPECT_THROW(sp::frechet_log(diag2(1, -1), diag2(1, 1)), DefinitenessError);
}
