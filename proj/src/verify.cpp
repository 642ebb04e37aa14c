// Invariant suites behind `bdca_bench verify`.

#include "bdca/bench.hpp"
#include "bdca/busemann_analysis.hpp"
#include "bdca/spd.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <sstream>

namespace bdca {

namespace {

std::vector<Manifold> geometries() {
  return {Manifold::euclidean(5), Manifold::dikin(3), Manifold::hyperbolic(2),
          Manifold::hyperbolic(5), Manifold::spd(3)};
}

// Accumulates the worst error of a suite and where it happened.
class Suite {
public:
  Suite(std::string name, double tolerance, double scale)
      : name_(std::move(name)), tol_(tolerance * scale) {}

  void record(double err, const std::function<std::string()>& where) {
    if (!(err <= worst_) || std::isnan(err)) {
      worst_ = err;
      witness_ = where();
    }
  }

  SuiteResult result() const {
    SuiteResult r;
    r.name = name_;
    r.max_violation = worst_;
    r.tolerance = tol_;
    r.passed = worst_ <= tol_;
    r.witness = witness_;
    return r;
  }

private:
  std::string name_;
  double tol_;
  double worst_ = 0.0;
  std::string witness_;
};

std::string at(const Manifold& m, int sample) {
  return m.name() + " sample " + std::to_string(sample);
}

double coord_error(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).norm() / (1.0 + b.norm());
}

// On P(n) the finite-t estimate approaches the limit like exp(-gap t), gap
// being the smallest eigenvalue gap of the unit whitened direction, so t = 30
// leaves errors up to ~1e-2. The suite walks to t = 200 and only compares
// directions with gap >= kMinGap.
constexpr double kMinGap = 0.1;

OracleSchedule verify_schedule(const Manifold& m) {
  OracleSchedule s = default_schedule(m);
  if (std::holds_alternative<Spd>(m.kind()))
    s.t_values = {50.0, 100.0, 150.0, 200.0};
  return s;
}

double min_eigen_gap(const Tangent& v) {
  const Eigen::VectorXd mu = spd::relative_spectrum(v.coords, v.base.coords);
  double gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < mu.size(); ++i)
    gap = std::min(gap, mu(i) - mu(i - 1));
  return gap / mu.norm();
}

} // namespace

bool VerifyReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

VerifyReport run_verify(const VerifyConfig& cfg) {
  if (cfg.samples < 1)
    throw ValidationError("run_verify: samples must be positive");
  if (!(cfg.tolerance_scale >= 0.0))
    throw ValidationError("run_verify: tolerance scale must be nonnegative");
  const double scale = cfg.tolerance_scale;
  const int n = cfg.samples;
  const Rng root(cfg.seed);
  VerifyReport report;

  {
    Suite s("geometry-roundtrip", 1e-9, scale);
    Rng rng = root.split(1);
    for (const Manifold& m : geometries())
      for (int i = 0; i < n; ++i) {
        const Point p = random_point(m, rng);
        const Point q = random_point(m, rng);
        const Tangent v = random_tangent(m, p, rng);
        s.record(coord_error(exp_map(m, log_map(m, p, q)).coords, q.coords),
                 [&] { return at(m, i) + ": exp_p log_p q"; });
        s.record(coord_error(log_map(m, p, exp_map(m, v)).coords, v.coords),
                 [&] { return at(m, i) + ": log_p exp_p v"; });
      }
    report.suites.push_back(s.result());
  }

  {
    Rng rng = root.split(2);
    for (const Manifold& m : geometries()) {
      Suite s("busemann-oracle " + m.name(), m.is_flat() ? 1e-10 : 1e-4, scale);
      const OracleSchedule schedule = verify_schedule(m);
      const bool spectral = std::holds_alternative<Spd>(m.kind());
      for (int i = 0; i < n; ++i) {
        const Point q = random_point(m, rng);
        Tangent v = random_tangent(m, q, rng);
        while (spectral && min_eigen_gap(v) < kMinGap)
          v = random_tangent(m, q, rng);
        const BusemannRay ray{q, v};
        const Point p = random_point(m, rng);
        const double closed = busemann_value(m, ray, p);
        const double numeric = busemann_numeric(m, ray, p, schedule).value;
        s.record(std::abs(closed - numeric), [&] { return at(m, i); });
      }
      report.suites.push_back(s.result());
    }
  }

  {
    Suite unit("busemann-unit-gradient", 1e-8, scale);
    Suite base("busemann-gradient-at-base", 1e-9, scale);
    Suite ray_line("busemann-along-ray", 1e-8, scale);
    Suite bound("busemann-distance-bound", 1e-10, scale);
    Suite scaling("busemann-scaling", 1e-10, scale);
    Suite flat("busemann-flat-equality", 1e-10, scale);
    Suite lin("busemann-log-inequality", 1e-10, scale);
    Rng rng = root.split(3);
    for (const Manifold& m : geometries())
      for (int i = 0; i < n; ++i) {
        const Point q = random_point(m, rng);
        const Tangent v = random_tangent(m, q, rng);
        const double vn = norm(m, v);
        const BusemannFunction b(m, BusemannRay{q, v});
        const Point p = random_point(m, rng);
        const auto where = [&] { return at(m, i); };
        unit.record(std::abs(norm(m, b.grad(p)) - 1.0), where);
        base.record(norm(m, b.grad(q) + (1.0 / vn) * v), where);
        // unit speed: at arc length t the hyperboloid coordinates are ~e^t
        // and B(exp_q(t v)) ~ -t is resolved only to ~e^{2t} eps
        const double tau = rng.uniform(-5.0, 5.0);
        ray_line.record(std::abs(b.value(exp_map(m, (tau / vn) * v)) + tau), where);
        bound.record(std::abs(b.value(p)) - dist(m, q, p), where);
        const double c = std::exp(rng.uniform(-3.0, 3.0));
        scaling.record(std::abs(busemann_value(m, BusemannRay{q, c * v}, p) - b.value(p)), where);
        // -<v, log_q p> <= |v| B_{q,v}(p), with equality on flat spaces
        const double lhs = -inner(m, v, log_map(m, q, p));
        const double rhs = vn * b.value(p);
        if (m.is_flat())
          flat.record(std::abs(lhs - rhs) / (1.0 + std::abs(lhs)), where);
        else
          lin.record((lhs - rhs) / (1.0 + std::abs(lhs)), where);
      }
    for (const Suite* s : {&unit, &base, &ray_line, &bound, &scaling, &flat, &lin})
      report.suites.push_back(s->result());
  }

  {
    Rng rng = root.split(4);
    for (const Manifold& m : {Manifold::hyperbolic(2), Manifold::spd(3)}) {
      Suite s("support-inequality " + m.name(), 0.0, scale);
      for (int i = 0; i < 4; ++i) {
        const Point z = random_point(m, rng);
        const Point q = random_point(m, rng);
        const ScalarField f = [m, z](const Point& p) {
          const double d = dist(m, p, z);
          return d * d;
        };
        const TangentField sub = [m, z](const Point& p) { return -2.0 * log_map(m, p, z); };
        const SupportCheckReport r = support_check(m, f, sub, 2.0, q, n, rng);
        s.record(r.violations, [&] {
          return m.name() + " base " + std::to_string(i) + ": " + std::to_string(r.violations) +
                 " violations, max gap " + format_number(r.max_violation);
        });
      }
      report.suites.push_back(s.result());
    }
  }

  {
    Suite descent("descent", 1e-9, scale);
    Suite complexity("complexity-bound", 0.0, scale);
    SolverConfig sc;
    std::vector<std::pair<std::string, Benchmark>> canned;
    canned.emplace_back("spd-academic-n4", academic_problem({4}));
    Rng rng = root.split(5);
    const Eigen::VectorXd z1 = rng.normal_vector(3);
    const Eigen::VectorXd z2 = rng.normal_vector(3);
    canned.emplace_back("euclidean-quadratic", euclidean_quadratic_problem(z1, z2));
    RosenbrockParams rp;
    rp.tangency = Tangency::external;
    rp.b = 2.0;
    rp.a = 1.0;
    canned.emplace_back("rosenbrock-external", rosenbrock_problem(rp).bench);
    for (const auto& [name, bench] : canned)
      for (Algorithm alg : {Algorithm::cr_dca, Algorithm::b_dca}) {
        sc.algorithm = alg;
        sc.max_outer = 2000;
        const Point p0 = random_start(bench, rng);
        const SolverTrace t = run_dca(bench.problem, p0, sc);
        for (std::size_t k = 0; k + 1 < t.records.size(); ++k)
          descent.record(t.records[k + 1].fval - t.records[k].fval, [&] {
            return name + " " + algorithm_name(alg) + " step " + std::to_string(k);
          });
        if (bench.problem.sigma > 0.0 && bench.problem.phi_inf) {
          const ComplexityCheck c =
              complexity_bound_check(t, bench.problem.sigma, *bench.problem.phi_inf);
          complexity.record(c.passed ? 0.0 : 1.0, [&] {
            return name + " " + algorithm_name(alg) + " prefix " +
                   std::to_string(c.witness.value_or(-1));
          });
        }
      }
    report.suites.push_back(descent.result());
    report.suites.push_back(complexity.result());
  }
  return report;
}

void print_report(std::ostream& out, const VerifyReport& report) {
  for (const SuiteResult& s : report.suites) {
    out << (s.passed ? "PASS " : "FAIL ") << s.name << "  max " << format_number(s.max_violation)
        << "  tol " << format_number(s.tolerance);
    if (!s.passed)
      out << "  witness: " << s.witness;
    out << '\n';
  }
  out << (report.passed() ? "all suites passed" : "some suites failed") << '\n';
}

} // namespace bdca
