// Benchmark runner. Exit codes: 0 success, 1 verify failure, 2 bad flags or
// problem construction, 3 solver stall (rows written so far are kept).

#include "bdca/bench.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct Flags {
  std::string algorithm = "both";
  std::uint64_t seed = 1;
  std::optional<int> runs;
  std::optional<int> n;
  std::string tangency = "internal";
  std::optional<double> a;
  std::optional<double> b;
  double theta = 1.0;
  int m = 5;
  int r = 1;
  double eps = 1e-4;
  int max_outer = 20000;
  int threads = 1;
  std::string output;
  std::string format = "csv";
  int samples = 50;
  double tolerance_scale = 1.0;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--algorithm", f.algorithm, "cr, b or both")
      ->check(CLI::IsMember({"cr", "b", "both"}))
      ->capture_default_str();
  cmd->add_option("--seed", f.seed, "base seed")->capture_default_str();
  cmd->add_option("--runs", f.runs, "number of starts");
  cmd->add_option("--n", f.n, "dimension");
  cmd->add_option("--eps", f.eps, "base tolerance, scaled by gamma")->capture_default_str();
  cmd->add_option("--max-outer", f.max_outer, "outer iteration cap")->capture_default_str();
  cmd->add_option("--threads", f.threads, "worker threads")->capture_default_str();
  cmd->add_option("--output", f.output, "output file (stdout when omitted)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

int write_rows(const Flags& f, const std::vector<bdca::RunRecord>& rows) {
  std::ofstream file;
  if (!f.output.empty()) {
    file.open(f.output);
    if (!file) {
      std::cerr << "error: cannot open " << f.output << '\n';
      return 2;
    }
  }
  std::ostream& out = f.output.empty() ? std::cout : file;
  if (f.format == "json")
    bdca::write_json(out, rows);
  else
    bdca::write_csv(out, rows);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian DC benchmarks: CR-DCA and B-DCA"};
  app.require_subcommand(1);
  Flags f;

  CLI::App* rosen = app.add_subcommand("rosenbrock", "hyperbolic Rosenbrock-type problem");
  add_run_flags(rosen, f);
  rosen->add_option("--tangency", f.tangency, "internal or external")
      ->check(CLI::IsMember({"internal", "external"}))
      ->capture_default_str();
  rosen->add_option("--a", f.a, "default 1");
  rosen->add_option("--b", f.b, "default 100 (internal) or 2 (external)");
  rosen->add_option("--theta", f.theta, "distance exponent")->capture_default_str();

  CLI::App* academic = app.add_subcommand("spd-academic", "(ln det X)^4 - (ln det X)^2 on P(n)");
  add_run_flags(academic, f);

  CLI::App* contrastive = app.add_subcommand("spd-contrastive", "contrastive problem on P(n)");
  add_run_flags(contrastive, f);
  contrastive->add_option("--m", f.m, "positive references")->capture_default_str();
  contrastive->add_option("--r", f.r, "negative references")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--seed", f.seed, "seed")->capture_default_str();
  verify->add_option("--samples", f.samples, "samples per suite")->capture_default_str();
  verify->add_option("--tolerance-scale", f.tolerance_scale, "multiplies every tolerance")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) {
      bdca::VerifyConfig vc;
      vc.seed = f.seed;
      vc.samples = f.samples;
      vc.tolerance_scale = f.tolerance_scale;
      const bdca::VerifyReport report = bdca::run_verify(vc);
      bdca::print_report(std::cout, report);
      return report.passed() ? 0 : 1;
    }

    bdca::BenchConfig cfg;
    cfg.kind = rosen->parsed()      ? bdca::BenchKind::rosenbrock
               : academic->parsed() ? bdca::BenchKind::spd_academic
                                    : bdca::BenchKind::spd_contrastive;
    if (f.algorithm == "cr")
      cfg.algorithms = {bdca::Algorithm::cr_dca};
    else if (f.algorithm == "b")
      cfg.algorithms = {bdca::Algorithm::b_dca};
    cfg.seed = f.seed;
    cfg.runs = f.runs;
    cfg.n = f.n;
    cfg.tangency = f.tangency == "external" ? bdca::Tangency::external : bdca::Tangency::internal;
    cfg.a = f.a;
    cfg.b = f.b;
    cfg.theta = f.theta;
    cfg.m = f.m;
    cfg.r = f.r;
    cfg.eps = f.eps;
    cfg.max_outer = f.max_outer;
    cfg.threads = f.threads;

    const bdca::BenchResult result = bdca::run_benchmark(cfg);
    if (const int code = write_rows(f, result.records()); code != 0)
      return code;
    if (result.stalled()) {
      for (const bdca::RunOutcome& r : result.runs)
        if (r.trace.exit == bdca::ExitReason::stalled)
          std::cerr << "stalled: " << r.record.algorithm << " run " << r.record.run << ": "
                    << r.trace.message << '\n';
      return 3;
    }
    return 0;
  } catch (const bdca::ConstructionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const bdca::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
