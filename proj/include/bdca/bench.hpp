#ifndef BDCA_BENCH_HPP
#define BDCA_BENCH_HPP

#include "bdca/problems.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace bdca {

enum class BenchKind { rosenbrock, spd_academic, spd_contrastive };

const char* bench_kind_name(BenchKind kind);

/// One benchmark invocation. Unset optionals take the per-problem defaults:
/// rosenbrock n=2, 5 runs, a=1 with b=100 (internal) or b=2 (external);
/// spd-academic n=4, 1 run; spd-contrastive n=5, 10 runs.
struct BenchConfig {
  BenchKind kind = BenchKind::rosenbrock;
  std::vector<Algorithm> algorithms{Algorithm::cr_dca, Algorithm::b_dca};
  std::uint64_t seed = 1;
  std::optional<int> runs;
  std::optional<int> n;
  Tangency tangency = Tangency::internal;
  std::optional<double> a;
  std::optional<double> b;
  double theta = 1.0;
  int m = 5;
  int r = 1;
  double eps = 1e-4;
  int max_outer = 20000;
  InnerConfig inner;
  /// Worker threads; runs are independent and rows keep their order.
  int threads = 1;
};

/// Problem instance of a configuration. Random reference data (contrastive)
/// comes from Rng(seed).split(0), so every run of one invocation shares it.
Benchmark make_benchmark(const BenchConfig& cfg);
/// Problem column of the output, e.g. "spd-academic-n4".
std::string problem_id(const BenchConfig& cfg);
/// Start of run `run`: the fixed start, or random_point from Rng(seed).split(run + 1).
Point run_start(const Benchmark& bench, std::uint64_t seed, int run);

struct RunRecord {
  std::string problem;
  std::string algorithm;
  int run = 0;
  std::uint64_t seed = 0;
  int k = 0;
  int inn = 0;
  double inn_per_k = 0.0;
  double fval = 0.0;
  /// Scaled gradient norm, as tested against eps.
  double grad_norm = 0.0;
  double time_s = 0.0;
};

struct RunOutcome {
  RunRecord record;
  SolverTrace trace;
};

struct BenchResult {
  /// Ordered by algorithm (in config order), then run.
  std::vector<RunOutcome> runs;
  Benchmark bench;

  bool stalled() const;
  std::vector<RunRecord> records() const;
};

BenchResult run_benchmark(const BenchConfig& cfg);

inline constexpr const char* kCsvHeader =
    "problem,algorithm,run,seed,k,inn,inn_per_k,fval,grad_norm,time_s";

/// %.17g, enough digits to round-trip a double.
std::string format_number(double x);
void write_csv(std::ostream& out, const std::vector<RunRecord>& rows);
/// Array of flat objects with the CSV column names.
void write_json(std::ostream& out, const std::vector<RunRecord>& rows);

struct VerifyConfig {
  std::uint64_t seed = 1;
  int samples = 50;
  /// Multiplies every suite tolerance; 0 turns any nonzero error into a failure.
  double tolerance_scale = 1.0;
};

struct SuiteResult {
  std::string name;
  /// Largest error of the suite, in the units of its tolerance.
  double max_violation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  std::string witness;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
};

/// Geometry round trips, Busemann oracle and invariant checks, support
/// inequalities, descent and complexity checks on small canned problems.
VerifyReport run_verify(const VerifyConfig& cfg);
void print_report(std::ostream& out, const VerifyReport& report);

} // namespace bdca

#endif // BDCA_BENCH_HPP
