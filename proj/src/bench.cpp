#include "bdca/bench.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <cstdio>
#include <ostream>
#include <thread>

namespace bdca {

const char* bench_kind_name(BenchKind kind) {
  switch (kind) {
  case BenchKind::rosenbrock:
    return "rosenbrock";
  case BenchKind::spd_academic:
    return "spd-academic";
  case BenchKind::spd_contrastive:
    return "spd-contrastive";
  }
  return "unknown";
}

Benchmark make_benchmark(const BenchConfig& cfg) {
  switch (cfg.kind) {
  case BenchKind::rosenbrock: {
    RosenbrockParams p;
    p.tangency = cfg.tangency;
    p.n = cfg.n.value_or(2);
    p.a = cfg.a.value_or(1.0);
    p.b = cfg.b.value_or(cfg.tangency == Tangency::internal ? 100.0 : 2.0);
    p.theta = cfg.theta;
    return rosenbrock_problem(p).bench;
  }
  case BenchKind::spd_academic:
    return academic_problem({cfg.n.value_or(4)});
  case BenchKind::spd_contrastive: {
    ContrastiveParams p;
    p.n = cfg.n.value_or(5);
    p.m = cfg.m;
    p.r = cfg.r;
    Rng rng = Rng(cfg.seed).split(0);
    return contrastive_problem(p, rng).bench;
  }
  }
  throw ValidationError("make_benchmark: unknown problem");
}

std::string problem_id(const BenchConfig& cfg) {
  switch (cfg.kind) {
  case BenchKind::rosenbrock:
    return std::string("rosenbrock-") + tangency_name(cfg.tangency);
  case BenchKind::spd_academic:
    return "spd-academic-n" + std::to_string(cfg.n.value_or(4));
  case BenchKind::spd_contrastive:
    return "spd-contrastive-n" + std::to_string(cfg.n.value_or(5)) + "-m" +
           std::to_string(cfg.m) + "-r" + std::to_string(cfg.r);
  }
  return "unknown";
}

Point run_start(const Benchmark& bench, std::uint64_t seed, int run) {
  Rng rng = Rng(seed).split(static_cast<std::uint64_t>(run) + 1);
  return random_start(bench, rng);
}

bool BenchResult::stalled() const {
  for (const RunOutcome& r : runs)
    if (r.trace.exit == ExitReason::stalled)
      return true;
  return false;
}

std::vector<RunRecord> BenchResult::records() const {
  std::vector<RunRecord> out;
  out.reserve(runs.size());
  for (const RunOutcome& r : runs)
    out.push_back(r.record);
  return out;
}

BenchResult run_benchmark(const BenchConfig& cfg) {
  if (cfg.algorithms.empty())
    throw ValidationError("run_benchmark: no algorithm selected");
  if (!(cfg.eps > 0.0))
    throw ValidationError("run_benchmark: eps must be positive");
  if (cfg.max_outer < 0)
    throw ValidationError("run_benchmark: max-outer must be nonnegative");
  const int runs =
      cfg.runs.value_or(cfg.kind == BenchKind::rosenbrock        ? 5
                        : cfg.kind == BenchKind::spd_contrastive ? 10
                                                                 : 1);
  if (runs < 1)
    throw ValidationError("run_benchmark: runs must be positive");

  BenchResult result;
  result.bench = make_benchmark(cfg);
  const std::string id = problem_id(cfg);
  std::vector<Point> starts;
  for (int run = 0; run < runs; ++run)
    starts.push_back(run_start(result.bench, cfg.seed, run));

  const std::size_t jobs = cfg.algorithms.size() * static_cast<std::size_t>(runs);
  result.runs.resize(jobs);
  const auto work = [&](std::size_t job) {
    const Algorithm alg = cfg.algorithms[job / runs];
    const int run = static_cast<int>(job % runs);
    SolverConfig sc;
    sc.eps_base = cfg.eps;
    sc.max_outer = cfg.max_outer;
    sc.inner = cfg.inner;
    sc.algorithm = alg;
    RunOutcome& out = result.runs[job];
    out.trace = run_dca(result.bench.problem, starts[run], sc);
    RunRecord& rec = out.record;
    rec.problem = id;
    rec.algorithm = algorithm_name(alg);
    rec.run = run;
    rec.seed = cfg.seed;
    rec.k = out.trace.k;
    rec.inn = out.trace.inn;
    rec.inn_per_k = out.trace.inn_per_k;
    rec.fval = out.trace.fval;
    rec.grad_norm = out.trace.grad_norm;
    rec.time_s = out.trace.time_s;
  };

  const int threads = std::max(1, std::min<int>(cfg.threads, static_cast<int>(jobs)));
  if (threads == 1) {
    for (std::size_t job = 0; job < jobs; ++job)
      work(job);
    return result;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t job = next++; job < jobs; job = next++) {
        try {
          work(job);
        } catch (...) {
          if (!failed.exchange(true))
            failure = std::current_exception();
        }
      }
    });
  for (std::thread& t : pool)
    t.join();
  if (failure)
    std::rethrow_exception(failure);
  return result;
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<RunRecord>& rows) {
  out << kCsvHeader << '\n';
  for (const RunRecord& r : rows)
    out << r.problem << ',' << r.algorithm << ',' << r.run << ',' << r.seed << ',' << r.k << ','
        << r.inn << ',' << format_number(r.inn_per_k) << ',' << format_number(r.fval) << ','
        << format_number(r.grad_norm) << ',' << format_number(r.time_s) << '\n';
}

void write_json(std::ostream& out, const std::vector<RunRecord>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const RunRecord& r : rows)
    arr.push_back({{"problem", r.problem},
                   {"algorithm", r.algorithm},
                   {"run", r.run},
                   {"seed", r.seed},
                   {"k", r.k},
                   {"inn", r.inn},
                   {"inn_per_k", r.inn_per_k},
                   {"fval", r.fval},
                   {"grad_norm", r.grad_norm},
                   {"time_s", r.time_s}});
  out << arr.dump(2) << '\n';
}

} // namespace bdca
