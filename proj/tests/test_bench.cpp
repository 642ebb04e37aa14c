#include "bdca/bench.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace bdca;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);)
    out.push_back(l);
  return out;
}

std::vector<RunRecord> without_time(std::vector<RunRecord> rows) {
  for (RunRecord& r : rows)
    r.time_s = 0.0;
  return rows;
}

std::string csv(const std::vector<RunRecord>& rows) {
  std::ostringstream out;
  write_csv(out, rows);
  return out.str();
}

BenchConfig small_academic() {
  BenchConfig cfg;
  cfg.kind = BenchKind::spd_academic;
  return cfg;
}

} // namespace

TEST(Bench, FormatNumberRoundTrips) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  for (double x : {1.0 / 3.0, -0.25, 6.02e23, 1e-300}) {
    EXPECT_EQ(std::stod(format_number(x)), x);
  }
}

TEST(Bench, CsvHeaderAndColumns) {
  RunRecord r;
  r.problem = "p";
  r.algorithm = "cr";
  r.fval = 1.0 / 3.0;
  const std::vector<std::string> out = lines(csv({r, r}));
  ASSERT_EQ(out.size(), 3u);
  EXPECT_EQ(out[0], kCsvHeader);
  EXPECT_EQ(std::count(out[1].begin(), out[1].end(), ','), 9);
  EXPECT_NE(out[1].find("0.33333333333333331"), std::string::npos);
}

TEST(Bench, JsonHasCsvKeys) {
  RunRecord r;
  r.problem = "p";
  r.algorithm = "b";
  r.k = 3;
  r.fval = -0.25;
  std::ostringstream out;
  write_json(out, {r});
  const nlohmann::json j = nlohmann::json::parse(out.str());
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  std::vector<std::string> keys;
  for (const auto& [key, value] : j[0].items())
    keys.push_back(key);
  EXPECT_EQ(keys.size(), 10u);
  EXPECT_EQ(j[0]["k"], 3);
  EXPECT_EQ(j[0]["fval"].get<double>(), -0.25);
  EXPECT_EQ(j[0]["algorithm"], "b");
}

TEST(Bench, ProblemIds) {
  BenchConfig cfg;
  EXPECT_EQ(problem_id(cfg), "rosenbrock-internal");
  cfg.tangency = Tangency::external;
  EXPECT_EQ(problem_id(cfg), "rosenbrock-external");
  EXPECT_EQ(problem_id(small_academic()), "spd-academic-n4");
  cfg.kind = BenchKind::spd_contrastive;
  cfg.r = 4;
  EXPECT_EQ(problem_id(cfg), "spd-contrastive-n5-m5-r4");
}

TEST(Bench, DefaultRunCounts) {
  BenchConfig cfg;
  EXPECT_EQ(run_benchmark(cfg).runs.size(), 10u);
  EXPECT_EQ(run_benchmark(small_academic()).runs.size(), 2u);
  cfg.algorithms = {Algorithm::b_dca};
  cfg.runs = 3;
  const BenchResult r = run_benchmark(cfg);
  ASSERT_EQ(r.runs.size(), 3u);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r.runs[i].record.algorithm, "b");
    EXPECT_EQ(r.runs[i].record.run, i);
  }
}

TEST(Bench, RecordsAreConsistentWithTraces) {
  for (const RunOutcome& o : run_benchmark(small_academic()).runs) {
    EXPECT_EQ(o.record.k, static_cast<int>(o.trace.records.size()) - 1);
    EXPECT_EQ(o.record.grad_norm, o.trace.grad_norm);
    EXPECT_EQ(o.record.fval, o.trace.records.back().fval);
    EXPECT_GE(o.record.time_s, 0.0);
  }
}

TEST(Bench, DeterministicModuloTime) {
  BenchConfig cfg;
  cfg.kind = BenchKind::spd_contrastive;
  cfg.runs = 3;
  cfg.seed = 11;
  EXPECT_EQ(csv(without_time(run_benchmark(cfg).records())),
            csv(without_time(run_benchmark(cfg).records())));
}

TEST(Bench, ThreadCountDoesNotChangeRows) {
  BenchConfig cfg;
  cfg.runs = 4;
  cfg.threads = 1;
  const std::string one = csv(without_time(run_benchmark(cfg).records()));
  cfg.threads = 3;
  EXPECT_EQ(one, csv(without_time(run_benchmark(cfg).records())));
}

TEST(Bench, SeedsChangeStarts) {
  BenchConfig cfg;
  const Benchmark b = make_benchmark(cfg);
  EXPECT_NE(run_start(b, 1, 0).coords, run_start(b, 1, 1).coords);
  EXPECT_NE(run_start(b, 1, 0).coords, run_start(b, 2, 0).coords);
  EXPECT_EQ(run_start(b, 5, 2).coords, run_start(b, 5, 2).coords);
}

TEST(Bench, InvalidConfigsThrow) {
  BenchConfig cfg = small_academic();
  cfg.n = 2;
  EXPECT_THROW(run_benchmark(cfg), ConstructionError);
  cfg = BenchConfig{};
  cfg.runs = 0;
  EXPECT_THROW(run_benchmark(cfg), Error);
}

TEST(Bench, VerifyPassesAndZeroScaleFails) {
  VerifyConfig vc;
  vc.samples = 5;
  EXPECT_TRUE(run_verify(vc).passed());
  vc.tolerance_scale = 0.0;
  EXPECT_FALSE(run_verify(vc).passed());
}
