#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "bqs/metrics.hpp"
#include "bqs/synth.hpp"

namespace bqs {
namespace {

TEST(Metrics, Rates) {
  EXPECT_EQ(compression_rate(5, 100), 0.05);
  EXPECT_EQ(compression_rate(100, 100), 1.0);
  EXPECT_THROW(compression_rate(1, 0), std::invalid_argument);
  EXPECT_THROW(compression_rate(2, 1), std::invalid_argument);
  EXPECT_EQ(pruning_power(0, 10), 1.0);
  EXPECT_EQ(pruning_power(3, 12), 0.75);
  EXPECT_THROW(pruning_power(0, 0), std::invalid_argument);
  EXPECT_THROW(pruning_power(5, 4), std::invalid_argument);
}

TEST(Metrics, OperationalTimeTable) {
  const struct {
    double rate;
    std::int64_t days;
  } table[] = {{0.048, 62}, {0.050, 60}, {0.0665, 45}, {0.0675, 44}, {0.0665, 45}};
  for (const auto& row : table) {
    EXPECT_EQ(operational_time_days(51200, 12, 1440, row.rate), row.days) << row.rate;
  }
}

TEST(Metrics, OperationalTimeRejectsBadInput) {
  EXPECT_THROW(operational_time_days(0, 1, 1, 0.5), std::invalid_argument);
  EXPECT_THROW(operational_time_days(1, 0, 1, 0.5), std::invalid_argument);
  EXPECT_THROW(operational_time_days(1, 1, -1, 0.5), std::invalid_argument);
  EXPECT_THROW(operational_time_days(1, 1, 1, 0), std::invalid_argument);
  EXPECT_THROW(operational_time_days(1, 1, 1, 1.5), std::invalid_argument);
  EXPECT_EQ(operational_time_days(10, 1, 10, 1.0), 1);
}

TEST(Benchmark, RowLayoutAndVerification) {
  SynthParams p;
  p.n_points = 3000;
  const auto pts = generate(p);
  const std::vector<double> eps{5, 10};
  const std::vector<Algorithm> algos{Algorithm::bqs, Algorithm::dp, Algorithm::dr};
  const std::vector<std::size_t> buffers{16, 32};
  const auto rows = run_benchmark(pts, eps, algos, buffers, {false});
  // bqs: 2 eps x 2 buffers; dp and dr: 2 eps each.
  ASSERT_EQ(rows.size(), 8u);
  for (const BenchRow& r : rows) {
    EXPECT_TRUE(r.verified);
    EXPECT_EQ(r.n_in, pts.size());
    EXPECT_LE(r.max_dev_m, r.epsilon_m);
    EXPECT_EQ(r.wall_ms, 0.0);
    EXPECT_EQ(r.pruning_power.has_value(), r.algorithm == Algorithm::bqs);
    EXPECT_EQ(r.buffer == 0, !uses_buffer(r.algorithm));
  }
  EXPECT_EQ(rows[0].buffer, 16u);
  EXPECT_EQ(rows[1].buffer, 32u);
  EXPECT_EQ(rows[2].epsilon_m, 10.0);
}

TEST(Benchmark, ParallelMatchesSerial) {
  SynthParams p;
  p.n_points = 4000;
  p.seed = 3;
  const auto pts = generate(p);
  const std::vector<double> eps{2, 5, 20};
  const std::vector<std::size_t> buffers{32};
  const auto par = run_benchmark(pts, eps, kAllAlgorithms, buffers, {false});
  const auto ser = run_benchmark_serial(pts, eps, kAllAlgorithms, buffers, {false});
  EXPECT_EQ(bench_to_json(par), bench_to_json(ser));
}

TEST(Benchmark, JsonKeys) {
  BenchRow r;
  r.algorithm = Algorithm::dp;
  r.epsilon_m = 5;
  r.n_in = 10;
  r.n_kept = 2;
  r.rate = 0.2;
  const auto j = nlohmann::json::parse(bench_to_json(std::vector<BenchRow>{r}));
  ASSERT_TRUE(j.is_array());
  ASSERT_EQ(j.size(), 1u);
  for (const char* key : {"algorithm", "epsilon_m", "buffer", "n_in", "n_kept", "rate",
                          "pruning_power", "max_dev_m", "wall_ms", "verified"}) {
    EXPECT_TRUE(j[0].contains(key)) << key;
  }
  EXPECT_EQ(j[0]["algorithm"], "dp");
  EXPECT_TRUE(j[0]["pruning_power"].is_null());
}

TEST(Benchmark, RejectsEmptyBuffers) {
  const std::vector<TrackPoint> pts{{0, 0, 0}, {1, 1, 1}};
  const std::vector<double> eps{5};
  EXPECT_THROW(run_benchmark(pts, eps, kAllAlgorithms, {}, {false}), std::invalid_argument);
}

}  // namespace
}  // namespace bqs
