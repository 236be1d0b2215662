#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bqs/compressors.hpp"

namespace bqs {

/// Kept over original points; lower is better.
double compression_rate(std::size_t n_kept, std::size_t n_original);

/// 1 - computed/total: share of points decided from bounds alone.
double pruning_power(std::size_t n_computed, std::size_t n_total);

/// Days a storage budget lasts: ceil(budget / (bytes_per_sample *
/// samples_per_day * rate)). Throws std::invalid_argument on non-positive
/// input or rate > 1.
std::int64_t operational_time_days(double budget_bytes, double bytes_per_sample,
                                   double samples_per_day, double rate);

struct BenchRow {
  Algorithm algorithm = Algorithm::fbqs;
  double epsilon_m = 0.0;
  std::size_t buffer = 0;  // 0 for algorithms without a buffer
  std::size_t n_in = 0;
  std::size_t n_kept = 0;
  double rate = 0.0;
  std::optional<double> pruning_power;  // BQS only
  double max_dev_m = 0.0;
  double wall_ms = 0.0;
  bool verified = false;
};

struct BenchOptions {
  bool measure_time = true;  // false: wall_ms stays 0, no warmup run
};

/// Runs every (algorithm, epsilon, buffer) combination; buffer sizes only
/// multiply the buffer-dependent algorithms. Each row is checked by the
/// brute-force verifier; a row with violations has verified == false.
/// Rows run in parallel; order is deterministic.
std::vector<BenchRow> run_benchmark(std::span<const TrackPoint> points,
                                    std::span<const double> epsilons,
                                    std::span<const Algorithm> algorithms,
                                    std::span<const std::size_t> buffers,
                                    const BenchOptions& options = {});

/// Single-threaded reference of run_benchmark.
std::vector<BenchRow> run_benchmark_serial(std::span<const TrackPoint> points,
                                           std::span<const double> epsilons,
                                           std::span<const Algorithm> algorithms,
                                           std::span<const std::size_t> buffers,
                                           const BenchOptions& options = {});

bool uses_buffer(Algorithm algo);

/// JSON array of rows with keys algorithm, epsilon_m, buffer, n_in, n_kept,
/// rate, pruning_power, max_dev_m, wall_ms, verified.
std::string bench_to_json(std::span<const BenchRow> rows);

}  // namespace bqs
