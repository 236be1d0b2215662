#include "bqs/metrics.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "bqs/verify.hpp"

namespace bqs {

double compression_rate(std::size_t n_kept, std::size_t n_original) {
  if (n_original == 0) {
    throw std::invalid_argument("compression_rate: zero original points");
  }
  if (n_kept > n_original) {
    throw std::invalid_argument("compression_rate: kept exceeds original");
  }
  return static_cast<double>(n_kept) / static_cast<double>(n_original);
}

double pruning_power(std::size_t n_computed, std::size_t n_total) {
  if (n_total == 0) {
    throw std::invalid_argument("pruning_power: zero total points");
  }
  if (n_computed > n_total) {
    throw std::invalid_argument("pruning_power: computed exceeds total");
  }
  return 1.0 - static_cast<double>(n_computed) / static_cast<double>(n_total);
}

std::int64_t operational_time_days(double budget_bytes, double bytes_per_sample,
                                   double samples_per_day, double rate) {
  if (!(budget_bytes > 0.0) || !(bytes_per_sample > 0.0) || !(samples_per_day > 0.0) ||
      !(rate > 0.0) || rate > 1.0) {
    throw std::invalid_argument("operational_time_days: inputs must be positive, rate <= 1");
  }
  return static_cast<std::int64_t>(
      std::ceil(budget_bytes / (bytes_per_sample * samples_per_day * rate)));
}

bool uses_buffer(Algorithm algo) {
  return algo == Algorithm::bqs || algo == Algorithm::bdp || algo == Algorithm::bgd;
}

namespace {

struct RowSpec {
  Algorithm algorithm;
  double epsilon;
  std::size_t buffer;
};

std::vector<RowSpec> expand(std::span<const double> epsilons, std::span<const Algorithm> algorithms,
                            std::span<const std::size_t> buffers) {
  if (buffers.empty()) {
    throw std::invalid_argument("run_benchmark: at least one buffer size is required");
  }
  std::vector<RowSpec> specs;
  for (Algorithm a : algorithms) {
    for (double eps : epsilons) {
      if (uses_buffer(a)) {
        for (std::size_t b : buffers) {
          specs.push_back({a, eps, b});
        }
      } else {
        specs.push_back({a, eps, 0});
      }
    }
  }
  return specs;
}

BenchRow run_row(std::span<const TrackPoint> points, const RowSpec& spec,
                 const BenchOptions& options) {
  const CompressorConfig cfg{spec.algorithm, spec.epsilon, spec.buffer == 0 ? 32 : spec.buffer};
  BenchRow row;
  row.algorithm = spec.algorithm;
  row.epsilon_m = spec.epsilon;
  row.buffer = spec.buffer;

  CompressedTrajectory ct;
  if (options.measure_time) {
    (void)compress(points, cfg);  // warmup
    const auto t0 = std::chrono::steady_clock::now();
    ct = compress(points, cfg);
    const auto t1 = std::chrono::steady_clock::now();
    row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  } else {
    ct = compress(points, cfg);
  }
  row.n_in = ct.stats.points_in;
  row.n_kept = ct.stats.points_kept;
  row.rate = compression_rate(row.n_kept, row.n_in);
  if (spec.algorithm == Algorithm::bqs) {
    row.pruning_power = pruning_power(ct.stats.full_computations, ct.stats.points_in);
  }
  const VerifyReport report = verify_error_bound_serial(points, ct, spec.epsilon);
  row.max_dev_m = report.max_deviation;
  row.verified = report.ok();
  return row;
}

}  // namespace

std::vector<BenchRow> run_benchmark(std::span<const TrackPoint> points,
                                    std::span<const double> epsilons,
                                    std::span<const Algorithm> algorithms,
                                    std::span<const std::size_t> buffers,
                                    const BenchOptions& options) {
  validate_stream(points);
  const std::vector<RowSpec> specs = expand(epsilons, algorithms, buffers);
  std::vector<BenchRow> rows(specs.size());
  const auto n = static_cast<std::ptrdiff_t>(specs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] = run_row(points, specs[static_cast<std::size_t>(i)], options);
  }
  return rows;
}

std::vector<BenchRow> run_benchmark_serial(std::span<const TrackPoint> points,
                                           std::span<const double> epsilons,
                                           std::span<const Algorithm> algorithms,
                                           std::span<const std::size_t> buffers,
                                           const BenchOptions& options) {
  validate_stream(points);
  std::vector<BenchRow> rows;
  for (const RowSpec& spec : expand(epsilons, algorithms, buffers)) {
    rows.push_back(run_row(points, spec, options));
  }
  return rows;
}

std::string bench_to_json(std::span<const BenchRow> rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const BenchRow& r : rows) {
    nlohmann::ordered_json j;
    j["algorithm"] = std::string(to_string(r.algorithm));
    j["epsilon_m"] = r.epsilon_m;
    j["buffer"] = r.buffer;
    j["n_in"] = r.n_in;
    j["n_kept"] = r.n_kept;
    j["rate"] = r.rate;
    j["pruning_power"] = r.pruning_power ? nlohmann::ordered_json(*r.pruning_power) : nullptr;
    j["max_dev_m"] = r.max_dev_m;
    j["wall_ms"] = r.wall_ms;
    j["verified"] = r.verified;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

}  // namespace bqs
