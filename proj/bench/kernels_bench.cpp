// Parallel kernels against their serial references.
#include <vector>

#include <benchmark/benchmark.h>

#include "bqs/metrics.hpp"
#include "bqs/synth.hpp"
#include "bqs/verify.hpp"

namespace {

const std::vector<bqs::TrackPoint>& stream() {
  static const std::vector<bqs::TrackPoint> pts = [] {
    bqs::SynthParams p;
    p.n_points = 200000;
    return bqs::generate(p);
  }();
  return pts;
}

const bqs::CompressedTrajectory& compressed() {
  static const bqs::CompressedTrajectory ct = bqs::compress_fbqs(stream(), 10.0);
  return ct;
}

void BM_VerifySerial(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bqs::verify_error_bound_serial(stream(), compressed(), 10.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream().size()));
}

void BM_VerifyParallel(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(bqs::verify_error_bound(stream(), compressed(), 10.0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(stream().size()));
}

const std::vector<double> kEpsilons{2, 5, 10, 20, 50};
const std::vector<std::size_t> kBuffers{32};

void BM_BenchmarkSerial(benchmark::State& state) {
  const std::span<const bqs::TrackPoint> pts(stream().data(), 30000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bqs::run_benchmark_serial(pts, kEpsilons, bqs::kAllAlgorithms, kBuffers, {false}));
  }
}

void BM_BenchmarkParallel(benchmark::State& state) {
  const std::span<const bqs::TrackPoint> pts(stream().data(), 30000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bqs::run_benchmark(pts, kEpsilons, bqs::kAllAlgorithms, kBuffers, {false}));
  }
}

}  // namespace

BENCHMARK(BM_VerifySerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_VerifyParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BenchmarkSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BenchmarkParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
