#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bqs/compressors.hpp"
#include "bqs/errors.hpp"
#include "bqs/metrics.hpp"
#include "bqs/store.hpp"
#include "bqs/synth.hpp"
#include "bqs/track_io.hpp"
#include "bqs/verify.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

class BoundViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw bqs::DataError("cannot write " + path);
  }
  return out;
}

std::vector<bqs::TrackPoint> load_planar(const std::string& path, const std::string& format,
                                         const std::optional<bqs::GeoOrigin>& origin = {}) {
  bqs::TrackFile file = bqs::read_track_csv(std::filesystem::path(path));
  if (!format.empty()) {
    const auto want = format == "geo" ? bqs::TrackFormat::geo : bqs::TrackFormat::planar;
    if (want != file.format) {
      throw bqs::DataError(path + ": header does not match --format " + format);
    }
  }
  if (file.format == bqs::TrackFormat::planar) {
    return std::move(file.planar);
  }
  if (file.geo.empty()) {
    throw bqs::DataError(path + ": no fixes");
  }
  return origin ? bqs::project(file.geo, *origin) : bqs::project(file.geo);
}

struct CompressArgs {
  std::string algo = "fbqs";
  double epsilon = 0.0;
  std::size_t buffer = 32;
  std::string input, output, metrics, format;
  bool no_verify = false;
  bool no_timing = false;
};

int run_compress(const CompressArgs& a) {
  const std::vector<bqs::TrackPoint> points = load_planar(a.input, a.format);
  const bqs::CompressorConfig cfg{bqs::parse_algorithm(a.algo), a.epsilon, a.buffer};
  cfg.validate();

  bqs::CompressedTrajectory ct;
  double wall_ms = 0.0;
  if (a.no_timing) {
    ct = bqs::compress(points, cfg);
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    ct = bqs::compress(points, cfg);
    wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  std::optional<bqs::VerifyReport> report;
  if (!a.no_verify) {
    report = bqs::verify_error_bound(points, ct, a.epsilon);
  }
  {
    std::ofstream out = open_output(a.output);
    bqs::write_compressed_csv(out, ct);
  }
  if (!a.metrics.empty()) {
    bqs::BenchRow row;
    row.algorithm = cfg.algorithm;
    row.epsilon_m = cfg.epsilon_d;
    row.buffer = bqs::uses_buffer(cfg.algorithm) ? cfg.buffer_size : 0;
    row.n_in = ct.stats.points_in;
    row.n_kept = ct.stats.points_kept;
    row.rate = bqs::compression_rate(row.n_kept, row.n_in);
    if (cfg.algorithm == bqs::Algorithm::bqs) {
      row.pruning_power = bqs::pruning_power(ct.stats.full_computations, ct.stats.points_in);
    }
    row.max_dev_m = report ? report->max_deviation : 0.0;
    row.wall_ms = wall_ms;
    row.verified = report && report->ok();
    auto rows = nlohmann::ordered_json::parse(bqs::bench_to_json({&row, 1}));
    std::ofstream out = open_output(a.metrics);
    out << rows.at(0).dump(2) << '\n';
  }
  if (report && !report->ok()) {
    const auto& v = report->violations.front();
    throw BoundViolation("error bound violated: point " + std::to_string(v.index) +
                         " deviates " + bqs::format_number(v.deviation) + " m (" +
                         std::to_string(report->violations.size()) + " violations)");
  }
  std::cout << ct.stats.points_kept << " of " << ct.stats.points_in << " points kept\n";
  return 0;
}

struct IngestArgs {
  std::string db, input, format;
  double epsilon = 0.0;
  double epsilon_merge = 0.0;
  double epoch = 0.0;
};

int run_ingest(const IngestArgs& a) {
  if (a.epsilon_merge < a.epsilon) {
    throw std::invalid_argument("--epsilon-merge must be >= --epsilon");
  }
  bqs::TrajectoryStore store = std::filesystem::exists(a.db)
                                   ? bqs::TrajectoryStore::load(a.db)
                                   : bqs::TrajectoryStore(4.0 * a.epsilon_merge);
  bqs::TrackFile file = bqs::read_track_csv(std::filesystem::path(a.input));
  std::vector<bqs::TrackPoint> points;
  if (file.format == bqs::TrackFormat::geo) {
    if (file.geo.empty()) {
      throw bqs::DataError(a.input + ": no fixes");
    }
    if (!store.origin()) {
      store.set_origin({file.geo.front().lat, file.geo.front().lon});
    }
    points = bqs::project(file.geo, *store.origin());
  } else {
    points = std::move(file.planar);
  }
  const bqs::CompressedTrajectory ct = bqs::compress_fbqs(points, a.epsilon);
  const auto week = static_cast<std::int64_t>(
      std::floor((points.front().t - a.epoch) / bqs::kSecondsPerWeek));
  const bqs::TrajectoryId tid = store.create_trajectory(week, a.epsilon);
  std::size_t merged = 0;
  for (std::size_t i = 0; i + 1 < ct.kept.size(); ++i) {
    const auto outcome = store.insert_with_merge(
        {tid, ct.kept[i], ct.kept[i + 1], ct.segment_bounds[i]}, a.epsilon_merge);
    merged += outcome.merged_into ? 1 : 0;
  }
  store.check_consistency();
  store.save(a.db);
  std::cout << "trajectory " << tid << ": " << ct.kept.size() - 1 << " segments, " << merged
            << " merged, week " << week << '\n';
  return 0;
}

struct AgeArgs {
  std::string db;
  double alpha = 1.5;
  double max_weeks = 10.0;
  std::int64_t week = 0;
};

int run_age(const AgeArgs& a) {
  bqs::TrajectoryStore store = bqs::TrajectoryStore::load(a.db);
  const bqs::AgeStats stats = store.age_pass(a.week, {a.alpha, a.max_weeks});
  store.check_consistency();
  store.save(a.db);
  std::cout << "recompressed " << stats.recompressed << ", evicted " << stats.evicted
            << ", skipped " << stats.skipped << ", points removed " << stats.points_removed
            << '\n';
  return 0;
}

struct SynthArgs {
  bqs::SynthParams params;
  double speed_median = 9.7;
  std::string output;
};

int run_synth(SynthArgs a) {
  a.params.speed_log_mean = std::log(a.speed_median);
  const auto points = bqs::generate(a.params);
  std::ofstream out = open_output(a.output);
  bqs::write_track_csv(out, points);
  return 0;
}

struct EstimateArgs {
  double budget = 51200.0;
  double sample_bytes = 12.0;
  double samples_per_day = 1440.0;
  double rate = 0.0;
};

struct BenchArgs {
  std::string input, output, format;
  std::vector<double> epsilons;
  std::vector<std::string> algos;
  std::vector<std::size_t> buffers{32};
  bool no_timing = false;
};

int run_bench(const BenchArgs& a) {
  const auto points = load_planar(a.input, a.format);
  std::vector<bqs::Algorithm> algos;
  for (const auto& name : a.algos) {
    algos.push_back(bqs::parse_algorithm(name));
  }
  const auto rows =
      bqs::run_benchmark(points, a.epsilons, algos, a.buffers, {.measure_time = !a.no_timing});
  {
    std::ofstream out = open_output(a.output);
    out << bqs::bench_to_json(rows);
  }
  for (const auto& r : rows) {
    if (!r.verified) {
      throw BoundViolation("benchmark row " + std::string(bqs::to_string(r.algorithm)) + " @ " +
                           bqs::format_number(r.epsilon_m) + " m failed verification");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-bounded trajectory compression toolkit"};
  app.require_subcommand(1);

  CompressArgs compress_args;
  auto* compress = app.add_subcommand("compress", "Compress a track CSV");
  compress->add_option("--algo", compress_args.algo, "bqs|fbqs|bdp|bgd|dp|dr")
      ->check(CLI::IsMember({"bqs", "fbqs", "bdp", "bgd", "dp", "dr"}));
  compress->add_option("--epsilon", compress_args.epsilon, "Deviation tolerance (m)")
      ->required()
      ->check(CLI::PositiveNumber);
  compress->add_option("--buffer", compress_args.buffer, "Buffer size (points)")
      ->check(CLI::Range(2, 1 << 30));
  compress->add_option("--input", compress_args.input)->required();
  compress->add_option("--output", compress_args.output)->required();
  compress->add_option("--metrics", compress_args.metrics, "Write metrics JSON here");
  compress->add_option("--format", compress_args.format)->check(CLI::IsMember({"geo", "planar"}));
  compress->add_flag("--no-verify", compress_args.no_verify, "Skip the error-bound verifier");
  compress->add_flag("--no-timing", compress_args.no_timing, "Report wall_ms as 0");

  auto* store_cmd = app.add_subcommand("store", "Trajectory store maintenance");
  store_cmd->require_subcommand(1);
  IngestArgs ingest_args;
  auto* ingest = store_cmd->add_subcommand("ingest", "Compress with FBQS and merge into the store");
  ingest->add_option("--db", ingest_args.db)->required();
  ingest->add_option("--epsilon", ingest_args.epsilon)->required()->check(CLI::PositiveNumber);
  ingest->add_option("--epsilon-merge", ingest_args.epsilon_merge)
      ->required()
      ->check(CLI::PositiveNumber);
  ingest->add_option("--input", ingest_args.input)->required();
  ingest->add_option("--epoch", ingest_args.epoch, "Week 0 start (unix seconds)");
  AgeArgs age_args;
  auto* age = store_cmd->add_subcommand("age", "Recompress aged trajectories, evict old ones");
  age->add_option("--db", age_args.db)->required();
  age->add_option("--alpha", age_args.alpha)->check(CLI::PositiveNumber);
  age->add_option("--max-weeks", age_args.max_weeks)->check(CLI::Range(1.0, 1e9));
  age->add_option("--week", age_args.week)->required();

  SynthArgs synth_args;
  auto* synth = app.add_subcommand("synth", "Generate a synthetic movement track");
  synth->add_option("--points", synth_args.params.n_points)->check(CLI::Range(2, 1 << 30));
  synth->add_option("--bounds", synth_args.params.bounds)->check(CLI::PositiveNumber);
  synth->add_option("--seed", synth_args.params.seed);
  synth->add_option("--kappa", synth_args.params.kappa)->check(CLI::NonNegativeNumber);
  synth->add_option("--mean-move", synth_args.params.mean_move_duration)->check(CLI::PositiveNumber);
  synth->add_option("--mean-wait", synth_args.params.mean_wait_duration)->check(CLI::NonNegativeNumber);
  synth->add_option("--speed-median", synth_args.speed_median)->check(CLI::PositiveNumber);
  synth->add_option("--speed-sigma", synth_args.params.speed_log_sigma)->check(CLI::NonNegativeNumber);
  synth->add_option("--speed-cap", synth_args.params.speed_cap)->check(CLI::PositiveNumber);
  synth->add_option("--interval", synth_args.params.sample_interval)->check(CLI::PositiveNumber);
  synth->add_option("--output", synth_args.output)->required();

  EstimateArgs est;
  auto* estimate = app.add_subcommand("estimate", "Days of operation a storage budget lasts");
  estimate->add_option("--budget-bytes", est.budget)->check(CLI::PositiveNumber);
  estimate->add_option("--sample-bytes", est.sample_bytes)->check(CLI::PositiveNumber);
  estimate->add_option("--samples-per-day", est.samples_per_day)->check(CLI::PositiveNumber);
  estimate->add_option("--rate", est.rate)->required()->check(CLI::Range(0.0, 1.0));

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Run and verify a compressor sweep");
  bench->add_option("--input", bench_args.input)->required();
  bench->add_option("--epsilons", bench_args.epsilons)->required()->delimiter(',');
  bench->add_option("--algos", bench_args.algos)
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember({"bqs", "fbqs", "bdp", "bgd", "dp", "dr"}));
  bench->add_option("--buffers", bench_args.buffers)->delimiter(',');
  bench->add_option("--output", bench_args.output)->required();
  bench->add_option("--format", bench_args.format)->check(CLI::IsMember({"geo", "planar"}));
  bench->add_flag("--no-timing", bench_args.no_timing, "Report wall_ms as 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*compress) {
      return run_compress(compress_args);
    }
    if (*ingest) {
      return run_ingest(ingest_args);
    }
    if (*age) {
      return run_age(age_args);
    }
    if (*synth) {
      return run_synth(synth_args);
    }
    if (*estimate) {
      std::cout << bqs::operational_time_days(est.budget, est.sample_bytes, est.samples_per_day,
                                              est.rate)
                << '\n';
      return 0;
    }
    if (*bench) {
      return run_bench(bench_args);
    }
  } catch (const BoundViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const bqs::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const bqs::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
