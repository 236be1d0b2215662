#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "bqs/geometry.hpp"
#include "bqs/quadrant_system.hpp"

namespace bqs {

enum class Algorithm { bqs, fbqs, bdp, bgd, dp, dr };

std::string_view to_string(Algorithm algo);
/// Accepts the lower-case names used on the command line.
Algorithm parse_algorithm(std::string_view name);
inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::bqs, Algorithm::fbqs,
                                               Algorithm::bdp, Algorithm::bgd,
                                               Algorithm::dp,  Algorithm::dr};

struct CompressorConfig {
  Algorithm algorithm = Algorithm::fbqs;
  double epsilon_d = 10.0;       // meters
  std::size_t buffer_size = 32;  // points; BQS, BDP and BGD only

  void validate() const;
};

struct CompressionStats {
  std::size_t points_in = 0;
  std::size_t points_kept = 0;
  std::size_t full_computations = 0;
};

struct CompressedTrajectory {
  Algorithm algorithm = Algorithm::fbqs;
  std::vector<TrackPoint> kept;
  std::vector<double> segment_bounds;  // d_tau of [kept[i], kept[i+1]]
  CompressionStats stats;
};

enum class StepAction { continue_segment, split_at_previous };

struct StepDecision {
  StepAction action = StepAction::continue_segment;
  std::optional<TrackPoint> emitted;
};

/// Fast BQS: constant time and space per point. Resolves the uncertain band
/// lb <= eps < ub by splitting at the previous point without inspecting any
/// buffered data.
class FbqsCompressor {
 public:
  FbqsCompressor(const TrackPoint& start, double epsilon);

  StepDecision step(const TrackPoint& p);
  /// Closes the stream; returns the final endpoint if one is pending.
  std::optional<TrackPoint> finish();

  /// Certified bound of the segment closed by the last emitted point.
  double closed_segment_bound() const { return closed_bound_; }
  const BqsState& state() const { return state_; }

 private:
  double epsilon_;
  BqsState state_;
  TrackPoint start_;
  std::optional<TrackPoint> previous_;
  double current_bound_ = 0.0;
  double closed_bound_ = 0.0;
};

/// Exact BQS: like FBQS, but the uncertain band is settled by a full
/// deviation computation over the buffered segment points. Once a segment
/// outgrows the buffer it is decided by the FBQS rule.
class BqsCompressor {
 public:
  BqsCompressor(const TrackPoint& start, double epsilon, std::size_t buffer_size);

  StepDecision step(const TrackPoint& p);
  std::optional<TrackPoint> finish();

  double closed_segment_bound() const { return closed_bound_; }
  std::size_t full_computations() const { return full_computations_; }

 private:
  void restart(const TrackPoint& new_start, const TrackPoint& first_end);
  double exact_deviation(Vec2 end) const;

  double epsilon_;
  std::size_t capacity_;
  BqsState state_;
  TrackPoint start_;
  std::optional<TrackPoint> previous_;
  std::vector<Vec2> buffer_;
  bool overflowed_ = false;
  double current_bound_ = 0.0;
  double closed_bound_ = 0.0;
  std::size_t full_computations_ = 0;
};

/// Validates input (>= 2 finite points, strictly increasing t) and runs the
/// configured algorithm. Throws std::invalid_argument on bad input.
CompressedTrajectory compress(std::span<const TrackPoint> points, const CompressorConfig& cfg);

CompressedTrajectory compress_fbqs(std::span<const TrackPoint> points, double epsilon);
CompressedTrajectory compress_bqs(std::span<const TrackPoint> points, double epsilon,
                                  std::size_t buffer_size);
CompressedTrajectory compress_bdp(std::span<const TrackPoint> points, double epsilon,
                                  std::size_t buffer_size);
CompressedTrajectory compress_bgd(std::span<const TrackPoint> points, double epsilon,
                                  std::size_t buffer_size);
CompressedTrajectory compress_dp(std::span<const TrackPoint> points, double epsilon);
CompressedTrajectory compress_dr(std::span<const TrackPoint> points, double epsilon);

/// Throws std::invalid_argument unless points has >= 2 finite entries with
/// strictly increasing timestamps.
void validate_stream(std::span<const TrackPoint> points);

/// Velocity used by dead reckoning when point i is kept: finite difference to
/// the preceding raw point, zero for the first point.
Vec2 dead_reckoning_velocity(std::span<const TrackPoint> points, std::size_t i);

}  // namespace bqs
