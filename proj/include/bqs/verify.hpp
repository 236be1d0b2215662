#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bqs/compressors.hpp"

namespace bqs {

/// How a raw point's error is measured against its covering output segment.
enum class ErrorModel {
  line_deviation,  // distance to the carrier line of the segment
  dead_reckoning,  // distance to the position extrapolated from the segment start
};

ErrorModel error_model_for(Algorithm algo);

struct Violation {
  std::size_t index = 0;  // into the raw stream
  double deviation = 0.0;
};

struct VerifyReport {
  double max_deviation = 0.0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Brute-force check of the error bound: every raw point is compared with the
/// output segment covering its timestamp. Parallel over raw points.
/// Throws std::invalid_argument when ct.kept is not a subsequence of raw that
/// starts and ends on the raw endpoints.
VerifyReport verify_error_bound(std::span<const TrackPoint> raw, const CompressedTrajectory& ct,
                                double epsilon);

/// Single-threaded reference implementation of verify_error_bound.
VerifyReport verify_error_bound_serial(std::span<const TrackPoint> raw,
                                       const CompressedTrajectory& ct, double epsilon);

}  // namespace bqs
