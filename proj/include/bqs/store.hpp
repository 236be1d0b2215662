#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "bqs/geometry.hpp"
#include "bqs/grid_index.hpp"

namespace bqs {

inline constexpr double kEarthRadiusM = 6371000.0;
inline constexpr double kSecondsPerWeek = 604800.0;

struct GeoFix {
  double t = 0.0;
  double lat = 0.0;  // degrees
  double lon = 0.0;  // degrees
};

struct GeoOrigin {
  double lat0 = 0.0;
  double lon0 = 0.0;
};

/// Equirectangular projection about the first fix (which maps to (0,0)).
/// Throws std::invalid_argument on empty input or out-of-range coordinates.
std::vector<TrackPoint> project(std::span<const GeoFix> fixes);
std::vector<TrackPoint> project(std::span<const GeoFix> fixes, GeoOrigin origin);

using SegmentId = std::uint64_t;
using TrajectoryId = std::uint64_t;

struct SegmentRecord {
  SegmentId id = 0;
  TrackPoint s;
  TrackPoint e;
  double d_tau = 0.0;
  BBox bbox;  // tight endpoint box expanded by d_tau
  std::set<TrajectoryId> owners;

  PlanarSegment geometry() const { return {s.pos(), e.pos()}; }
};

/// One trajectory -> segment link with the trajectory's own time span.
struct SegmentLink {
  SegmentId segment = 0;
  double t_start = 0.0;
  double t_end = 0.0;
  bool reversed = false;  // traversed from the segment's e to its s
};

struct TrajectoryRecord {
  TrajectoryId id = 0;
  std::vector<SegmentLink> links;  // temporal order
  std::int64_t created_week = 0;
  double epsilon_d = 0.0;
};

struct AgeingPolicy {
  double alpha = 1.5;
  double m_bar = 10.0;  // weeks a trajectory is kept

  void validate() const;
};

/// Logistic significance 1 / (1 + e^(alpha*i - m_bar)) of a trajectory aged i.
double significance(double age_weeks, const AgeingPolicy& policy);

/// eps_d / significance(i): the coarser tolerance for recompression.
double aged_tolerance(double epsilon_d, double age_weeks, const AgeingPolicy& policy);

struct SegmentCandidate {
  TrajectoryId owner = 0;
  TrackPoint s;
  TrackPoint e;
  double d_tau = 0.0;
};

struct MergeOutcome {
  std::optional<SegmentId> merged_into;
  SegmentId segment = 0;  // the segment now linked to the trajectory
  double merged_bound = 0.0;  // d_merged.ub of the nearest candidate, if any
};

struct AgeStats {
  std::size_t recompressed = 0;
  std::size_t evicted = 0;
  std::size_t skipped = 0;
  std::size_t points_removed = 0;
};

/// Compressed-trajectory database: segments with deviation bounds, a grid
/// index over their loosened boxes and the two-way trajectory/segment index.
/// Single writer; const member functions may run concurrently.
class TrajectoryStore {
 public:
  explicit TrajectoryStore(double cell_size = 40.0);

  TrajectoryId create_trajectory(std::int64_t created_week, double epsilon_d);

  /// Error-bounded merge of one freshly compressed segment. Throws
  /// std::invalid_argument when epsilon_m < the owner's epsilon_d or the owner
  /// is unknown.
  MergeOutcome insert_with_merge(const SegmentCandidate& candidate, double epsilon_m);

  /// Live segments whose loosened box intersects `box`, grouped by owner. A
  /// shared segment appears in each owner's group.
  std::map<TrajectoryId, std::vector<SegmentRecord>> query_similar(const BBox& box) const;

  /// Evicts trajectories older than m_bar and recompresses the rest with FBQS
  /// at the aged tolerance.
  AgeStats age_pass(std::int64_t current_week, const AgeingPolicy& policy);

  /// Ordered fixes of a trajectory: each link's segment oriented by the
  /// link's own time span.
  std::vector<TrackPoint> trajectory_points(TrajectoryId id) const;

  /// Throws InternalError when the indexes disagree.
  void check_consistency() const;

  const std::map<SegmentId, SegmentRecord>& segments() const { return segments_; }
  const std::map<TrajectoryId, TrajectoryRecord>& trajectories() const { return trajectories_; }
  const SegmentRecord& segment(SegmentId id) const;
  const TrajectoryRecord& trajectory(TrajectoryId id) const;
  const GridIndex& index() const { return index_; }

  std::optional<GeoOrigin> origin() const { return origin_; }
  void set_origin(GeoOrigin origin) { origin_ = origin; }

  /// Line-delimited JSON; written to a temp file and renamed into place.
  void save(const std::filesystem::path& path) const;
  /// Later records with a repeated id replace earlier ones. Throws DataError
  /// on malformed lines or inconsistent content.
  static TrajectoryStore load(const std::filesystem::path& path);

 private:
  SegmentId add_segment(const TrackPoint& s, const TrackPoint& e, double d_tau,
                        TrajectoryId owner);
  void drop_segment(SegmentId id);
  void set_bound(SegmentRecord& seg, double d_tau);
  bool recompress(TrajectoryRecord& traj, double tolerance, double carried_bound, AgeStats& stats);

  std::map<SegmentId, SegmentRecord> segments_;
  std::map<TrajectoryId, TrajectoryRecord> trajectories_;
  GridIndex index_;
  std::optional<GeoOrigin> origin_;
  SegmentId next_segment_ = 1;
  TrajectoryId next_trajectory_ = 1;
};

}  // namespace bqs
