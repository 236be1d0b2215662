#pragma once

#include <cstddef>
#include <span>
#include <utility>

namespace bqs {

/// Planar position in meters (east, north) relative to a local origin.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }

inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double norm(Vec2 a);
double distance(Vec2 a, Vec2 b);

/// A timestamped fix. t in seconds, position in local planar meters.
struct TrackPoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;

  Vec2 pos() const { return {x, y}; }
  friend bool operator==(const TrackPoint&, const TrackPoint&) = default;
};

/// Infinite line through two distinct positions.
class LineThrough {
 public:
  /// Throws std::invalid_argument when a == b.
  LineThrough(Vec2 a, Vec2 b);

  Vec2 a() const { return a_; }
  Vec2 b() const { return b_; }

  /// Signed cross product of the direction with (p - a); sign tells the side.
  double side(Vec2 p) const { return cross(b_ - a_, p - a_); }
  double length() const { return length_; }

 private:
  Vec2 a_;
  Vec2 b_;
  double length_;
};

struct PlanarSegment {
  Vec2 s;
  Vec2 e;
};

struct BBox {
  double min_x = 0.0;
  double min_y = 0.0;
  double max_x = 0.0;
  double max_y = 0.0;

  static BBox of(Vec2 p) { return {p.x, p.y, p.x, p.y}; }
  static BBox of(Vec2 a, Vec2 b);

  void extend(Vec2 p);
  bool contains(Vec2 p) const {
    return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
  }
  bool valid() const { return min_x <= max_x && min_y <= max_y; }

  friend bool operator==(const BBox&, const BBox&) = default;
};

double point_to_line_distance(Vec2 p, const LineThrough& l);
double point_to_segment_distance(Vec2 p, const PlanarSegment& seg);

/// Deviation of p from the carrier line through s and e. Falls back to the
/// distance to s when s == e.
double deviation(Vec2 p, Vec2 s, Vec2 e);

/// Symmetric segment distance: max over both endpoint sets of the
/// point-to-segment distance to the other segment.
double segment_distance(const PlanarSegment& a, const PlanarSegment& b);

struct NearestSegment {
  double distance = 0.0;
  std::size_t index = 0;
};

/// Nearest of `candidates` to `tau` under segment_distance; ties go to the
/// lowest index. Throws std::invalid_argument on an empty candidate list.
NearestSegment nearest_segment(const PlanarSegment& tau,
                               std::span<const PlanarSegment> candidates);

/// Distance from a segment to a polyline trajectory (>= 2 points).
NearestSegment segment_to_trajectory_distance(const PlanarSegment& tau,
                                              std::span<const TrackPoint> traj);

/// Throws std::invalid_argument when delta < 0.
BBox bbox_expand(const BBox& b, double delta);

/// Closed-box test: touching edges or corners count as intersecting.
bool bbox_intersects(const BBox& a, const BBox& b);

}  // namespace bqs
