#include "bqs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bqs {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double distance(Vec2 a, Vec2 b) { return norm(a - b); }

LineThrough::LineThrough(Vec2 a, Vec2 b) : a_(a), b_(b), length_(distance(a, b)) {
  if (a == b) {
    throw std::invalid_argument("LineThrough: degenerate line (a == b)");
  }
}

BBox BBox::of(Vec2 a, Vec2 b) {
  return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x),
          std::max(a.y, b.y)};
}

void BBox::extend(Vec2 p) {
  min_x = std::min(min_x, p.x);
  min_y = std::min(min_y, p.y);
  max_x = std::max(max_x, p.x);
  max_y = std::max(max_y, p.y);
}

double point_to_line_distance(Vec2 p, const LineThrough& l) {
  return std::abs(l.side(p)) / l.length();
}

double point_to_segment_distance(Vec2 p, const PlanarSegment& seg) {
  const Vec2 d = seg.e - seg.s;
  const double len2 = dot(d, d);
  if (len2 == 0.0) {
    return distance(p, seg.s);
  }
  // Same expression as point_to_line_distance, so the carrier-line distance
  // never exceeds the segment distance after rounding.
  const double perpendicular = std::abs(cross(d, p - seg.s)) / norm(d);
  const double u = dot(p - seg.s, d) / len2;
  if (u <= 0.0) {
    return std::max(distance(p, seg.s), perpendicular);
  }
  if (u >= 1.0) {
    return std::max(distance(p, seg.e), perpendicular);
  }
  return perpendicular;
}

double deviation(Vec2 p, Vec2 s, Vec2 e) {
  if (s == e) {
    return distance(p, s);
  }
  return std::abs(cross(e - s, p - s)) / distance(s, e);
}

double segment_distance(const PlanarSegment& a, const PlanarSegment& b) {
  return std::max({point_to_segment_distance(a.s, b), point_to_segment_distance(a.e, b),
                   point_to_segment_distance(b.s, a), point_to_segment_distance(b.e, a)});
}

NearestSegment nearest_segment(const PlanarSegment& tau,
                               std::span<const PlanarSegment> candidates) {
  if (candidates.empty()) {
    throw std::invalid_argument("nearest_segment: no candidate segments");
  }
  NearestSegment best{segment_distance(tau, candidates[0]), 0};
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const double d = segment_distance(tau, candidates[i]);
    if (d < best.distance) {
      best = {d, i};
    }
  }
  return best;
}

NearestSegment segment_to_trajectory_distance(const PlanarSegment& tau,
                                              std::span<const TrackPoint> traj) {
  if (traj.size() < 2) {
    throw std::invalid_argument(
        "segment_to_trajectory_distance: trajectory needs at least 2 points");
  }
  NearestSegment best{};
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    const double d = segment_distance(tau, {traj[i].pos(), traj[i + 1].pos()});
    if (i == 0 || d < best.distance) {
      best = {d, i};
    }
  }
  return best;
}

BBox bbox_expand(const BBox& b, double delta) {
  if (!(delta >= 0.0)) {
    throw std::invalid_argument("bbox_expand: negative expansion");
  }
  return {b.min_x - delta, b.min_y - delta, b.max_x + delta, b.max_y + delta};
}

bool bbox_intersects(const BBox& a, const BBox& b) {
  return a.min_x <= b.max_x && b.min_x <= a.max_x && a.min_y <= b.max_y &&
         b.min_y <= a.max_y;
}

}  // namespace bqs
