#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "bqs/geometry.hpp"

namespace bqs {

/// Quadrant id about an origin. Closed on the non-negative side of each axis:
/// 1: dx >= 0, dy >= 0; 2: dx < 0, dy >= 0; 3: dx < 0, dy < 0; 4: dx >= 0, dy < 0.
int quadrant_of(Vec2 p, Vec2 origin);

/// Bounding structures for the points of one quadrant, in coordinates
/// relative to the segment start.
///
/// The two bounding lines are rays from the origin through the assigned
/// points of extreme polar angle. Those points are kept instead of the raw
/// angles so angle comparisons reduce to exact cross-product signs.
struct QuadrantState {
  BBox box;
  Vec2 lower_ray;  // assigned point of minimal polar angle
  Vec2 upper_ray;  // assigned point of maximal polar angle
  std::uint32_t count = 0;

  double theta_min() const;
  double theta_max() const;
};

struct DeviationBounds {
  double lb = 0.0;
  double ub = 0.0;
};

/// Derived hull positions of one quadrant (relative coordinates). At most
/// 4 corners and 4 bounding-line crossings, 8 positions per quadrant.
struct QuadrantHull {
  std::array<Vec2, 4> corners;  // (min,min), (max,min), (max,max), (min,max)
  std::array<bool, 4> corner_in_wedge{};
  Vec2 lower_near, lower_far;  // lower bounding line entering / leaving the box
  Vec2 upper_near, upper_far;

  int derived_count() const;
};

/// Bounded Quadrant System about a segment start. Fixed size; never
/// allocates.
class BqsState {
 public:
  BqsState() = default;
  explicit BqsState(Vec2 origin) : origin_(origin) {}

  /// Folds an absolute position into its quadrant. A point equal to the
  /// origin is absorbed without changing any quadrant.
  void insert(Vec2 p);

  /// Bounds on max_i d(p_i, line(origin, end)) over all inserted points.
  /// Throws std::invalid_argument when end == origin.
  DeviationBounds bounds(Vec2 end) const;

  void reset(Vec2 new_origin);

  Vec2 origin() const { return origin_; }
  std::uint64_t total_count() const { return total_count_; }
  bool empty() const { return total_count_ == 0; }

  /// Quadrant state by id in 1..4.
  const std::optional<QuadrantState>& quadrant(int id) const {
    return quadrants_.at(static_cast<std::size_t>(id - 1));
  }

  /// Throws std::invalid_argument for an unpopulated quadrant.
  QuadrantHull hull(int id) const;

 private:
  Vec2 origin_{};
  std::array<std::optional<QuadrantState>, 4> quadrants_{};
  std::uint64_t total_count_ = 0;
};

}  // namespace bqs
