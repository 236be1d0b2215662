#include "bqs/quadrant_system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bqs {

namespace {

// Distance of a relative position to the line through the origin along dir.
// Matches point_to_line_distance(origin + q, LineThrough(origin, origin + dir))
// when q and dir were formed by subtracting the origin.
double line_distance(Vec2 dir, double dir_len, Vec2 q) {
  return std::abs(cross(dir, q)) / dir_len;
}

struct RayCrossings {
  Vec2 near;
  Vec2 far;
};

// Entry and exit of the ray t * through (t >= 0) with the box. The point
// `through` lies in the box, so t = 1 is always inside [t_in, t_out].
RayCrossings clip_ray(const BBox& box, Vec2 through) {
  double t_in = 0.0;
  double t_out = std::numeric_limits<double>::infinity();
  auto slab = [&](double lo, double hi, double d) {
    if (d > 0.0) {
      t_in = std::max(t_in, lo / d);
      t_out = std::min(t_out, hi / d);
    } else if (d < 0.0) {
      t_in = std::max(t_in, hi / d);
      t_out = std::min(t_out, lo / d);
    }
  };
  slab(box.min_x, box.max_x, through.x);
  slab(box.min_y, box.max_y, through.y);
  t_in = std::min(t_in, 1.0);
  t_out = std::max(t_out, 1.0);
  return {t_in * through, t_out * through};
}

}  // namespace

int quadrant_of(Vec2 p, Vec2 origin) {
  const double dx = p.x - origin.x;
  const double dy = p.y - origin.y;
  if (dy >= 0.0) {
    return dx >= 0.0 ? 1 : 2;
  }
  return dx < 0.0 ? 3 : 4;
}

double QuadrantState::theta_min() const { return std::atan2(lower_ray.y, lower_ray.x); }
double QuadrantState::theta_max() const { return std::atan2(upper_ray.y, upper_ray.x); }

int QuadrantHull::derived_count() const {
  return 4 + static_cast<int>(std::count(corner_in_wedge.begin(), corner_in_wedge.end(), true));
}

void BqsState::insert(Vec2 p) {
  const Vec2 q = p - origin_;
  if (q.x == 0.0 && q.y == 0.0) {
    return;
  }
  auto& slot = quadrants_[static_cast<std::size_t>(quadrant_of(p, origin_) - 1)];
  if (!slot) {
    slot = QuadrantState{BBox::of(q), q, q, 1};
  } else {
    slot->box.extend(q);
    if (cross(slot->lower_ray, q) < 0.0) {
      slot->lower_ray = q;
    }
    if (cross(q, slot->upper_ray) < 0.0) {
      slot->upper_ray = q;
    }
    ++slot->count;
  }
  ++total_count_;
}

void BqsState::reset(Vec2 new_origin) {
  origin_ = new_origin;
  quadrants_.fill(std::nullopt);
  total_count_ = 0;
}

QuadrantHull BqsState::hull(int id) const {
  const auto& q = quadrant(id);
  if (!q) {
    throw std::invalid_argument("BqsState::hull: quadrant is empty");
  }
  const BBox& b = q->box;
  QuadrantHull h;
  h.corners = {Vec2{b.min_x, b.min_y}, Vec2{b.max_x, b.min_y}, Vec2{b.max_x, b.max_y},
               Vec2{b.min_x, b.max_y}};
  const double lower_len = norm(q->lower_ray);
  const double upper_len = norm(q->upper_ray);
  for (std::size_t i = 0; i < 4; ++i) {
    const Vec2 c = h.corners[i];
    // Corners within rounding of a bounding line are kept; an extra vertex
    // can only loosen the upper bound.
    const double slack = 1e-12 * norm(c);
    h.corner_in_wedge[i] = cross(q->lower_ray, c) >= -slack * lower_len &&
                           cross(c, q->upper_ray) >= -slack * upper_len;
  }
  const RayCrossings lower = clip_ray(b, q->lower_ray);
  const RayCrossings upper = clip_ray(b, q->upper_ray);
  h.lower_near = lower.near;
  h.lower_far = lower.far;
  h.upper_near = upper.near;
  h.upper_far = upper.far;
  return h;
}

DeviationBounds BqsState::bounds(Vec2 end) const {
  const Vec2 dir = end - origin_;
  if (dir.x == 0.0 && dir.y == 0.0) {
    throw std::invalid_argument("BqsState::bounds: end coincides with origin");
  }
  const double len = norm(dir);
  DeviationBounds total;
  for (int id = 1; id <= 4; ++id) {
    const auto& q = quadrant(id);
    if (!q) {
      continue;
    }
    const QuadrantHull h = hull(id);
    std::array<double, 4> corner_d{};
    std::array<double, 4> corner_side{};
    for (std::size_t i = 0; i < 4; ++i) {
      corner_side[i] = cross(dir, h.corners[i]);
      corner_d[i] = std::abs(corner_side[i]) / len;
    }

    // Upper bound: every point lies in box ∩ wedge, a convex polygon whose
    // vertices are the in-wedge corners and the four ray crossings.
    double ub = std::max({line_distance(dir, len, h.lower_near),
                          line_distance(dir, len, h.lower_far),
                          line_distance(dir, len, h.upper_near),
                          line_distance(dir, len, h.upper_far)});
    for (std::size_t i = 0; i < 4; ++i) {
      if (h.corner_in_wedge[i]) {
        ub = std::max(ub, corner_d[i]);
      }
    }

    // Lower bound: the extreme-angle points are real data points, and each
    // box edge carries at least one data point, so an edge the line does not
    // cross contributes the smaller of its endpoint distances.
    double lb = std::max(line_distance(dir, len, q->lower_ray),
                         line_distance(dir, len, q->upper_ray));
    for (std::size_t i = 0; i < 4; ++i) {
      const std::size_t j = (i + 1) % 4;
      if ((corner_side[i] > 0.0 && corner_side[j] > 0.0) ||
          (corner_side[i] < 0.0 && corner_side[j] < 0.0)) {
        lb = std::max(lb, std::min(corner_d[i], corner_d[j]));
      }
    }
    ub = std::max({ub, lb});

    total.lb = std::max(total.lb, lb);
    total.ub = std::max(total.ub, ub);
  }
  return total;
}

}  // namespace bqs
