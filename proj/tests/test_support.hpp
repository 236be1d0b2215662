#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "bqs/geometry.hpp"

namespace bqs::testing {

/// Jittered random walk with one fix per second; independent of the synthetic
/// generator so compressor tests do not depend on it.
inline std::vector<TrackPoint> random_walk(std::size_t n, std::uint64_t seed, double step = 5.0,
                                           double turn_sigma = 0.4) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> turn(0.0, turn_sigma);
  std::uniform_real_distribution<double> len(0.0, step);
  std::vector<TrackPoint> out;
  out.reserve(n);
  double heading = 0.0;
  Vec2 p{};
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back({static_cast<double>(i), p.x, p.y});
    heading += turn(rng);
    const double l = len(rng);
    p = p + Vec2{l * std::cos(heading), l * std::sin(heading)};
  }
  return out;
}

inline std::vector<TrackPoint> collinear(std::size_t n, double dx = 1.0, double dy = 0.0) {
  std::vector<TrackPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double k = static_cast<double>(i);
    out.push_back({k, k * dx, k * dy});
  }
  return out;
}

}  // namespace bqs::testing
