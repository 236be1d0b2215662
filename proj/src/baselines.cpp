#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bqs/compressors.hpp"

namespace bqs {

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::bqs: return "bqs";
    case Algorithm::fbqs: return "fbqs";
    case Algorithm::bdp: return "bdp";
    case Algorithm::bgd: return "bgd";
    case Algorithm::dp: return "dp";
    case Algorithm::dr: return "dr";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : kAllAlgorithms) {
    if (to_string(a) == name) {
      return a;
    }
  }
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

void CompressorConfig::validate() const {
  if (!(epsilon_d > 0.0) || !std::isfinite(epsilon_d)) {
    throw std::invalid_argument("epsilon_d must be a positive finite number");
  }
  if (buffer_size < 2) {
    throw std::invalid_argument("buffer_size must be at least 2");
  }
}

void validate_stream(std::span<const TrackPoint> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("a trajectory needs at least 2 points");
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    const TrackPoint& p = points[i];
    if (!std::isfinite(p.t) || !std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument("non-finite value at point " + std::to_string(i));
    }
    if (i > 0 && !(p.t > points[i - 1].t)) {
      throw std::invalid_argument("timestamps not strictly increasing at point " +
                                  std::to_string(i));
    }
  }
}

namespace {

struct DpResult {
  std::vector<std::size_t> kept;  // indices, excluding `first`
  std::vector<double> bounds;
  std::size_t evaluations = 0;
};

// Douglas-Peucker over [first, last], depth first so segments come out in
// order. Ties on the split point go to the lowest index.
DpResult douglas_peucker(std::span<const TrackPoint> pts, std::size_t first, std::size_t last,
                         double epsilon) {
  DpResult out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{first, last}};
  while (!stack.empty()) {
    const auto [i, j] = stack.back();
    stack.pop_back();
    double worst = 0.0;
    std::size_t split = i;
    for (std::size_t k = i + 1; k < j; ++k) {
      const double d = deviation(pts[k].pos(), pts[i].pos(), pts[j].pos());
      if (d > worst) {
        worst = d;
        split = k;
      }
    }
    ++out.evaluations;
    if (worst <= epsilon) {
      out.kept.push_back(j);
      out.bounds.push_back(worst);
    } else {
      stack.emplace_back(split, j);
      stack.emplace_back(i, split);
    }
  }
  return out;
}

CompressedTrajectory from_indices(std::span<const TrackPoint> pts, Algorithm algo,
                                  const std::vector<std::size_t>& kept,
                                  std::vector<double> bounds, std::size_t computations) {
  CompressedTrajectory out;
  out.algorithm = algo;
  out.kept.reserve(kept.size());
  for (std::size_t i : kept) {
    out.kept.push_back(pts[i]);
  }
  out.segment_bounds = std::move(bounds);
  out.stats = {pts.size(), out.kept.size(), computations};
  return out;
}

}  // namespace

CompressedTrajectory compress_dp(std::span<const TrackPoint> points, double epsilon) {
  validate_stream(points);
  DpResult r = douglas_peucker(points, 0, points.size() - 1, epsilon);
  std::vector<std::size_t> kept{0};
  kept.insert(kept.end(), r.kept.begin(), r.kept.end());
  return from_indices(points, Algorithm::dp, kept, std::move(r.bounds), r.evaluations);
}

CompressedTrajectory compress_bdp(std::span<const TrackPoint> points, double epsilon,
                                  std::size_t buffer_size) {
  validate_stream(points);
  // Each full buffer is simplified on its own; its last point opens the next
  // buffer, so both buffer ends are always kept.
  std::vector<std::size_t> kept{0};
  std::vector<double> bounds;
  std::size_t evaluations = 0;
  std::size_t start = 0;
  const std::size_t n = points.size();
  while (start + 1 < n) {
    const std::size_t end = std::min(start + buffer_size - 1, n - 1);
    DpResult r = douglas_peucker(points, start, end, epsilon);
    kept.insert(kept.end(), r.kept.begin(), r.kept.end());
    bounds.insert(bounds.end(), r.bounds.begin(), r.bounds.end());
    evaluations += r.evaluations;
    start = end;
  }
  return from_indices(points, Algorithm::bdp, kept, std::move(bounds), evaluations);
}

CompressedTrajectory compress_bgd(std::span<const TrackPoint> points, double epsilon,
                                  std::size_t buffer_size) {
  validate_stream(points);
  std::vector<std::size_t> kept{0};
  std::vector<double> bounds;
  std::size_t computations = 0;
  std::size_t start = 0;
  double current = 0.0;
  auto split_at = [&](std::size_t k) {
    kept.push_back(k);
    bounds.push_back(current);
    start = k;
    current = 0.0;
  };
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (i - start + 1 > buffer_size) {
      split_at(i - 1);
    }
    if (i - start < 2) {
      continue;  // no interior points yet
    }
    ++computations;
    double worst = 0.0;
    for (std::size_t k = start + 1; k < i; ++k) {
      worst = std::max(worst, deviation(points[k].pos(), points[start].pos(), points[i].pos()));
    }
    if (worst > epsilon) {
      split_at(i - 1);
    } else {
      current = worst;
    }
  }
  split_at(points.size() - 1);
  return from_indices(points, Algorithm::bgd, kept, std::move(bounds), computations);
}

Vec2 dead_reckoning_velocity(std::span<const TrackPoint> points, std::size_t i) {
  if (i == 0) {
    return {};
  }
  const double dt = points[i].t - points[i - 1].t;
  return (1.0 / dt) * (points[i].pos() - points[i - 1].pos());
}

CompressedTrajectory compress_dr(std::span<const TrackPoint> points, double epsilon) {
  validate_stream(points);
  std::vector<std::size_t> kept{0};
  std::vector<double> bounds;
  std::size_t anchor = 0;
  Vec2 velocity = dead_reckoning_velocity(points, 0);
  double worst = 0.0;
  const std::size_t last = points.size() - 1;
  for (std::size_t i = 1; i <= last; ++i) {
    const Vec2 predicted =
        points[anchor].pos() + (points[i].t - points[anchor].t) * velocity;
    const double err = distance(points[i].pos(), predicted);
    if (err > epsilon || i == last) {
      kept.push_back(i);
      bounds.push_back(worst);
      anchor = i;
      velocity = dead_reckoning_velocity(points, i);
      worst = 0.0;
    } else {
      worst = std::max(worst, err);
    }
  }
  return from_indices(points, Algorithm::dr, kept, std::move(bounds), 0);
}

CompressedTrajectory compress(std::span<const TrackPoint> points, const CompressorConfig& cfg) {
  cfg.validate();
  switch (cfg.algorithm) {
    case Algorithm::bqs: return compress_bqs(points, cfg.epsilon_d, cfg.buffer_size);
    case Algorithm::fbqs: return compress_fbqs(points, cfg.epsilon_d);
    case Algorithm::bdp: return compress_bdp(points, cfg.epsilon_d, cfg.buffer_size);
    case Algorithm::bgd: return compress_bgd(points, cfg.epsilon_d, cfg.buffer_size);
    case Algorithm::dp: return compress_dp(points, cfg.epsilon_d);
    case Algorithm::dr: return compress_dr(points, cfg.epsilon_d);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace bqs
