#include "bqs/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bqs {

void SynthParams::validate() const {
  if (n_points < 2) {
    throw std::invalid_argument("synth: n_points must be at least 2");
  }
  const bool positive = bounds > 0.0 && kappa >= 0.0 && mean_move_duration > 0.0 &&
                        mean_wait_duration >= 0.0 && speed_log_sigma >= 0.0 &&
                        speed_cap > 0.0 && sample_interval > 0.0;
  if (!positive) {
    throw std::invalid_argument("synth: parameters must be positive");
  }
}

double sample_von_mises(std::mt19937_64& rng, double kappa) {
  constexpr double pi = std::numbers::pi;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (kappa < 1e-8) {
    return pi * (2.0 * unit(rng) - 1.0);
  }
  if (kappa > 1e6) {
    std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(kappa));
    return gauss(rng);
  }
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  for (;;) {
    const double u1 = unit(rng);
    const double u2 = unit(rng);
    const double u3 = unit(rng);
    const double z = std::cos(pi * u1);
    const double f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    if (c * (2.0 - c) - u2 > 0.0 || std::log(c / u2) + 1.0 - c >= 0.0) {
      const double theta = std::acos(std::clamp(f, -1.0, 1.0));
      return u3 > 0.5 ? theta : -theta;
    }
  }
}

namespace {

// Specular reflection off the square's walls.
void reflect(double bounds, Vec2& p, double& heading) {
  constexpr double pi = std::numbers::pi;
  for (int guard = 0; guard < 8; ++guard) {
    bool moved = false;
    if (p.x < 0.0) {
      p.x = -p.x;
      heading = pi - heading;
      moved = true;
    } else if (p.x > bounds) {
      p.x = 2.0 * bounds - p.x;
      heading = pi - heading;
      moved = true;
    }
    if (p.y < 0.0) {
      p.y = -p.y;
      heading = -heading;
      moved = true;
    } else if (p.y > bounds) {
      p.y = 2.0 * bounds - p.y;
      heading = -heading;
      moved = true;
    }
    if (!moved) {
      return;
    }
  }
  p.x = std::clamp(p.x, 0.0, bounds);
  p.y = std::clamp(p.y, 0.0, bounds);
}

}  // namespace

std::vector<TrackPoint> generate(const SynthParams& params) {
  params.validate();
  constexpr double pi = std::numbers::pi;
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::lognormal_distribution<double> speed_dist(params.speed_log_mean, params.speed_log_sigma);
  std::exponential_distribution<double> move_dist(1.0 / params.mean_move_duration);

  std::vector<TrackPoint> out;
  out.reserve(params.n_points);
  Vec2 pos{params.bounds * unit(rng), params.bounds * unit(rng)};
  double heading = pi * (2.0 * unit(rng) - 1.0);
  double t = 0.0;
  out.push_back({t, pos.x, pos.y});

  const double dt = params.sample_interval;
  while (out.size() < params.n_points) {
    heading += sample_von_mises(rng, params.kappa);
    const double speed = std::min(speed_dist(rng), params.speed_cap);
    const double duration = move_dist(rng);
    const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(std::lround(duration / dt)));
    for (std::size_t k = 0; k < steps && out.size() < params.n_points; ++k) {
      pos = pos + (speed * dt) * Vec2{std::cos(heading), std::sin(heading)};
      reflect(params.bounds, pos, heading);
      t += dt;
      out.push_back({t, pos.x, pos.y});
    }
    if (params.mean_wait_duration > 0.0 && out.size() < params.n_points) {
      std::exponential_distribution<double> wait_dist(1.0 / params.mean_wait_duration);
      t += std::max(wait_dist(rng), dt);
      out.push_back({t, pos.x, pos.y});
    }
  }
  return out;
}

}  // namespace bqs
