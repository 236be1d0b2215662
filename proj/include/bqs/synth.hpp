#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bqs/geometry.hpp"

namespace bqs {

/// Parameters of the event-based correlated random walk. Waits and moves
/// alternate; a move turns by a von Mises angle, draws a log-normal speed and
/// lasts an exponential time.
struct SynthParams {
  std::size_t n_points = 30000;
  double bounds = 10000.0;            // side of the square area, meters
  double kappa = 4.0;                 // von Mises concentration of turns
  double mean_move_duration = 40.0;   // seconds
  double mean_wait_duration = 60.0;   // seconds; 0 disables waits
  double speed_log_mean = 2.2721258855093374;  // ln(9.7 m/s)
  double speed_log_sigma = 0.3;
  double speed_cap = 14.0;            // m/s
  double sample_interval = 1.0;       // seconds
  std::uint64_t seed = 1;

  void validate() const;
};

/// Deterministic per seed. Returns exactly params.n_points fixes, all inside
/// [0, bounds]^2 with strictly increasing timestamps.
std::vector<TrackPoint> generate(const SynthParams& params);

/// Best-Fisher rejection sampler for von Mises(0, kappa) on (-pi, pi].
double sample_von_mises(std::mt19937_64& rng, double kappa);

}  // namespace bqs
