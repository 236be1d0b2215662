#include "bqs/verify.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace bqs {

ErrorModel error_model_for(Algorithm algo) {
  return algo == Algorithm::dr ? ErrorModel::dead_reckoning : ErrorModel::line_deviation;
}

namespace {

struct Coverage {
  std::vector<std::size_t> kept_index;  // raw index of each kept point
  std::vector<std::uint32_t> segment;   // covering segment of each raw point
};

Coverage cover(std::span<const TrackPoint> raw, std::span<const TrackPoint> kept) {
  if (kept.empty() || raw.empty()) {
    throw std::invalid_argument("verify: empty stream");
  }
  Coverage c;
  c.kept_index.reserve(kept.size());
  std::size_t r = 0;
  for (const TrackPoint& k : kept) {
    while (r < raw.size() && raw[r].t < k.t) {
      ++r;
    }
    if (r == raw.size() || !(raw[r] == k)) {
      throw std::invalid_argument("verify: kept points are not a subsequence of the raw stream");
    }
    c.kept_index.push_back(r++);
  }
  if (c.kept_index.front() != 0 || c.kept_index.back() != raw.size() - 1) {
    throw std::invalid_argument("verify: first and last raw points must be kept");
  }
  c.segment.assign(raw.size(), 0);
  for (std::size_t j = 0; j + 1 < c.kept_index.size(); ++j) {
    for (std::size_t i = c.kept_index[j]; i < c.kept_index[j + 1]; ++i) {
      c.segment[i] = static_cast<std::uint32_t>(j);
    }
  }
  if (c.kept_index.size() >= 2) {
    c.segment.back() = static_cast<std::uint32_t>(c.kept_index.size() - 2);
  }
  return c;
}

double point_error(std::span<const TrackPoint> raw, const Coverage& c, ErrorModel model,
                   std::size_t i) {
  if (c.kept_index.size() < 2) {
    return distance(raw[i].pos(), raw[c.kept_index.front()].pos());
  }
  const std::size_t j = c.segment[i];
  const std::size_t s = c.kept_index[j];
  const std::size_t e = c.kept_index[j + 1];
  if (i == s || i == e) {
    return 0.0;
  }
  if (model == ErrorModel::dead_reckoning) {
    const Vec2 predicted =
        raw[s].pos() + (raw[i].t - raw[s].t) * dead_reckoning_velocity(raw, s);
    return distance(raw[i].pos(), predicted);
  }
  return deviation(raw[i].pos(), raw[s].pos(), raw[e].pos());
}

VerifyReport collect(const std::vector<double>& errors, double worst, double epsilon) {
  VerifyReport report;
  report.max_deviation = worst;
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (errors[i] > epsilon) {
      report.violations.push_back({i, errors[i]});
    }
  }
  return report;
}

}  // namespace

VerifyReport verify_error_bound(std::span<const TrackPoint> raw, const CompressedTrajectory& ct,
                                double epsilon) {
  const Coverage c = cover(raw, ct.kept);
  const ErrorModel model = error_model_for(ct.algorithm);
  const auto n = static_cast<std::ptrdiff_t>(raw.size());
  std::vector<double> errors(raw.size());
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const double e = point_error(raw, c, model, static_cast<std::size_t>(i));
    errors[static_cast<std::size_t>(i)] = e;
    worst = std::max(worst, e);
  }
  return collect(errors, worst, epsilon);
}

VerifyReport verify_error_bound_serial(std::span<const TrackPoint> raw,
                                       const CompressedTrajectory& ct, double epsilon) {
  const Coverage c = cover(raw, ct.kept);
  const ErrorModel model = error_model_for(ct.algorithm);
  std::vector<double> errors(raw.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    errors[i] = point_error(raw, c, model, i);
    worst = std::max(worst, errors[i]);
  }
  return collect(errors, worst, epsilon);
}

}  // namespace bqs
