#include <algorithm>

#include "bqs/compressors.hpp"

namespace bqs {

FbqsCompressor::FbqsCompressor(const TrackPoint& start, double epsilon)
    : epsilon_(epsilon), state_(start.pos()), start_(start) {}

StepDecision FbqsCompressor::step(const TrackPoint& p) {
  if (!previous_) {
    previous_ = p;
    current_bound_ = 0.0;
    return {};
  }
  // Interior points are bounded; the tentative endpoint itself is free.
  state_.insert(previous_->pos());

  bool accept = false;
  double bound = 0.0;
  if (p.pos() == start_.pos()) {
    accept = state_.empty();
  } else {
    const DeviationBounds b = state_.bounds(p.pos());
    accept = b.ub <= epsilon_;
    bound = b.ub;
  }
  if (accept) {
    previous_ = p;
    current_bound_ = bound;
    return {};
  }

  const TrackPoint emitted = *previous_;
  closed_bound_ = current_bound_;
  start_ = emitted;
  state_.reset(emitted.pos());
  previous_ = p;
  current_bound_ = 0.0;
  return {StepAction::split_at_previous, emitted};
}

std::optional<TrackPoint> FbqsCompressor::finish() {
  if (!previous_) {
    return std::nullopt;
  }
  closed_bound_ = current_bound_;
  std::optional<TrackPoint> last = previous_;
  previous_.reset();
  return last;
}

BqsCompressor::BqsCompressor(const TrackPoint& start, double epsilon, std::size_t buffer_size)
    : epsilon_(epsilon), capacity_(buffer_size), state_(start.pos()), start_(start) {
  buffer_.reserve(capacity_);
  buffer_.push_back(start.pos());
}

void BqsCompressor::restart(const TrackPoint& new_start, const TrackPoint& first_end) {
  start_ = new_start;
  state_.reset(new_start.pos());
  buffer_.clear();
  buffer_.push_back(new_start.pos());
  overflowed_ = false;
  previous_ = first_end;
  current_bound_ = 0.0;
}

double BqsCompressor::exact_deviation(Vec2 end) const {
  double worst = 0.0;
  for (const Vec2& q : buffer_) {
    worst = std::max(worst, deviation(q, start_.pos(), end));
  }
  return worst;
}

StepDecision BqsCompressor::step(const TrackPoint& p) {
  if (!previous_) {
    previous_ = p;
    current_bound_ = 0.0;
    return {};
  }
  state_.insert(previous_->pos());
  // One slot stays free for the tentative endpoint.
  if (!overflowed_ && buffer_.size() + 1 < capacity_) {
    buffer_.push_back(previous_->pos());
  } else {
    overflowed_ = true;
  }

  enum class Verdict { accept, reject, uncertain };
  Verdict verdict = Verdict::uncertain;
  double bound = 0.0;
  if (p.pos() == start_.pos()) {
    if (state_.empty()) {
      verdict = Verdict::accept;
    }
  } else {
    const DeviationBounds b = state_.bounds(p.pos());
    if (b.ub <= epsilon_) {
      verdict = Verdict::accept;
      bound = b.ub;
    } else if (b.lb > epsilon_) {
      verdict = Verdict::reject;
    }
  }
  if (verdict == Verdict::uncertain && !overflowed_) {
    ++full_computations_;
    const double exact = exact_deviation(p.pos());
    verdict = exact <= epsilon_ ? Verdict::accept : Verdict::reject;
    bound = exact;
  }

  if (verdict == Verdict::accept) {
    previous_ = p;
    current_bound_ = bound;
    return {};
  }
  const TrackPoint emitted = *previous_;
  closed_bound_ = current_bound_;
  restart(emitted, p);
  return {StepAction::split_at_previous, emitted};
}

std::optional<TrackPoint> BqsCompressor::finish() {
  if (!previous_) {
    return std::nullopt;
  }
  closed_bound_ = current_bound_;
  std::optional<TrackPoint> last = previous_;
  previous_.reset();
  return last;
}

namespace {

template <typename Compressor>
CompressedTrajectory drive(Compressor& c, std::span<const TrackPoint> points, double epsilon,
                           Algorithm algo) {
  CompressedTrajectory out;
  out.algorithm = algo;
  out.kept.push_back(points.front());
  for (std::size_t i = 1; i < points.size(); ++i) {
    const StepDecision d = c.step(points[i]);
    if (d.emitted) {
      out.kept.push_back(*d.emitted);
      out.segment_bounds.push_back(std::min(c.closed_segment_bound(), epsilon));
    }
  }
  if (auto last = c.finish()) {
    out.kept.push_back(*last);
    out.segment_bounds.push_back(std::min(c.closed_segment_bound(), epsilon));
  }
  out.stats.points_in = points.size();
  out.stats.points_kept = out.kept.size();
  return out;
}

}  // namespace

CompressedTrajectory compress_fbqs(std::span<const TrackPoint> points, double epsilon) {
  validate_stream(points);
  FbqsCompressor c(points.front(), epsilon);
  return drive(c, points, epsilon, Algorithm::fbqs);
}

CompressedTrajectory compress_bqs(std::span<const TrackPoint> points, double epsilon,
                                  std::size_t buffer_size) {
  validate_stream(points);
  BqsCompressor c(points.front(), epsilon, buffer_size);
  CompressedTrajectory out = drive(c, points, epsilon, Algorithm::bqs);
  out.stats.full_computations = c.full_computations();
  return out;
}

}  // namespace bqs
