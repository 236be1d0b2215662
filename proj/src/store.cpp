#include "bqs/store.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "bqs/compressors.hpp"
#include "bqs/errors.hpp"

namespace bqs {

std::vector<TrackPoint> project(std::span<const GeoFix> fixes) {
  if (fixes.empty()) {
    throw std::invalid_argument("project: no fixes");
  }
  return project(fixes, {fixes.front().lat, fixes.front().lon});
}

std::vector<TrackPoint> project(std::span<const GeoFix> fixes, GeoOrigin origin) {
  constexpr double deg = std::numbers::pi / 180.0;
  auto in_range = [](double lat, double lon) {
    return std::isfinite(lat) && std::isfinite(lon) && std::abs(lat) <= 90.0 &&
           std::abs(lon) <= 180.0;
  };
  if (fixes.empty()) {
    throw std::invalid_argument("project: no fixes");
  }
  if (!in_range(origin.lat0, origin.lon0)) {
    throw std::invalid_argument("project: origin out of range");
  }
  const double cos_lat0 = std::cos(origin.lat0 * deg);
  std::vector<TrackPoint> out;
  out.reserve(fixes.size());
  for (std::size_t i = 0; i < fixes.size(); ++i) {
    const GeoFix& f = fixes[i];
    if (!in_range(f.lat, f.lon)) {
      throw std::invalid_argument("project: coordinate out of range at fix " + std::to_string(i));
    }
    out.push_back({f.t, kEarthRadiusM * (f.lon - origin.lon0) * deg * cos_lat0,
                   kEarthRadiusM * (f.lat - origin.lat0) * deg});
  }
  return out;
}

void AgeingPolicy::validate() const {
  if (!(alpha > 0.0) || !(m_bar >= 1.0)) {
    throw std::invalid_argument("ageing policy needs alpha > 0 and m_bar >= 1");
  }
}

double significance(double age_weeks, const AgeingPolicy& policy) {
  return 1.0 / (1.0 + std::exp(policy.alpha * age_weeks - policy.m_bar));
}

double aged_tolerance(double epsilon_d, double age_weeks, const AgeingPolicy& policy) {
  if (!(epsilon_d > 0.0)) {
    throw std::invalid_argument("aged_tolerance: epsilon_d must be positive");
  }
  return epsilon_d * (1.0 + std::exp(policy.alpha * age_weeks - policy.m_bar));
}

TrajectoryStore::TrajectoryStore(double cell_size) : index_(cell_size) {}

TrajectoryId TrajectoryStore::create_trajectory(std::int64_t created_week, double epsilon_d) {
  if (!(epsilon_d > 0.0)) {
    throw std::invalid_argument("create_trajectory: epsilon_d must be positive");
  }
  const TrajectoryId id = next_trajectory_++;
  trajectories_.emplace(id, TrajectoryRecord{id, {}, created_week, epsilon_d});
  return id;
}

const SegmentRecord& TrajectoryStore::segment(SegmentId id) const {
  const auto it = segments_.find(id);
  if (it == segments_.end()) {
    throw InternalError("dangling segment id " + std::to_string(id));
  }
  return it->second;
}

const TrajectoryRecord& TrajectoryStore::trajectory(TrajectoryId id) const {
  const auto it = trajectories_.find(id);
  if (it == trajectories_.end()) {
    throw std::invalid_argument("unknown trajectory id " + std::to_string(id));
  }
  return it->second;
}

void TrajectoryStore::set_bound(SegmentRecord& seg, double d_tau) {
  seg.d_tau = d_tau;
  seg.bbox = bbox_expand(BBox::of(seg.s.pos(), seg.e.pos()), d_tau);
  index_.insert(seg.id, seg.bbox);
}

SegmentId TrajectoryStore::add_segment(const TrackPoint& s, const TrackPoint& e, double d_tau,
                                       TrajectoryId owner) {
  const SegmentId id = next_segment_++;
  SegmentRecord& seg = segments_[id];
  seg.id = id;
  seg.s = s;
  seg.e = e;
  seg.owners = {owner};
  set_bound(seg, d_tau);
  return id;
}

void TrajectoryStore::drop_segment(SegmentId id) {
  index_.erase(id);
  segments_.erase(id);
}

MergeOutcome TrajectoryStore::insert_with_merge(const SegmentCandidate& candidate,
                                                double epsilon_m) {
  const auto owner_it = trajectories_.find(candidate.owner);
  if (owner_it == trajectories_.end()) {
    throw std::invalid_argument("insert_with_merge: unknown trajectory");
  }
  TrajectoryRecord& owner = owner_it->second;
  if (!(epsilon_m >= owner.epsilon_d)) {
    throw std::invalid_argument("insert_with_merge: epsilon_m below the compression tolerance");
  }
  const PlanarSegment tau{candidate.s.pos(), candidate.e.pos()};

  // Expanded query box, hits grouped by trajectory, nearest per group, then
  // the global nearest.
  const BBox query = bbox_expand(BBox::of(tau.s, tau.e), epsilon_m);
  const auto groups = query_similar(query);
  const SegmentRecord* nearest = nullptr;
  double nearest_d = 0.0;
  for (const auto& [tid, group] : groups) {
    const SegmentRecord* group_best = nullptr;
    double group_d = 0.0;
    for (const SegmentRecord& seg : group) {
      const double d = segment_distance(tau, seg.geometry());
      if (group_best == nullptr || d < group_d) {
        group_best = &segments_.at(seg.id);
        group_d = d;
      }
    }
    if (nearest == nullptr || group_d < nearest_d ||
        (group_d == nearest_d && group_best->id < nearest->id)) {
      nearest = group_best;
      nearest_d = group_d;
    }
  }

  MergeOutcome outcome;
  if (nearest != nullptr) {
    const PlanarSegment target = nearest->geometry();
    const double bound = std::max(point_to_segment_distance(tau.s, target),
                                  point_to_segment_distance(tau.e, target)) +
                         nearest->d_tau;
    outcome.merged_bound = bound;
    if (bound <= epsilon_m) {
      SegmentRecord& seg = segments_.at(nearest->id);
      seg.owners.insert(owner.id);
      set_bound(seg, bound);
      const bool reversed = distance(tau.s, target.e) + distance(tau.e, target.s) <
                            distance(tau.s, target.s) + distance(tau.e, target.e);
      owner.links.push_back({seg.id, candidate.s.t, candidate.e.t, reversed});
      outcome.merged_into = seg.id;
      outcome.segment = seg.id;
      return outcome;
    }
  }
  const SegmentId id = add_segment(candidate.s, candidate.e, candidate.d_tau, owner.id);
  owner.links.push_back({id, candidate.s.t, candidate.e.t, false});
  outcome.segment = id;
  return outcome;
}

std::map<TrajectoryId, std::vector<SegmentRecord>> TrajectoryStore::query_similar(
    const BBox& box) const {
  std::map<TrajectoryId, std::vector<SegmentRecord>> groups;
  for (SegmentId id : index_.query(box)) {
    const SegmentRecord& seg = segment(id);
    for (TrajectoryId owner : seg.owners) {
      groups[owner].push_back(seg);
    }
  }
  return groups;
}

std::vector<TrackPoint> TrajectoryStore::trajectory_points(TrajectoryId id) const {
  std::vector<TrackPoint> out;
  for (const SegmentLink& link : trajectory(id).links) {
    const SegmentRecord& seg = segment(link.segment);
    const Vec2 a = link.reversed ? seg.e.pos() : seg.s.pos();
    const Vec2 b = link.reversed ? seg.s.pos() : seg.e.pos();
    const TrackPoint first{link.t_start, a.x, a.y};
    if (out.empty() || !(out.back() == first)) {
      out.push_back(first);
    }
    out.push_back({link.t_end, b.x, b.y});
  }
  return out;
}

bool TrajectoryStore::recompress(TrajectoryRecord& traj, double tolerance, double carried_bound,
                                 AgeStats& stats) {
  std::map<SegmentId, int> uses;
  for (const SegmentLink& link : traj.links) {
    ++uses[link.segment];
  }
  auto exclusive = [&](const SegmentLink& link) {
    const SegmentRecord& seg = segment(link.segment);
    return !link.reversed && uses[link.segment] == 1 && seg.owners.size() == 1 &&
           *seg.owners.begin() == traj.id;
  };
  auto contiguous = [&](const SegmentLink& a, const SegmentLink& b) {
    return a.t_end == b.t_start && segment(a.segment).e.pos() == segment(b.segment).s.pos();
  };

  bool changed = false;
  std::vector<SegmentLink> links;
  const std::size_t n = traj.links.size();
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    if (exclusive(traj.links[i])) {
      while (j + 1 < n && exclusive(traj.links[j + 1]) &&
             contiguous(traj.links[j], traj.links[j + 1])) {
        ++j;
      }
    }
    if (j == i) {
      links.push_back(traj.links[i++]);
      continue;
    }
    // Only runs this trajectory owns outright may be rewritten; shared
    // segments stay as they are for their other owners. Times come from the
    // links, since a segment may have been created by an evicted trajectory.
    const SegmentLink& head = traj.links[i];
    const Vec2 s0 = segment(head.segment).s.pos();
    std::vector<TrackPoint> pts{{head.t_start, s0.x, s0.y}};
    for (std::size_t k = i; k <= j; ++k) {
      const Vec2 e = segment(traj.links[k].segment).e.pos();
      pts.push_back({traj.links[k].t_end, e.x, e.y});
    }
    const CompressedTrajectory ct = compress_fbqs(pts, tolerance);
    if (ct.kept.size() < pts.size()) {
      for (std::size_t k = i; k <= j; ++k) {
        drop_segment(traj.links[k].segment);
      }
      for (std::size_t k = 0; k + 1 < ct.kept.size(); ++k) {
        const double d = std::min(ct.segment_bounds[k], tolerance) + carried_bound;
        const SegmentId id = add_segment(ct.kept[k], ct.kept[k + 1], d, traj.id);
        links.push_back({id, ct.kept[k].t, ct.kept[k + 1].t, false});
      }
      stats.points_removed += pts.size() - ct.kept.size();
      changed = true;
    } else {
      links.insert(links.end(), traj.links.begin() + static_cast<std::ptrdiff_t>(i),
                   traj.links.begin() + static_cast<std::ptrdiff_t>(j + 1));
    }
    i = j + 1;
  }
  traj.links = std::move(links);
  return changed;
}

AgeStats TrajectoryStore::age_pass(std::int64_t current_week, const AgeingPolicy& policy) {
  policy.validate();
  AgeStats stats;
  std::vector<TrajectoryId> ids;
  for (const auto& [id, traj] : trajectories_) {
    ids.push_back(id);
  }
  for (TrajectoryId id : ids) {
    TrajectoryRecord& traj = trajectories_.at(id);
    const double age = static_cast<double>(std::max<std::int64_t>(0, current_week - traj.created_week));
    if (age > policy.m_bar) {
      for (const SegmentLink& link : traj.links) {
        const auto it = segments_.find(link.segment);
        if (it == segments_.end()) {
          continue;  // linked twice, already dropped
        }
        it->second.owners.erase(id);
        if (it->second.owners.empty()) {
          drop_segment(link.segment);
        }
      }
      trajectories_.erase(id);
      ++stats.evicted;
      continue;
    }
    double b_max = 0.0;
    for (const SegmentLink& link : traj.links) {
      b_max = std::max(b_max, segment(link.segment).d_tau);
    }
    const double carried = std::max(b_max, traj.epsilon_d);
    const double tolerance = aged_tolerance(traj.epsilon_d, age, policy) - carried;
    if (!(tolerance > 0.0)) {
      ++stats.skipped;
      continue;
    }
    if (recompress(traj, tolerance, carried, stats)) {
      ++stats.recompressed;
    }
  }
  return stats;
}

void TrajectoryStore::check_consistency() const {
  for (const auto& [tid, traj] : trajectories_) {
    if (traj.id != tid) {
      throw InternalError("trajectory key/id mismatch");
    }
    for (const SegmentLink& link : traj.links) {
      const SegmentRecord& seg = segment(link.segment);
      if (!seg.owners.contains(tid)) {
        throw InternalError("segment " + std::to_string(seg.id) + " does not list owner " +
                            std::to_string(tid));
      }
    }
  }
  for (const auto& [sid, seg] : segments_) {
    if (seg.id != sid || seg.owners.empty()) {
      throw InternalError("segment " + std::to_string(sid) + " has no owners");
    }
    for (TrajectoryId owner : seg.owners) {
      const auto it = trajectories_.find(owner);
      if (it == trajectories_.end()) {
        throw InternalError("segment " + std::to_string(sid) + " owned by missing trajectory");
      }
      const auto& links = it->second.links;
      if (std::none_of(links.begin(), links.end(),
                       [sid](const SegmentLink& l) { return l.segment == sid; })) {
        throw InternalError("trajectory " + std::to_string(owner) + " lacks link to segment " +
                            std::to_string(sid));
      }
    }
    if (!(seg.bbox == bbox_expand(BBox::of(seg.s.pos(), seg.e.pos()), seg.d_tau))) {
      throw InternalError("segment " + std::to_string(sid) + " bbox out of date");
    }
    const BBox* indexed = index_.box_of(sid);
    if (indexed == nullptr || !(*indexed == seg.bbox)) {
      throw InternalError("segment " + std::to_string(sid) + " missing from spatial index");
    }
  }
  if (index_.size() != segments_.size()) {
    throw InternalError("spatial index holds dead segments");
  }
}

}  // namespace bqs
