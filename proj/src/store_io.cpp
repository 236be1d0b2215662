#include <fstream>
#include <string>

#include <json.hpp>

#include "bqs/errors.hpp"
#include "bqs/store.hpp"

namespace bqs {

namespace {

using Json = nlohmann::ordered_json;
constexpr int kFormatVersion = 1;

Json header_json(const std::optional<GeoOrigin>& origin, double cell, SegmentId next_seg,
                 TrajectoryId next_traj) {
  Json h;
  h["kind"] = "header";
  h["version"] = kFormatVersion;
  h["lat0"] = origin ? Json(origin->lat0) : Json(nullptr);
  h["lon0"] = origin ? Json(origin->lon0) : Json(nullptr);
  h["cell_size"] = cell;
  h["next_segment_id"] = next_seg;
  h["next_trajectory_id"] = next_traj;
  return h;
}

}  // namespace

void TrajectoryStore::save(const std::filesystem::path& path) const {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) {
      throw DataError("cannot write store file " + tmp.string());
    }
    out << header_json(origin_, index_.cell_size(), next_segment_, next_trajectory_).dump() << '\n';
    for (const auto& [id, seg] : segments_) {
      Json j;
      j["kind"] = "seg";
      j["id"] = id;
      j["sx"] = seg.s.x;
      j["sy"] = seg.s.y;
      j["st"] = seg.s.t;
      j["ex"] = seg.e.x;
      j["ey"] = seg.e.y;
      j["et"] = seg.e.t;
      j["d_tau"] = seg.d_tau;
      j["owners"] = seg.owners;
      out << j.dump() << '\n';
    }
    for (const auto& [id, traj] : trajectories_) {
      Json j;
      j["kind"] = "traj";
      j["id"] = id;
      j["created_week"] = traj.created_week;
      j["epsilon_d"] = traj.epsilon_d;
      Json segs = Json::array();
      Json spans = Json::array();
      for (const SegmentLink& l : traj.links) {
        segs.push_back(l.segment);
        spans.push_back(Json::array({l.t_start, l.t_end, l.reversed ? 1 : 0}));
      }
      j["segments"] = std::move(segs);
      j["spans"] = std::move(spans);
      out << j.dump() << '\n';
    }
    if (!out.flush()) {
      throw DataError("failed writing store file " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

TrajectoryStore TrajectoryStore::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open store file " + path.string());
  }
  std::string line;
  std::size_t line_no = 0;
  std::optional<TrajectoryStore> store;
  std::map<SegmentId, SegmentRecord> segments;
  std::map<TrajectoryId, TrajectoryRecord> trajectories;
  try {
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) {
        continue;
      }
      const Json j = Json::parse(line);
      const std::string kind = j.at("kind").get<std::string>();
      if (kind == "header") {
        if (j.at("version").get<int>() != kFormatVersion) {
          throw DataError("unsupported store version");
        }
        store.emplace(j.at("cell_size").get<double>());
        if (!j.at("lat0").is_null()) {
          store->origin_ = GeoOrigin{j.at("lat0").get<double>(), j.at("lon0").get<double>()};
        }
        store->next_segment_ = j.at("next_segment_id").get<SegmentId>();
        store->next_trajectory_ = j.at("next_trajectory_id").get<TrajectoryId>();
      } else if (!store) {
        throw DataError("record before header");
      } else if (kind == "seg") {
        SegmentRecord seg;
        seg.id = j.at("id").get<SegmentId>();
        seg.s = {j.at("st").get<double>(), j.at("sx").get<double>(), j.at("sy").get<double>()};
        seg.e = {j.at("et").get<double>(), j.at("ex").get<double>(), j.at("ey").get<double>()};
        seg.d_tau = j.at("d_tau").get<double>();
        seg.owners = j.at("owners").get<std::set<TrajectoryId>>();
        segments[seg.id] = std::move(seg);
      } else if (kind == "traj") {
        TrajectoryRecord traj;
        traj.id = j.at("id").get<TrajectoryId>();
        traj.created_week = j.at("created_week").get<std::int64_t>();
        traj.epsilon_d = j.at("epsilon_d").get<double>();
        const auto& segs = j.at("segments");
        const auto& spans = j.at("spans");
        if (segs.size() != spans.size()) {
          throw DataError("segments/spans length mismatch");
        }
        for (std::size_t i = 0; i < segs.size(); ++i) {
          traj.links.push_back({segs[i].get<SegmentId>(), spans[i].at(0).get<double>(),
                                spans[i].at(1).get<double>(), spans[i].at(2).get<int>() != 0});
        }
        trajectories[traj.id] = std::move(traj);
      } else {
        throw DataError("unknown record kind '" + kind + "'");
      }
    }
  } catch (const DataError& e) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
  }
  if (!store) {
    throw DataError(path.string() + ": missing header");
  }
  for (auto& [id, seg] : segments) {
    SegmentRecord& placed = store->segments_[id] = std::move(seg);
    store->set_bound(placed, placed.d_tau);
    store->next_segment_ = std::max(store->next_segment_, id + 1);
  }
  for (auto& [id, traj] : trajectories) {
    store->trajectories_[id] = std::move(traj);
    store->next_trajectory_ = std::max(store->next_trajectory_, id + 1);
  }
  try {
    store->check_consistency();
  } catch (const InternalError& e) {
    throw DataError(path.string() + ": inconsistent store: " + e.what());
  }
  return std::move(*store);
}

}  // namespace bqs
