#include "bqs/grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bqs {

namespace {
constexpr std::int64_t kMaxCellsPerBox = 1024;
}

GridIndex::GridIndex(double cell_size) : cell_(cell_size) {
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw std::invalid_argument("GridIndex: cell size must be positive");
  }
}

std::uint64_t GridIndex::key(std::int64_t cx, std::int64_t cy) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)) << 32) |
         static_cast<std::uint32_t>(cy);
}

GridIndex::CellRange GridIndex::cells(const BBox& box) const {
  auto c = [this](double v) { return static_cast<std::int64_t>(std::floor(v / cell_)); };
  return {c(box.min_x), c(box.min_y), c(box.max_x), c(box.max_y)};
}

void GridIndex::insert(std::uint64_t id, const BBox& box) {
  erase(id);
  boxes_.emplace(id, box);
  const CellRange r = cells(box);
  if (r.count() > kMaxCellsPerBox) {
    oversized_.push_back(id);
    return;
  }
  for (std::int64_t cx = r.x0; cx <= r.x1; ++cx) {
    for (std::int64_t cy = r.y0; cy <= r.y1; ++cy) {
      grid_[key(cx, cy)].push_back(id);
    }
  }
}

void GridIndex::erase(std::uint64_t id) {
  const auto it = boxes_.find(id);
  if (it == boxes_.end()) {
    return;
  }
  const CellRange r = cells(it->second);
  if (r.count() > kMaxCellsPerBox) {
    std::erase(oversized_, id);
  } else {
    for (std::int64_t cx = r.x0; cx <= r.x1; ++cx) {
      for (std::int64_t cy = r.y0; cy <= r.y1; ++cy) {
        const auto cell = grid_.find(key(cx, cy));
        if (cell == grid_.end()) {
          continue;
        }
        std::erase(cell->second, id);
        if (cell->second.empty()) {
          grid_.erase(cell);
        }
      }
    }
  }
  boxes_.erase(it);
}

void GridIndex::clear() {
  grid_.clear();
  boxes_.clear();
  oversized_.clear();
}

const BBox* GridIndex::box_of(std::uint64_t id) const {
  const auto it = boxes_.find(id);
  return it == boxes_.end() ? nullptr : &it->second;
}

std::vector<std::uint64_t> GridIndex::query(const BBox& box) const {
  std::vector<std::uint64_t> hits;
  auto consider = [&](std::uint64_t id) {
    if (bbox_intersects(boxes_.at(id), box)) {
      hits.push_back(id);
    }
  };
  const CellRange r = cells(box);
  if (r.count() > static_cast<std::int64_t>(grid_.size())) {
    // Cheaper to walk the occupied cells than the query's cell range.
    for (const auto& [k, ids] : grid_) {
      for (std::uint64_t id : ids) {
        consider(id);
      }
    }
  } else {
    for (std::int64_t cx = r.x0; cx <= r.x1; ++cx) {
      for (std::int64_t cy = r.y0; cy <= r.y1; ++cy) {
        const auto cell = grid_.find(key(cx, cy));
        if (cell != grid_.end()) {
          for (std::uint64_t id : cell->second) {
            consider(id);
          }
        }
      }
    }
  }
  for (std::uint64_t id : oversized_) {
    consider(id);
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

}  // namespace bqs
