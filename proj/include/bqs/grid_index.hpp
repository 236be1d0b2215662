#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bqs/geometry.hpp"

namespace bqs {

/// Uniform grid over bounding boxes with exact box-intersection queries.
/// Boxes spanning too many cells go to an overflow list that is scanned.
class GridIndex {
 public:
  explicit GridIndex(double cell_size);

  void insert(std::uint64_t id, const BBox& box);
  /// No-op for unknown ids.
  void erase(std::uint64_t id);
  void clear();

  /// Ids whose box intersects `box` (closed test), ascending.
  std::vector<std::uint64_t> query(const BBox& box) const;

  std::size_t size() const { return boxes_.size(); }
  double cell_size() const { return cell_; }
  bool contains(std::uint64_t id) const { return boxes_.contains(id); }
  const BBox* box_of(std::uint64_t id) const;

 private:
  struct CellRange {
    std::int64_t x0, y0, x1, y1;
    std::int64_t count() const { return (x1 - x0 + 1) * (y1 - y0 + 1); }
  };
  CellRange cells(const BBox& box) const;
  static std::uint64_t key(std::int64_t cx, std::int64_t cy);

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> grid_;
  std::unordered_map<std::uint64_t, BBox> boxes_;
  std::vector<std::uint64_t> oversized_;
};

}  // namespace bqs
