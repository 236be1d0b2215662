#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bqs/compressors.hpp"
#include "bqs/store.hpp"

namespace bqs {

enum class TrackFormat { planar, geo };

/// A parsed track CSV: header `t,x,y` (planar) or `t,lat,lon` (geo).
struct TrackFile {
  TrackFormat format = TrackFormat::planar;
  std::vector<TrackPoint> planar;
  std::vector<GeoFix> geo;
};

/// Throws DataError naming the source and line of the first malformed row.
TrackFile read_track_csv(std::istream& in, std::string_view source = "<input>");
TrackFile read_track_csv(const std::filesystem::path& path);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double v);

void write_track_csv(std::ostream& out, std::span<const TrackPoint> points);

/// `t,x,y,d_tau`: one row per kept point; d_tau sits on the row closing each
/// segment and the first row carries 0.
void write_compressed_csv(std::ostream& out, const CompressedTrajectory& ct);

}  // namespace bqs
