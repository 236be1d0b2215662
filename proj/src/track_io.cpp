#include "bqs/track_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "bqs/errors.hpp"

namespace bqs {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool split3(std::string_view line, std::array<std::string_view, 3>& out) {
  std::size_t field = 0;
  for (;;) {
    const std::size_t comma = line.find(',');
    if (field == 3) {
      return false;
    }
    out[field++] = trim(line.substr(0, comma));
    if (comma == std::string_view::npos) {
      return field == 3;
    }
    line.remove_prefix(comma + 1);
  }
}

bool parse_double(std::string_view s, double& v) {
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
}

}  // namespace

TrackFile read_track_csv(std::istream& in, std::string_view source) {
  TrackFile file;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  auto fail = [&](const std::string& what) {
    throw DataError(std::string(source) + ":" + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) {
      continue;
    }
    std::array<std::string_view, 3> f;
    if (!split3(text, f)) {
      fail("expected 3 comma-separated fields");
    }
    if (!have_header) {
      if (f[0] == "t" && f[1] == "x" && f[2] == "y") {
        file.format = TrackFormat::planar;
      } else if (f[0] == "t" && f[1] == "lat" && f[2] == "lon") {
        file.format = TrackFormat::geo;
      } else {
        fail("header must be 't,x,y' or 't,lat,lon'");
      }
      have_header = true;
      continue;
    }
    std::array<double, 3> v{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!parse_double(f[i], v[i])) {
        fail("malformed number '" + std::string(f[i]) + "'");
      }
    }
    if (file.format == TrackFormat::planar) {
      file.planar.push_back({v[0], v[1], v[2]});
    } else {
      file.geo.push_back({v[0], v[1], v[2]});
    }
  }
  if (!have_header) {
    throw DataError(std::string(source) + ": missing header");
  }
  return file;
}

TrackFile read_track_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open " + path.string());
  }
  return read_track_csv(in, path.string());
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

void write_track_csv(std::ostream& out, std::span<const TrackPoint> points) {
  out << "t,x,y\n";
  for (const TrackPoint& p : points) {
    out << format_number(p.t) << ',' << format_number(p.x) << ',' << format_number(p.y) << '\n';
  }
}

void write_compressed_csv(std::ostream& out, const CompressedTrajectory& ct) {
  out << "t,x,y,d_tau\n";
  for (std::size_t i = 0; i < ct.kept.size(); ++i) {
    const TrackPoint& p = ct.kept[i];
    const double d = i == 0 ? 0.0 : ct.segment_bounds[i - 1];
    out << format_number(p.t) << ',' << format_number(p.x) << ',' << format_number(p.y) << ','
        << format_number(d) << '\n';
  }
}

}  // namespace bqs
