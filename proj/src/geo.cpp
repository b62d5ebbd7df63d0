#include "caret/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "caret/errors.hpp"
#include "caret/text.hpp"

namespace caret {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool valid_coordinates(double lat, double lon) {
  return std::isfinite(lat) && std::isfinite(lon) && lat >= -90.0 && lat <= 90.0 &&
         lon >= -180.0 && lon <= 180.0;
}

}  // namespace

GeoPoint::GeoPoint(double lat_deg, double lon_deg) : lat(lat_deg), lon(lon_deg) {
  if (!valid_coordinates(lat, lon)) {
    throw ConfigError("coordinates out of range: lat=" + format_double(lat_deg) +
                      " lon=" + format_double(lon_deg));
  }
}

double haversine_distance(const GeoPoint& a, const GeoPoint& b) {
  const double phi_a = a.lat * kDegToRad;
  const double phi_b = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi_a) * std::cos(phi_b) * s2 * s2;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

std::map<std::int64_t, std::string> assign_tiles(std::span<const Tile> tiles,
                                                 std::span<const BaseStation> stations) {
  if (stations.empty()) throw ConfigError("tile assignment requires at least one station");

  std::vector<const BaseStation*> by_id;
  by_id.reserve(stations.size());
  for (const auto& s : stations) by_id.push_back(&s);
  std::sort(by_id.begin(), by_id.end(),
            [](const BaseStation* a, const BaseStation* b) { return a->id < b->id; });

  std::map<std::int64_t, std::string> assignment;
  for (const auto& tile : tiles) {
    const BaseStation* best = nullptr;
    double best_distance = 0.0;
    // Stations are visited in id order, so the first minimum wins ties.
    for (const BaseStation* s : by_id) {
      const double d = haversine_distance(tile.centroid, s->location);
      if (best == nullptr || d < best_distance) {
        best = s;
        best_distance = d;
      }
    }
    assignment.emplace(tile.id, best->id);
  }
  return assignment;
}

CityMap build_city_map(std::vector<BaseStation> stations, std::vector<Tile> tiles) {
  CityMap map;
  map.assignment = assign_tiles(tiles, stations);
  map.stations = std::move(stations);
  map.tiles = std::move(tiles);
  return map;
}

namespace {

double parse_coordinate(const std::string& field, double lo, double hi, const std::string& file,
                        std::size_t line, const char* what) {
  const auto value = to_double(trim(field));
  if (!value) throw ParseError(file, line, std::string("malformed ") + what + " '" + field + "'");
  if (!std::isfinite(*value) || *value < lo || *value > hi) {
    throw ParseError(file, line,
                     std::string(what) + " out of range [" + format_double(lo) + ", " +
                         format_double(hi) + "]: " + field);
  }
  return *value;
}

}  // namespace

std::vector<BaseStation> load_station_registry(const std::filesystem::path& path) {
  const std::string file = path.string();
  const auto lines = split_lines(read_text_file(path));
  if (lines.empty() || trim(lines[0]) != "bs_id,lat,lon,edge_capable") {
    throw ParseError(file, 1, "expected header 'bs_id,lat,lon,edge_capable'");
  }

  std::vector<BaseStation> stations;
  std::set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) throw ParseError(file, line_no, "empty row");
    const auto fields = split(lines[i], ',');
    if (fields.size() != 4) {
      throw ParseError(file, line_no,
                       "expected 4 fields, got " + std::to_string(fields.size()));
    }
    BaseStation station;
    station.id = std::string(trim(fields[0]));
    if (station.id.empty()) throw ParseError(file, line_no, "empty station id");
    if (!seen.insert(station.id).second) {
      throw ParseError(file, line_no, "duplicate station id '" + station.id + "'");
    }
    const double lat = parse_coordinate(fields[1], -90.0, 90.0, file, line_no, "lat");
    const double lon = parse_coordinate(fields[2], -180.0, 180.0, file, line_no, "lon");
    station.location = GeoPoint(lat, lon);
    const auto flag = trim(fields[3]);
    if (flag == "0") {
      station.edge_capable = false;
    } else if (flag == "1") {
      station.edge_capable = true;
    } else {
      throw ParseError(file, line_no, "edge_capable must be 0 or 1, got '" + fields[3] + "'");
    }
    stations.push_back(std::move(station));
  }
  return stations;
}

std::vector<Tile> load_tile_registry(const std::filesystem::path& path) {
  const std::string file = path.string();
  const auto lines = split_lines(read_text_file(path));
  if (lines.empty() || trim(lines[0]) != "tile_id,lat,lon") {
    throw ParseError(file, 1, "expected header 'tile_id,lat,lon'");
  }

  std::vector<Tile> tiles;
  std::set<std::int64_t> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) throw ParseError(file, line_no, "empty row");
    const auto fields = split(lines[i], ',');
    if (fields.size() != 3) {
      throw ParseError(file, line_no,
                       "expected 3 fields, got " + std::to_string(fields.size()));
    }
    const auto id = to_i64(trim(fields[0]));
    if (!id || *id < 0) throw ParseError(file, line_no, "tile_id must be a non-negative integer");
    if (!seen.insert(*id).second) {
      throw ParseError(file, line_no, "duplicate tile id " + std::to_string(*id));
    }
    const double lat = parse_coordinate(fields[1], -90.0, 90.0, file, line_no, "lat");
    const double lon = parse_coordinate(fields[2], -180.0, 180.0, file, line_no, "lon");
    tiles.push_back(Tile{*id, GeoPoint(lat, lon)});
  }
  return tiles;
}

void write_station_registry(std::span<const BaseStation> stations,
                            const std::filesystem::path& path) {
  std::string out = "bs_id,lat,lon,edge_capable\n";
  for (const auto& s : stations) {
    out += s.id;
    out += ',';
    out += format_double(s.location.lat);
    out += ',';
    out += format_double(s.location.lon);
    out += ',';
    out += s.edge_capable ? '1' : '0';
    out += '\n';
  }
  write_text_file(path, out);
}

void write_tile_registry(std::span<const Tile> tiles, const std::filesystem::path& path) {
  std::string out = "tile_id,lat,lon\n";
  for (const auto& t : tiles) {
    out += std::to_string(t.id);
    out += ',';
    out += format_double(t.centroid.lat);
    out += ',';
    out += format_double(t.centroid.lon);
    out += '\n';
  }
  write_text_file(path, out);
}

}  // namespace caret
