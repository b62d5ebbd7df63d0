#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace caret {

/// Geographic point in degrees. Construction validates finiteness and range.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  GeoPoint() = default;
  GeoPoint(double lat_deg, double lon_deg);
};

struct BaseStation {
  std::string id;
  GeoPoint location;
  bool edge_capable = false;
};

/// Spatial unit of the source traffic data, reduced to its centroid.
struct Tile {
  std::int64_t id = 0;
  GeoPoint centroid;
};

/// Stations, tiles, and the tile -> serving-station assignment.
struct CityMap {
  std::vector<BaseStation> stations;
  std::vector<Tile> tiles;
  std::map<std::int64_t, std::string> assignment;
};

inline constexpr double kEarthRadiusM = 6371000.0;

/// Great-circle distance in meters (haversine, mean Earth radius).
double haversine_distance(const GeoPoint& a, const GeoPoint& b);

/// Maps each tile to the station with the smallest centroid distance.
/// Exact distance ties go to the lexicographically smaller station id.
std::map<std::int64_t, std::string> assign_tiles(std::span<const Tile> tiles,
                                                 std::span<const BaseStation> stations);

CityMap build_city_map(std::vector<BaseStation> stations, std::vector<Tile> tiles);

/// Reads a station registry: CSV with header `bs_id,lat,lon,edge_capable`,
/// `edge_capable` in {0,1}. Duplicate ids, malformed rows, and out-of-range
/// coordinates are reported with their line number.
std::vector<BaseStation> load_station_registry(const std::filesystem::path& path);

/// Reads a tile registry: CSV with header `tile_id,lat,lon`.
std::vector<Tile> load_tile_registry(const std::filesystem::path& path);

void write_station_registry(std::span<const BaseStation> stations,
                            const std::filesystem::path& path);
void write_tile_registry(std::span<const Tile> tiles, const std::filesystem::path& path);

}  // namespace caret
