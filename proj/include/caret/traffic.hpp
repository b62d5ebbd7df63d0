#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caret/geo.hpp"

namespace caret {

enum class Direction { kUplink, kDownlink };

const char* direction_token(Direction d);  // "UL" / "DL"

bool is_valid_date(int yyyymmdd);
int next_date(int yyyymmdd);

/// Day + minute-of-day; prints as `<YYYYMMDD>T<hhmm>`.
struct SlotId {
  int yyyymmdd = 0;
  int minute = 0;

  auto operator<=>(const SlotId&) const = default;
  std::string to_string() const;
};

/// One tile-wise input file: per-tile volume vectors for a single
/// (app, day, direction). All rows carry exactly `slots_per_day` values.
struct TilewiseSeries {
  std::string app;
  int yyyymmdd = 0;
  Direction direction = Direction::kUplink;
  std::size_t slots_per_day = 0;  // 0 only for an empty series
  std::map<std::int64_t, std::vector<std::uint64_t>> rows;
};

struct AppVolume {
  std::uint64_t ul_bytes = 0;
  std::uint64_t dl_bytes = 0;

  bool operator==(const AppVolume&) const = default;
};

/// Station-wise traffic for one time slot: station -> app -> volumes.
struct SlotTraffic {
  SlotId slot;
  std::map<std::string, std::map<std::string, AppVolume>> records;

  bool operator==(const SlotTraffic&) const = default;
};

/// Byte totals over a traffic window, the ranking input for strategies.
struct TrafficTotals {
  std::map<std::string, std::uint64_t> per_station;
  std::map<std::string, std::uint64_t> per_app;
  std::map<std::pair<std::string, std::string>, std::uint64_t> per_station_app;
  std::uint64_t grand_total = 0;
};

struct SynthConfig {
  std::size_t station_count = 10;
  std::size_t app_count = 3;
  std::size_t slots_per_day = 96;
  std::size_t days = 1;
  std::uint64_t volume_scale = 1;
  std::uint64_t seed = 0;
};

struct SynthOutput {
  std::vector<BaseStation> stations;
  std::vector<Tile> tiles;
  std::vector<SlotTraffic> traffic;
};

/// Splits a tile-wise file name `<city>_<app>_<YYYYMMDD>_<UL|DL>.txt`.
struct TilewiseName {
  std::string city;
  std::string app;
  int yyyymmdd = 0;
  Direction direction = Direction::kUplink;
};
TilewiseName parse_tilewise_name(const std::string& filename);

/// Reads one tile-wise file: whitespace-separated rows `tile_id v1 ... vS`,
/// no header. S is taken from the first row; every other row must match.
/// Tiles absent from the file count as all-zero.
TilewiseSeries read_tilewise_file(const std::filesystem::path& path, const std::string& app,
                                  int yyyymmdd, Direction direction);

/// Aggregates tile-wise series into per-slot station-wise traffic. Volumes
/// are exact integer sums over each station's tiles; UL and DL series of the
/// same (app, day) join into one record. Every station named in the
/// assignment gets a record for every app seen that day, zeros included.
std::vector<SlotTraffic> convert_to_bswise(std::span<const TilewiseSeries> series,
                                           const std::map<std::int64_t, std::string>& assignment);

std::string slot_filename(const SlotId& slot);
SlotId parse_slot_filename(const std::string& filename);

/// Writes one CSV per slot (`bs_id,app,ul_bytes,dl_bytes`, rows sorted by
/// (bs_id, app)) into `dir`, named by slot_filename.
void write_slot_files(std::span<const SlotTraffic> traffic, const std::filesystem::path& dir);

/// Reads one slot file; the slot id comes from the file name. Duplicate
/// (bs_id, app) rows are rejected.
SlotTraffic read_slot_file(const std::filesystem::path& path);

/// Deterministic synthetic city: stations on a jittered grid, a finer tile
/// grid, and seeded per-station per-app volumes. Identical configs produce
/// identical output; volumes scale linearly with `volume_scale`.
SynthOutput generate_synthetic(const SynthConfig& config);

TrafficTotals accumulate_totals(std::span<const SlotTraffic> slots);

/// Totals restricted to the given apps and stations.
TrafficTotals accumulate_totals_filtered(std::span<const SlotTraffic> slots,
                                         const std::set<std::string>& apps,
                                         const std::set<std::string>& stations);

}  // namespace caret
