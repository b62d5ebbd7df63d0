#include "caret/traffic.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "caret/errors.hpp"
#include "caret/text.hpp"

namespace caret {

namespace {

// Slot names carry a minute of day, so a day cannot hold more slots than
// minutes.
constexpr std::size_t kMaxSlotsPerDay = 1440;
constexpr int kSynthStartDate = 20190501;

int days_in_month(int year, int month) {
  static const int kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return kDays[month - 1];
}

int slot_minute(std::size_t index, std::size_t slots_per_day) {
  return static_cast<int>(index * 1440 / slots_per_day);
}

}  // namespace

const char* direction_token(Direction d) {
  return d == Direction::kUplink ? "UL" : "DL";
}

bool is_valid_date(int yyyymmdd) {
  const int year = yyyymmdd / 10000;
  const int month = (yyyymmdd / 100) % 100;
  const int day = yyyymmdd % 100;
  if (year < 1 || month < 1 || month > 12 || day < 1) return false;
  return day <= days_in_month(year, month);
}

int next_date(int yyyymmdd) {
  int year = yyyymmdd / 10000;
  int month = (yyyymmdd / 100) % 100;
  int day = yyyymmdd % 100 + 1;
  if (day > days_in_month(year, month)) {
    day = 1;
    if (++month > 12) {
      month = 1;
      ++year;
    }
  }
  return year * 10000 + month * 100 + day;
}

std::string SlotId::to_string() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%08dT%02d%02d", yyyymmdd, minute / 60, minute % 60);
  return buf;
}

TilewiseName parse_tilewise_name(const std::string& filename) {
  const std::string suffix = ".txt";
  if (filename.size() <= suffix.size() ||
      filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) != 0) {
    throw ParseError("tile-wise file name must end in .txt: '" + filename + "'");
  }
  const std::string stem = filename.substr(0, filename.size() - suffix.size());
  const auto parts = split(stem, '_');
  if (parts.size() < 4) {
    throw ParseError("tile-wise file name must be <city>_<app>_<YYYYMMDD>_<UL|DL>.txt: '" +
                     filename + "'");
  }
  TilewiseName name;
  name.city = parts.front();
  const std::string& dir = parts.back();
  if (dir == "UL") {
    name.direction = Direction::kUplink;
  } else if (dir == "DL") {
    name.direction = Direction::kDownlink;
  } else {
    throw ParseError("tile-wise file direction must be UL or DL: '" + filename + "'");
  }
  const std::string& date = parts[parts.size() - 2];
  const auto parsed = to_int(date);
  if (date.size() != 8 || !parsed || !is_valid_date(*parsed)) {
    throw ParseError("tile-wise file date must be a valid YYYYMMDD: '" + filename + "'");
  }
  name.yyyymmdd = *parsed;
  // The app name may itself contain underscores.
  std::string app = parts[1];
  for (std::size_t i = 2; i + 2 < parts.size(); ++i) {
    app += '_';
    app += parts[i];
  }
  if (name.city.empty() || app.empty()) {
    throw ParseError("tile-wise file name has empty city or app: '" + filename + "'");
  }
  name.app = std::move(app);
  return name;
}

TilewiseSeries read_tilewise_file(const std::filesystem::path& path, const std::string& app,
                                  int yyyymmdd, Direction direction) {
  TilewiseSeries series;
  series.app = app;
  series.yyyymmdd = yyyymmdd;
  series.direction = direction;

  const std::string file = path.string();
  const auto lines = split_lines(read_text_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto tokens = split_whitespace(lines[i]);
    if (tokens.empty()) throw ParseError(file, line_no, "empty row");
    const auto tile_id = to_i64(tokens[0]);
    if (!tile_id || *tile_id < 0) {
      throw ParseError(file, line_no, "tile id must be a non-negative integer, got '" + tokens[0] + "'");
    }
    if (tokens.size() < 2) throw ParseError(file, line_no, "row has no volume entries");
    const std::size_t volumes = tokens.size() - 1;
    if (series.slots_per_day == 0) {
      series.slots_per_day = volumes;
    } else if (volumes != series.slots_per_day) {
      throw ParseError(file, line_no,
                       "expected " + std::to_string(series.slots_per_day) + " volumes, got " +
                           std::to_string(volumes));
    }
    std::vector<std::uint64_t> row;
    row.reserve(volumes);
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const auto value = to_u64(tokens[t]);
      if (!value) {
        throw ParseError(file, line_no,
                         "volumes must be non-negative integers, got '" + tokens[t] + "'");
      }
      row.push_back(*value);
    }
    if (!series.rows.emplace(*tile_id, std::move(row)).second) {
      throw ParseError(file, line_no, "duplicate tile id " + std::to_string(*tile_id));
    }
  }
  return series;
}

std::vector<SlotTraffic> convert_to_bswise(std::span<const TilewiseSeries> series,
                                           const std::map<std::int64_t, std::string>& assignment) {
  // Per-day slot count must be consistent; empty series only contribute
  // their app to the day's app set.
  std::map<int, std::size_t> day_slots;
  std::map<int, std::set<std::string>> day_apps;
  for (const auto& s : series) {
    day_apps[s.yyyymmdd].insert(s.app);
    if (s.slots_per_day == 0) continue;
    auto [it, inserted] = day_slots.emplace(s.yyyymmdd, s.slots_per_day);
    if (!inserted && it->second != s.slots_per_day) {
      throw ConfigError("inconsistent slots per day for " + std::to_string(s.yyyymmdd) + ": " +
                        std::to_string(it->second) + " vs " + std::to_string(s.slots_per_day));
    }
  }
  for (const auto& [day, slots] : day_slots) {
    if (slots > kMaxSlotsPerDay) {
      throw ConfigError("slots per day exceeds " + std::to_string(kMaxSlotsPerDay) + " for " +
                        std::to_string(day));
    }
  }

  std::set<std::string> stations;
  for (const auto& [tile, station] : assignment) stations.insert(station);

  std::vector<SlotTraffic> out;
  for (const auto& [day, slots] : day_slots) {
    const auto& apps = day_apps.at(day);
    std::vector<SlotTraffic> day_traffic(slots);
    for (std::size_t i = 0; i < slots; ++i) {
      day_traffic[i].slot = SlotId{day, slot_minute(i, slots)};
      for (const auto& station : stations) {
        auto& record = day_traffic[i].records[station];
        for (const auto& app : apps) record[app];  // zero-volume record
      }
    }
    for (const auto& s : series) {
      if (s.yyyymmdd != day || s.slots_per_day == 0) continue;
      for (const auto& [tile, volumes] : s.rows) {
        const auto assigned = assignment.find(tile);
        if (assigned == assignment.end()) {
          throw ConfigError("tile " + std::to_string(tile) + " has no station assignment");
        }
        for (std::size_t i = 0; i < slots; ++i) {
          auto& volume = day_traffic[i].records[assigned->second][s.app];
          if (s.direction == Direction::kUplink) {
            volume.ul_bytes += volumes[i];
          } else {
            volume.dl_bytes += volumes[i];
          }
        }
      }
    }
    for (auto& slot : day_traffic) out.push_back(std::move(slot));
  }
  return out;
}

std::string slot_filename(const SlotId& slot) { return "slot_" + slot.to_string() + ".csv"; }

SlotId parse_slot_filename(const std::string& filename) {
  // slot_YYYYMMDDThhmm.csv
  const std::string prefix = "slot_";
  const std::string suffix = ".csv";
  const std::size_t expect = prefix.size() + 13 + suffix.size();
  auto fail = [&]() -> SlotId {
    throw ParseError("slot file name must be slot_<YYYYMMDD>T<hhmm>.csv: '" + filename + "'");
  };
  if (filename.size() != expect || filename.rfind(prefix, 0) != 0 ||
      filename.compare(filename.size() - suffix.size(), suffix.size(), suffix) != 0) {
    return fail();
  }
  const std::string stamp = filename.substr(prefix.size(), 13);
  if (stamp[8] != 'T') return fail();
  const auto date = to_int(stamp.substr(0, 8));
  const auto hh = to_int(stamp.substr(9, 2));
  const auto mm = to_int(stamp.substr(11, 2));
  if (!date || !hh || !mm || !is_valid_date(*date) || *hh > 23 || *mm > 59) return fail();
  return SlotId{*date, *hh * 60 + *mm};
}

void write_slot_files(std::span<const SlotTraffic> traffic, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory " + dir.string() + ": " + ec.message());

  std::set<SlotId> seen;
  for (const auto& slot : traffic) {
    if (!seen.insert(slot.slot).second) {
      throw ConfigError("duplicate slot " + slot.slot.to_string());
    }
    std::string out = "bs_id,app,ul_bytes,dl_bytes\n";
    for (const auto& [station, apps] : slot.records) {
      for (const auto& [app, volume] : apps) {
        out += station;
        out += ',';
        out += app;
        out += ',';
        out += std::to_string(volume.ul_bytes);
        out += ',';
        out += std::to_string(volume.dl_bytes);
        out += '\n';
      }
    }
    write_text_file(dir / slot_filename(slot.slot), out);
  }
}

SlotTraffic read_slot_file(const std::filesystem::path& path) {
  SlotTraffic slot;
  slot.slot = parse_slot_filename(path.filename().string());

  const std::string file = path.string();
  const auto lines = split_lines(read_text_file(path));
  if (lines.empty() || trim(lines[0]) != "bs_id,app,ul_bytes,dl_bytes") {
    throw ParseError(file, 1, "expected header 'bs_id,app,ul_bytes,dl_bytes'");
  }
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    if (trim(lines[i]).empty()) throw ParseError(file, line_no, "empty row");
    const auto fields = split(lines[i], ',');
    if (fields.size() != 4) {
      throw ParseError(file, line_no, "expected 4 fields, got " + std::to_string(fields.size()));
    }
    const std::string station(trim(fields[0]));
    const std::string app(trim(fields[1]));
    if (station.empty()) throw ParseError(file, line_no, "empty station id");
    if (app.empty()) throw ParseError(file, line_no, "empty app name");
    const auto ul = to_u64(trim(fields[2]));
    const auto dl = to_u64(trim(fields[3]));
    if (!ul || !dl) {
      throw ParseError(file, line_no, "byte volumes must be non-negative integers");
    }
    auto& apps = slot.records[station];
    if (!apps.emplace(app, AppVolume{*ul, *dl}).second) {
      throw ParseError(file, line_no, "duplicate row for (" + station + ", " + app + ")");
    }
  }
  return slot;
}

SynthOutput generate_synthetic(const SynthConfig& config) {
  if (config.station_count < 1 || config.app_count < 1 || config.slots_per_day < 1 ||
      config.days < 1) {
    throw ConfigError("synthetic config counts must all be >= 1");
  }
  if (config.slots_per_day > kMaxSlotsPerDay) {
    throw ConfigError("slots per day must be <= " + std::to_string(kMaxSlotsPerDay));
  }
  if (config.volume_scale < 1 || config.volume_scale > 1000000000ull) {
    throw ConfigError("volume scale must be in [1, 1e9]");
  }

  std::mt19937_64 rng(config.seed);
  // mt19937_64 output is fully specified; reduction by modulo keeps the
  // stream platform-independent (std distributions are not).
  auto draw = [&rng](std::uint64_t bound) { return rng() % (bound + 1); };

  SynthOutput out;
  const double base_lat = 48.0;
  const double base_lon = 11.0;
  const double spacing = 0.01;

  std::size_t grid = 1;
  while (grid * grid < config.station_count) ++grid;

  int id_width = 4;
  for (std::size_t v = config.station_count - 1; v >= 10000; v /= 10) ++id_width;

  for (std::size_t i = 0; i < config.station_count; ++i) {
    const std::size_t row = i / grid;
    const std::size_t col = i % grid;
    const double jitter_lat = -0.002 + static_cast<double>(draw(4000)) * 1e-6;
    const double jitter_lon = -0.002 + static_cast<double>(draw(4000)) * 1e-6;
    char id[32];
    std::snprintf(id, sizeof(id), "bs%0*zu", id_width, i);
    out.stations.push_back(BaseStation{
        id,
        GeoPoint(base_lat + static_cast<double>(row) * spacing + jitter_lat,
                 base_lon + static_cast<double>(col) * spacing + jitter_lon),
        true});
  }

  const std::size_t tile_grid = 2 * grid;
  for (std::size_t i = 0; i < tile_grid * tile_grid; ++i) {
    const std::size_t row = i / tile_grid;
    const std::size_t col = i % tile_grid;
    const double jitter_lat = -0.001 + static_cast<double>(draw(2000)) * 1e-6;
    const double jitter_lon = -0.001 + static_cast<double>(draw(2000)) * 1e-6;
    out.tiles.push_back(Tile{
        static_cast<std::int64_t>(i),
        GeoPoint(base_lat + static_cast<double>(row) * spacing / 2.0 + jitter_lat,
                 base_lon + static_cast<double>(col) * spacing / 2.0 + jitter_lon)});
  }

  std::vector<std::string> apps;
  int app_width = 2;
  for (std::size_t v = config.app_count - 1; v >= 100; v /= 10) ++app_width;
  for (std::size_t a = 0; a < config.app_count; ++a) {
    char name[32];
    std::snprintf(name, sizeof(name), "app%0*zu", app_width, a);
    apps.emplace_back(name);
  }

  int date = kSynthStartDate;
  for (std::size_t d = 0; d < config.days; ++d) {
    for (std::size_t i = 0; i < config.slots_per_day; ++i) {
      SlotTraffic slot;
      slot.slot = SlotId{date, slot_minute(i, config.slots_per_day)};
      for (const auto& station : out.stations) {
        auto& record = slot.records[station.id];
        for (const auto& app : apps) {
          record[app] = AppVolume{config.volume_scale * draw(1000),
                                  config.volume_scale * draw(1000)};
        }
      }
      out.traffic.push_back(std::move(slot));
    }
    date = next_date(date);
  }
  return out;
}

namespace {

void add_volume(TrafficTotals& totals, const std::string& station, const std::string& app,
                const AppVolume& volume) {
  const std::uint64_t bytes = volume.ul_bytes + volume.dl_bytes;
  totals.per_station[station] += bytes;
  totals.per_app[app] += bytes;
  totals.per_station_app[{station, app}] += bytes;
  totals.grand_total += bytes;
}

}  // namespace

TrafficTotals accumulate_totals(std::span<const SlotTraffic> slots) {
  TrafficTotals totals;
  for (const auto& slot : slots) {
    for (const auto& [station, apps] : slot.records) {
      for (const auto& [app, volume] : apps) add_volume(totals, station, app, volume);
    }
  }
  return totals;
}

TrafficTotals accumulate_totals_filtered(std::span<const SlotTraffic> slots,
                                         const std::set<std::string>& apps,
                                         const std::set<std::string>& stations) {
  TrafficTotals totals;
  for (const auto& slot : slots) {
    for (const auto& [station, station_apps] : slot.records) {
      if (!stations.contains(station)) continue;
      for (const auto& [app, volume] : station_apps) {
        if (apps.contains(app)) add_volume(totals, station, app, volume);
      }
    }
  }
  return totals;
}

}  // namespace caret
