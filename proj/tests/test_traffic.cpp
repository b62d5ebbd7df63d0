#include <doctest.h>

#include <algorithm>
#include <random>

#include "caret/errors.hpp"
#include "caret/text.hpp"
#include "caret/traffic.hpp"
#include "support.hpp"

using namespace caret;

TEST_CASE("slot ids format and parse") {
  CHECK(SlotId{20190531, 0}.to_string() == "20190531T0000");
  CHECK(SlotId{20190531, 15}.to_string() == "20190531T0015");
  CHECK(SlotId{20191201, 23 * 60 + 45}.to_string() == "20191201T2345");
  CHECK(slot_filename(SlotId{20190531, 15}) == "slot_20190531T0015.csv");
  CHECK(parse_slot_filename("slot_20190531T0015.csv") == SlotId{20190531, 15});
  CHECK_THROWS_AS(parse_slot_filename("slot_20190531.csv"), ParseError);
  CHECK_THROWS_AS(parse_slot_filename("slot_20191301T0000.csv"), ParseError);
  CHECK_THROWS_AS(parse_slot_filename("slot_20190531T2500.csv"), ParseError);
}

TEST_CASE("calendar helpers") {
  CHECK(is_valid_date(20190531));
  CHECK_FALSE(is_valid_date(20190532));
  CHECK_FALSE(is_valid_date(20190229));
  CHECK(is_valid_date(20200229));
  CHECK(next_date(20190531) == 20190601);
  CHECK(next_date(20191231) == 20200101);
  CHECK(next_date(20200228) == 20200229);
}

TEST_CASE("tile-wise file names parse") {
  const auto name = parse_tilewise_name("paris_netflix_20190531_UL.txt");
  CHECK(name.city == "paris");
  CHECK(name.app == "netflix");
  CHECK(name.yyyymmdd == 20190531);
  CHECK(name.direction == Direction::kUplink);

  const auto multi = parse_tilewise_name("lyon_app_store_20190601_DL.txt");
  CHECK(multi.app == "app_store");
  CHECK(multi.direction == Direction::kDownlink);

  CHECK_THROWS_AS(parse_tilewise_name("paris_netflix_20190531_XX.txt"), ParseError);
  CHECK_THROWS_AS(parse_tilewise_name("paris_20190531_UL.txt"), ParseError);
  CHECK_THROWS_AS(parse_tilewise_name("paris_netflix_2019053_UL.txt"), ParseError);
}

TEST_CASE("tile-wise files read rows of equal width") {
  test::TempDir dir("tilewise");
  write_text_file(dir / "f.txt", "0 3 5 0 2\n7 1 0 0 9\n");
  const auto series = read_tilewise_file(dir / "f.txt", "chat", 20190531, Direction::kUplink);
  CHECK(series.slots_per_day == 4);
  REQUIRE(series.rows.size() == 2);
  CHECK(series.rows.at(0) == std::vector<std::uint64_t>{3, 5, 0, 2});
  CHECK(series.rows.at(7) == std::vector<std::uint64_t>{1, 0, 0, 9});
}

TEST_CASE("an empty tile-wise file yields an empty series") {
  test::TempDir dir("tilewise");
  write_text_file(dir / "empty.txt", "");
  const auto series = read_tilewise_file(dir / "empty.txt", "chat", 20190531, Direction::kUplink);
  CHECK(series.rows.empty());
  CHECK(series.slots_per_day == 0);
}

TEST_CASE("tile-wise rows with mismatched width are rejected") {
  test::TempDir dir("tilewise");
  write_text_file(dir / "bad.txt", "0 3 5 0 2\n1 4 4 4\n");
  CHECK_THROWS_WITH_AS(read_tilewise_file(dir / "bad.txt", "chat", 20190531, Direction::kUplink),
                       doctest::Contains(":2: expected 4 volumes"), ParseError);
}

TEST_CASE("tile-wise volumes must be non-negative integers") {
  test::TempDir dir("tilewise");
  write_text_file(dir / "neg.txt", "0 3 -5\n");
  CHECK_THROWS_AS(read_tilewise_file(dir / "neg.txt", "chat", 20190531, Direction::kUplink),
                  ParseError);
  write_text_file(dir / "frac.txt", "0 3 5.5\n");
  CHECK_THROWS_AS(read_tilewise_file(dir / "frac.txt", "chat", 20190531, Direction::kUplink),
                  ParseError);
  write_text_file(dir / "dup.txt", "0 1 2\n0 3 4\n");
  CHECK_THROWS_AS(read_tilewise_file(dir / "dup.txt", "chat", 20190531, Direction::kUplink),
                  ParseError);
}

namespace {

TilewiseSeries make_series(const std::string& app, Direction direction,
                           std::map<std::int64_t, std::vector<std::uint64_t>> rows) {
  TilewiseSeries s;
  s.app = app;
  s.yyyymmdd = 20190531;
  s.direction = direction;
  s.rows = std::move(rows);
  s.slots_per_day = s.rows.empty() ? 0 : s.rows.begin()->second.size();
  return s;
}

}  // namespace

TEST_CASE("conversion sums tile volumes per station and slot") {
  const std::vector<TilewiseSeries> series{
      make_series("X", Direction::kUplink, {{1, {3, 5}}, {2, {2, 0}}}),
  };
  const std::map<std::int64_t, std::string> assignment{{1, "A"}, {2, "A"}};
  const auto slots = convert_to_bswise(series, assignment);
  REQUIRE(slots.size() == 2);
  CHECK(slots[0].records.at("A").at("X") == AppVolume{5, 0});
  CHECK(slots[1].records.at("A").at("X") == AppVolume{5, 0});
}

TEST_CASE("conversion keeps zero-volume records") {
  const std::vector<TilewiseSeries> series{
      make_series("X", Direction::kUplink, {{1, {0, 0}}}),
  };
  const std::map<std::int64_t, std::string> assignment{{1, "A"}, {2, "B"}};
  const auto slots = convert_to_bswise(series, assignment);
  REQUIRE(slots.size() == 2);
  // Both stations appear, including B which received nothing.
  CHECK(slots[0].records.at("A").at("X") == AppVolume{0, 0});
  CHECK(slots[0].records.at("B").at("X") == AppVolume{0, 0});
}

TEST_CASE("disjoint assignments keep per-station values separate") {
  const std::vector<TilewiseSeries> series{
      make_series("X", Direction::kUplink, {{1, {3}}, {2, {4}}}),
      make_series("X", Direction::kDownlink, {{1, {7}}, {2, {9}}}),
  };
  const std::map<std::int64_t, std::string> assignment{{1, "A"}, {2, "B"}};
  const auto slots = convert_to_bswise(series, assignment);
  REQUIRE(slots.size() == 1);
  CHECK(slots[0].records.at("A").at("X") == AppVolume{3, 7});
  CHECK(slots[0].records.at("B").at("X") == AppVolume{4, 9});
}

TEST_CASE("conversion rejects unassigned tiles") {
  const std::vector<TilewiseSeries> series{
      make_series("X", Direction::kUplink, {{99, {1}}}),
  };
  const std::map<std::int64_t, std::string> assignment{{1, "A"}};
  CHECK_THROWS_WITH_AS(convert_to_bswise(series, assignment), doctest::Contains("99"),
                       ConfigError);
}

TEST_CASE("conversion conserves bytes and ignores tile order") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 10; ++round) {
    const std::size_t tiles = 1 + rng() % 30;
    const std::size_t slots_per_day = 1 + rng() % 12;
    const std::size_t stations = 1 + rng() % 5;
    std::map<std::int64_t, std::string> assignment;
    for (std::size_t t = 0; t < tiles; ++t) {
      assignment[static_cast<std::int64_t>(t)] = "s" + std::to_string(rng() % stations);
    }
    std::vector<TilewiseSeries> series;
    std::uint64_t total_in = 0;
    for (const auto app : {"a1", "a2"}) {
      for (const auto direction : {Direction::kUplink, Direction::kDownlink}) {
        std::map<std::int64_t, std::vector<std::uint64_t>> rows;
        for (std::size_t t = 0; t < tiles; ++t) {
          std::vector<std::uint64_t> row(slots_per_day);
          for (auto& v : row) {
            v = rng() % 1000;
            total_in += v;
          }
          rows[static_cast<std::int64_t>(t)] = std::move(row);
        }
        series.push_back(make_series(app, direction, std::move(rows)));
      }
    }
    const auto slots = convert_to_bswise(series, assignment);
    std::uint64_t total_out = 0;
    for (const auto& slot : slots) {
      for (const auto& [station, apps] : slot.records) {
        for (const auto& [app, volume] : apps) total_out += volume.ul_bytes + volume.dl_bytes;
      }
    }
    CHECK(total_in == total_out);

    // Same series presented in a different order converts identically.
    auto shuffled = series;
    std::reverse(shuffled.begin(), shuffled.end());
    const auto again = convert_to_bswise(shuffled, assignment);
    CHECK(slots == again);
  }
}

TEST_CASE("slot files round-trip losslessly") {
  SlotTraffic slot;
  slot.slot = SlotId{20190531, 30};
  slot.records["A"]["chat"] = AppVolume{12, 34};
  slot.records["A"]["nav"] = AppVolume{0, 0};
  slot.records["B"]["chat"] = AppVolume{5, 0};

  test::TempDir dir("slots");
  write_slot_files(std::vector<SlotTraffic>{slot}, dir.path());
  const auto path = dir / "slot_20190531T0030.csv";
  REQUIRE(std::filesystem::exists(path));
  const auto loaded = read_slot_file(path);
  CHECK(loaded == slot);

  // Rows come out sorted by (bs_id, app).
  const auto content = read_text_file(path);
  CHECK(content ==
        "bs_id,app,ul_bytes,dl_bytes\n"
        "A,chat,12,34\n"
        "A,nav,0,0\n"
        "B,chat,5,0\n");
}

TEST_CASE("slot files reject duplicate rows") {
  test::TempDir dir("slots");
  write_text_file(dir / "slot_20190531T0000.csv",
                  "bs_id,app,ul_bytes,dl_bytes\nA,chat,1,2\nA,chat,3,4\n");
  CHECK_THROWS_WITH_AS(read_slot_file(dir / "slot_20190531T0000.csv"),
                       doctest::Contains("duplicate row"), ParseError);
}

TEST_CASE("slot files reject negative and malformed volumes") {
  test::TempDir dir("slots");
  write_text_file(dir / "slot_20190531T0000.csv", "bs_id,app,ul_bytes,dl_bytes\nA,chat,-1,2\n");
  CHECK_THROWS_AS(read_slot_file(dir / "slot_20190531T0000.csv"), ParseError);
  write_text_file(dir / "slot_20190531T0015.csv", "bs_id,app,ul_bytes,dl_bytes\nA,chat,1\n");
  CHECK_THROWS_AS(read_slot_file(dir / "slot_20190531T0015.csv"), ParseError);
}

TEST_CASE("synthetic generation is reproducible") {
  SynthConfig config;
  config.station_count = 15;
  config.app_count = 4;
  config.slots_per_day = 6;
  config.days = 2;
  config.seed = 99;
  const auto first = generate_synthetic(config);
  const auto second = generate_synthetic(config);
  CHECK(first.traffic == second.traffic);
  REQUIRE(first.stations.size() == 15);
  CHECK(first.traffic.size() == 12);
  for (std::size_t i = 0; i < first.stations.size(); ++i) {
    CHECK(first.stations[i].id == second.stations[i].id);
    CHECK(first.stations[i].location.lat == second.stations[i].location.lat);
  }

  SynthConfig other = config;
  other.seed = 100;
  CHECK(generate_synthetic(other).traffic != first.traffic);
}

TEST_CASE("a one-station city holds all synthetic traffic") {
  SynthConfig config;
  config.station_count = 1;
  config.app_count = 2;
  config.slots_per_day = 3;
  const auto output = generate_synthetic(config);
  for (const auto& slot : output.traffic) {
    CHECK(slot.records.size() == 1);
    CHECK(slot.records.begin()->first == "bs0000");
  }
}

TEST_CASE("doubling the volume scale doubles every synthetic volume") {
  SynthConfig config;
  config.station_count = 5;
  config.app_count = 2;
  config.slots_per_day = 4;
  config.seed = 7;
  config.volume_scale = 3;
  const auto base = generate_synthetic(config);
  config.volume_scale = 6;
  const auto doubled = generate_synthetic(config);
  REQUIRE(base.traffic.size() == doubled.traffic.size());
  for (std::size_t i = 0; i < base.traffic.size(); ++i) {
    for (const auto& [station, apps] : base.traffic[i].records) {
      for (const auto& [app, volume] : apps) {
        const auto& big = doubled.traffic[i].records.at(station).at(app);
        CHECK(big.ul_bytes == 2 * volume.ul_bytes);
        CHECK(big.dl_bytes == 2 * volume.dl_bytes);
      }
    }
  }
}

TEST_CASE("synthetic config validation") {
  SynthConfig config;
  config.station_count = 0;
  CHECK_THROWS_AS(generate_synthetic(config), ConfigError);
  config = SynthConfig{};
  config.slots_per_day = 2000;
  CHECK_THROWS_AS(generate_synthetic(config), ConfigError);
  config = SynthConfig{};
  config.volume_scale = 0;
  CHECK_THROWS_AS(generate_synthetic(config), ConfigError);
}

TEST_CASE("traffic totals accumulate per station, app, and pair") {
  const auto micro = test::make_micro_scenario();
  const auto totals = accumulate_totals(std::vector<SlotTraffic>{micro.slot});
  CHECK(totals.grand_total == 15);
  CHECK(totals.per_station.at("A") == 2);
  CHECK(totals.per_station.at("B") == 10);
  CHECK(totals.per_station.at("C") == 3);
  CHECK(totals.per_app.at("X") == 15);
  CHECK(totals.per_station_app.at({"B", "X"}) == 10);

  const auto filtered = accumulate_totals_filtered(std::vector<SlotTraffic>{micro.slot}, {"X"},
                                                   {"A", "B"});
  CHECK(filtered.grand_total == 12);
  CHECK(!filtered.per_station.contains("C"));
}
