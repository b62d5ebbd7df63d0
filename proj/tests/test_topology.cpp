#include <doctest.h>

#include <random>

#include "caret/errors.hpp"
#include "caret/topology.hpp"
#include "support.hpp"

using namespace caret;

namespace {

double pair_distance(const std::vector<BaseStation>& stations, const std::string& a,
                     const std::string& b) {
  const BaseStation* sa = nullptr;
  const BaseStation* sb = nullptr;
  for (const auto& s : stations) {
    if (s.id == a) sa = &s;
    if (s.id == b) sb = &s;
  }
  return haversine_distance(sa->location, sb->location);
}

}  // namespace

TEST_CASE("radius graph keeps exactly the pairs within range") {
  const auto stations = test::collinear_stations();
  const double d_ab = pair_distance(stations, "A", "B");  // ~1000 m
  const double d_bc = pair_distance(stations, "B", "C");  // ~1500 m

  SUBCASE("radius between the two gaps keeps only A-B") {
    const auto g = build_radius_graph(stations, 1200.0);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].a == "A");
    CHECK(g.edges[0].b == "B");
    CHECK(g.edges[0].length_m == d_ab);
  }
  SUBCASE("radius covering both gaps keeps A-B and B-C") {
    const auto g = build_radius_graph(stations, 1600.0);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0].a == "A");
    CHECK(g.edges[0].b == "B");
    CHECK(g.edges[1].a == "B");
    CHECK(g.edges[1].b == "C");
  }
  SUBCASE("the boundary is inclusive") {
    const auto g = build_radius_graph(stations, d_bc);
    CHECK(g.edges.size() == 2);
  }
  SUBCASE("radius below every distance yields no edges") {
    const auto g = build_radius_graph(stations, 10.0);
    CHECK(g.edges.empty());
    CHECK(g.nodes.size() == 3);
  }
}

TEST_CASE("radius graph edge sets are monotone in the radius") {
  std::mt19937_64 rng(11);
  const auto stations = test::random_stations(rng, 20);
  const auto small = build_radius_graph(stations, 700.0);
  const auto large = build_radius_graph(stations, 1500.0);
  for (const auto& e : small.edges) {
    const bool found = std::any_of(large.edges.begin(), large.edges.end(), [&](const GraphEdge& f) {
      return f.a == e.a && f.b == e.b;
    });
    CHECK(found);
  }
  CHECK(connectivity(small, stations[0].id) <= connectivity(large, stations[0].id));
}

TEST_CASE("MST of a single station has no edges") {
  const std::vector<BaseStation> one{{"solo", GeoPoint(1.0, 2.0), true}};
  const auto tree = minimum_spanning_tree(one);
  CHECK(tree.nodes.size() == 1);
  CHECK(tree.edges.empty());
}

TEST_CASE("MST of the collinear triple picks the two short edges") {
  const auto stations = test::collinear_stations();
  const auto tree = minimum_spanning_tree(stations);
  REQUIRE(tree.edges.size() == 2);
  CHECK(tree.edges[0].a == "A");
  CHECK(tree.edges[0].b == "B");
  CHECK(tree.edges[1].a == "B");
  CHECK(tree.edges[1].b == "C");
  const double total = tree.edges[0].length_m + tree.edges[1].length_m;
  CHECK(total == doctest::Approx(2500.0).epsilon(1e-6));
}

TEST_CASE("MST total length matches exhaustive enumeration") {
  std::mt19937_64 rng(12);
  for (int round = 0; round < 12; ++round) {
    const std::size_t n = 3 + rng() % 5;  // 3..7
    const auto stations = test::random_stations(rng, n);
    const auto tree = minimum_spanning_tree(stations);
    REQUIRE(tree.edges.size() == n - 1);
    double total = 0.0;
    for (const auto& e : tree.edges) total += e.length_m;
    const double oracle = test::min_spanning_total_oracle(stations);
    CHECK(total <= oracle + 1e-9);
    CHECK(total == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("connectivity counts the anchor component") {
  const auto stations = test::collinear_stations();
  SUBCASE("partial component") {
    const auto g = build_radius_graph(stations, 1200.0);
    CHECK(connectivity(g, "A") == 2.0 / 3.0);
    CHECK(connectivity(g, "C") == 1.0 / 3.0);
  }
  SUBCASE("edgeless graph") {
    const auto g = build_radius_graph(stations, 1.0);
    CHECK(connectivity(g, "B") == 1.0 / 3.0);
  }
  SUBCASE("complete graph") {
    const auto g = build_radius_graph(stations, 1e6);
    CHECK(connectivity(g, "A") == 1.0);
  }
  SUBCASE("unknown anchor") {
    const auto g = build_radius_graph(stations, 1200.0);
    CHECK_THROWS_AS(connectivity(g, "missing"), ConfigError);
  }
}

TEST_CASE("min radius for full connectivity equals the largest MST edge") {
  const auto stations = test::collinear_stations();
  const auto tree = minimum_spanning_tree(stations);
  double max_edge = 0.0;
  for (const auto& e : tree.edges) max_edge = std::max(max_edge, e.length_m);
  CHECK(min_radius_for_connectivity(stations, "A", 1.0) == max_edge);
  CHECK(min_radius_for_connectivity(stations, "A", 2.0 / 3.0) ==
        pair_distance(stations, "A", "B"));
}

TEST_CASE("min radius is zero for a single station") {
  const std::vector<BaseStation> one{{"solo", GeoPoint(1.0, 2.0), true}};
  CHECK(min_radius_for_connectivity(one, "solo", 1.0) == 0.0);
}

TEST_CASE("min radius matches the brute-force sweep") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 2 + rng() % 11;  // 2..12
    const auto stations = test::random_stations(rng, n);
    const std::string anchor = stations[rng() % n].id;
    for (const double target : {0.3, 0.5, 0.85, 1.0}) {
      CHECK(min_radius_for_connectivity(stations, anchor, target) ==
            test::min_radius_oracle(stations, anchor, target));
    }
  }
}

TEST_CASE("union-find connectivity agrees with BFS on random instances") {
  std::mt19937_64 rng(14);
  for (int round = 0; round < 20; ++round) {
    const std::size_t n = 2 + rng() % 29;  // 2..30
    const auto stations = test::random_stations(rng, n);
    const std::string anchor = stations[rng() % n].id;

    // Union-find route: join every pair within the radius.
    for (int r = 0; r < 5; ++r) {
      const double radius = 100.0 + static_cast<double>(rng() % 3000);
      UnionFind uf(n);
      std::vector<const BaseStation*> sorted;
      for (const auto& s : stations) sorted.push_back(&s);
      std::sort(sorted.begin(), sorted.end(),
                [](const BaseStation* a, const BaseStation* b) { return a->id < b->id; });
      std::size_t anchor_index = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sorted[i]->id == anchor) anchor_index = i;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (haversine_distance(sorted[i]->location, sorted[j]->location) <= radius) {
            uf.unite(i, j);
          }
        }
      }
      const double via_uf =
          static_cast<double>(uf.component_size(anchor_index)) / static_cast<double>(n);
      CHECK(via_uf == connectivity(build_radius_graph(stations, radius), anchor));
    }
  }
}

TEST_CASE("per-station connect radius on the collinear triple") {
  const auto stations = test::collinear_stations();
  const auto radii = per_station_connect_radius(stations, "A");
  REQUIRE(radii.size() == 3);
  CHECK(radii.at("A") == 0.0);
  CHECK(radii.at("B") == pair_distance(stations, "A", "B"));
  CHECK(radii.at("C") == pair_distance(stations, "B", "C"));
}

TEST_CASE("two stations: the other station's connect radius is their distance") {
  const std::vector<BaseStation> pair{
      {"p", GeoPoint(0.0, 0.0), true},
      {"q", GeoPoint(0.0, 0.02), true},
  };
  const auto radii = per_station_connect_radius(pair, "p");
  CHECK(radii.at("p") == 0.0);
  CHECK(radii.at("q") == pair_distance(pair, "p", "q"));
}

TEST_CASE("per-station connect radius matches the all-paths minimax oracle") {
  std::mt19937_64 rng(15);
  for (int round = 0; round < 10; ++round) {
    const std::size_t n = 2 + rng() % 7;  // 2..8
    const auto stations = test::random_stations(rng, n);
    const std::string anchor = stations[rng() % n].id;
    const auto radii = per_station_connect_radius(stations, anchor);
    const auto oracle = test::minimax_oracle(stations, anchor);
    REQUIRE(radii.size() == oracle.size());
    for (const auto& [station, radius] : radii) {
      CHECK(radius == oracle.at(station));
    }
  }
}

TEST_CASE("stations join the anchor component exactly at their connect radius") {
  std::mt19937_64 rng(16);
  const auto stations = test::random_stations(rng, 10);
  const std::string anchor = stations[0].id;
  const auto radii = per_station_connect_radius(stations, anchor);
  for (const auto& [station, radius] : radii) {
    if (radius == 0.0) continue;
    const auto at = build_radius_graph(stations, radius);
    CHECK(test::reaches(at, anchor, station));
    const auto below = build_radius_graph(stations, radius * (1.0 - 1e-9));
    CHECK_FALSE(test::reaches(below, anchor, station));
  }
}

TEST_CASE("connectivity curve is non-decreasing and ends at 1") {
  std::mt19937_64 rng(17);
  const auto stations = test::random_stations(rng, 15);
  const auto curve = connectivity_curve(stations, stations[3].id);
  REQUIRE(!curve.breakpoints.empty());
  CHECK(curve.breakpoints.front().first == 0.0);
  for (std::size_t i = 1; i < curve.breakpoints.size(); ++i) {
    CHECK(curve.breakpoints[i].first >= curve.breakpoints[i - 1].first);
    CHECK(curve.breakpoints[i].second > curve.breakpoints[i - 1].second);
  }
  CHECK(curve.breakpoints.back().second == 1.0);
}

TEST_CASE("explicit graphs validate their endpoints") {
  const auto stations = test::collinear_stations();
  using P = std::pair<std::string, std::string>;
  const std::vector<P> good{{"A", "B"}, {"B", "C"}};
  const auto g = build_explicit_graph(stations, good);
  CHECK(g.edges.size() == 2);

  CHECK_THROWS_AS(build_explicit_graph(stations, std::vector<P>{{"A", "Z"}}), ConfigError);
  CHECK_THROWS_AS(build_explicit_graph(stations, std::vector<P>{{"A", "A"}}), ConfigError);
  CHECK_THROWS_AS(build_explicit_graph(stations, std::vector<P>{{"A", "B"}, {"B", "A"}}),
                  ConfigError);
}
