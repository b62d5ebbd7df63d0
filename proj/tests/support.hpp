#pragma once

// Test-side fixtures and independent oracles. The oracles recompute expected
// values from first principles (exhaustive enumeration, BFS, Floyd-Warshall)
// so they stay independent of the implementation paths they check.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "caret/flows.hpp"
#include "caret/geo.hpp"
#include "caret/routing.hpp"
#include "caret/topology.hpp"
#include "caret/traffic.hpp"

namespace caret::test {

inline std::filesystem::path unique_temp_dir(const std::string& label) {
  static std::atomic<unsigned> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  const auto dir = base / ("caret_" + label + "_" + std::to_string(::getpid()) + "_" +
                           std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir;
}

class TempDir {
 public:
  explicit TempDir(const std::string& label) : path_(unique_temp_dir(label)) {}
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Longitude offset covering `meters` along the equator.
inline double equator_lon(double meters) {
  return meters / (kEarthRadiusM * 3.14159265358979323846 / 180.0);
}

/// Three stations on the equator: A at 0, B at ~1000 m, C at ~2500 m.
inline std::vector<BaseStation> collinear_stations() {
  return {
      {"A", GeoPoint(0.0, 0.0), true},
      {"B", GeoPoint(0.0, equator_lon(1000.0)), true},
      {"C", GeoPoint(0.0, equator_lon(2500.0)), true},
  };
}

inline std::vector<BaseStation> random_stations(std::mt19937_64& rng, std::size_t n) {
  std::vector<BaseStation> stations;
  stations.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "s%03zu", i);
    const double lat = 40.0 + static_cast<double>(rng() % 200001) * 1e-6;  // ~22 km box
    const double lon = 7.0 + static_cast<double>(rng() % 200001) * 1e-6;
    stations.push_back({id, GeoPoint(lat, lon), true});
  }
  return stations;
}

/// Random connected-or-not graph with integer edge lengths, so path sums are
/// exact in double arithmetic.
inline Graph random_graph(std::mt19937_64& rng, std::size_t n, unsigned edge_percent,
                          std::uint64_t max_length = 1000) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "n%03zu", i);
    g.nodes.emplace_back(id);
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng() % 100 < edge_percent) {
        const double length = static_cast<double>(1 + rng() % max_length);
        g.edges.push_back({g.nodes[i], g.nodes[j], length});
      }
    }
  }
  return g;
}

// ---- Oracles ----

inline std::string nearest_station_oracle(const Tile& tile,
                                          const std::vector<BaseStation>& stations) {
  std::string best;
  double best_d = 0.0;
  bool first = true;
  for (const auto& s : stations) {
    const double d = haversine_distance(tile.centroid, s.location);
    if (first || d < best_d || (d == best_d && s.id < best)) {
      best = s.id;
      best_d = d;
      first = false;
    }
  }
  return best;
}

/// Minimal total length over every spanning tree, by enumerating all
/// (n-1)-edge subsets of the complete graph. Feasible for n <= 8.
inline double min_spanning_total_oracle(const std::vector<BaseStation>& stations) {
  const std::size_t n = stations.size();
  struct E {
    std::size_t a, b;
    double w;
  };
  std::vector<E> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back({i, j, haversine_distance(stations[i].location, stations[j].location)});
    }
  }
  const std::size_t m = edges.size();
  double best = -1.0;
  std::vector<std::size_t> pick(n - 1);
  // Enumerate combinations of n-1 edges.
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + static_cast<long>(n - 1), true);
  std::sort(mask.begin(), mask.end());
  do {
    double total = 0.0;
    std::vector<std::size_t> parent(n);
    for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    auto root = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::size_t joins = 0;
    for (std::size_t k = 0; k < m; ++k) {
      if (!mask[k]) continue;
      total += edges[k].w;
      const auto ra = root(edges[k].a);
      const auto rb = root(edges[k].b);
      if (ra != rb) {
        parent[ra] = rb;
        ++joins;
      }
    }
    if (joins == n - 1 && (best < 0.0 || total < best)) best = total;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return best;
}

/// Minimax bottleneck from the anchor to every station over all simple paths
/// in the complete distance graph. DFS with a bound prune; the prune only
/// skips paths that cannot improve the exact minimum.
inline std::map<std::string, double> minimax_oracle(const std::vector<BaseStation>& stations,
                                                    const std::string& anchor) {
  const std::size_t n = stations.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  std::size_t start = n;
  std::vector<const BaseStation*> sorted;
  for (const auto& s : stations) sorted.push_back(&s);
  std::sort(sorted.begin(), sorted.end(),
            [](const BaseStation* a, const BaseStation* b) { return a->id < b->id; });
  for (std::size_t i = 0; i < n; ++i) {
    if (sorted[i]->id == anchor) start = i;
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = haversine_distance(sorted[i]->location, sorted[j]->location);
    }
  }
  std::vector<double> best(n, -1.0);
  best[start] = 0.0;
  std::vector<bool> used(n, false);
  used[start] = true;
  auto dfs = [&](auto&& self, std::size_t at, double path_max) -> void {
    for (std::size_t next = 0; next < n; ++next) {
      if (used[next]) continue;
      const double new_max = std::max(path_max, d[at][next]);
      if (best[next] < 0.0 || new_max < best[next]) best[next] = new_max;
      // A path's max never decreases when extended, so the subtree is only
      // worth exploring while some unreached target could still improve.
      bool useful = false;
      for (std::size_t t = 0; t < n && !useful; ++t) {
        if (!used[t] && t != next && (best[t] < 0.0 || new_max < best[t])) useful = true;
      }
      if (useful) {
        used[next] = true;
        self(self, next, new_max);
        used[next] = false;
      }
    }
  };
  dfs(dfs, start, 0.0);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < n; ++i) out[sorted[i]->id] = best[i];
  return out;
}

/// All-pairs shortest distances by Floyd-Warshall.
inline std::map<std::string, std::map<std::string, double>> floyd_warshall_oracle(const Graph& g) {
  const std::size_t n = g.nodes.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[g.nodes[i]] = i;
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, kUnreachable));
  for (std::size_t i = 0; i < n; ++i) dist[i][i] = 0.0;
  for (const auto& e : g.edges) {
    const auto a = index.at(e.a);
    const auto b = index.at(e.b);
    dist[a][b] = std::min(dist[a][b], e.length_m);
    dist[b][a] = std::min(dist[b][a], e.length_m);
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (dist[i][k] != kUnreachable && dist[k][j] != kUnreachable &&
            dist[i][k] + dist[k][j] < dist[i][j]) {
          dist[i][j] = dist[i][k] + dist[k][j];
        }
      }
    }
  }
  std::map<std::string, std::map<std::string, double>> out;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[g.nodes[i]][g.nodes[j]] = dist[i][j];
  }
  return out;
}

/// Connectivity fraction by an adjacency-matrix reachability walk,
/// independent of the library's BFS and union-find.
inline double connectivity_oracle(const Graph& g, const std::string& anchor) {
  const std::size_t n = g.nodes.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[g.nodes[i]] = i;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges) {
    adj[index.at(e.a)][index.at(e.b)] = true;
    adj[index.at(e.b)][index.at(e.a)] = true;
  }
  std::vector<bool> reach(n, false);
  reach[index.at(anchor)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (adj[i][j] && !reach[j]) {
          reach[j] = true;
          changed = true;
        }
      }
    }
  }
  std::size_t count = 0;
  for (bool r : reach) count += r ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(n);
}

/// Whether `to` sits in the connected component of `from` (matrix walk).
inline bool reaches(const Graph& g, const std::string& from, const std::string& to) {
  const std::size_t n = g.nodes.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[g.nodes[i]] = i;
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges) {
    adj[index.at(e.a)][index.at(e.b)] = true;
    adj[index.at(e.b)][index.at(e.a)] = true;
  }
  std::vector<bool> reach(n, false);
  reach[index.at(from)] = true;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      if (!reach[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (adj[i][j] && !reach[j]) {
          reach[j] = true;
          changed = true;
        }
      }
    }
  }
  return reach[index.at(to)];
}

/// Smallest pairwise distance whose radius graph reaches the target, found
/// by sweeping every candidate radius with the reachability oracle.
inline double min_radius_oracle(const std::vector<BaseStation>& stations,
                                const std::string& anchor, double target) {
  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i < stations.size(); ++i) {
    for (std::size_t j = i + 1; j < stations.size(); ++j) {
      candidates.push_back(haversine_distance(stations[i].location, stations[j].location));
    }
  }
  std::sort(candidates.begin(), candidates.end());
  for (const double r : candidates) {
    double fraction = 0.0;
    if (r == 0.0) {
      fraction = 1.0 / static_cast<double>(stations.size());
    } else {
      fraction = connectivity_oracle(build_radius_graph(stations, r), anchor);
    }
    if (fraction >= target) return r;
  }
  return candidates.back();
}

// ---- Shared fixtures ----

/// Stations A and B ~1000 m apart and linked; C ~100 km away and isolated.
/// App X is served at A; the slot holds A:X(ul 2), B:X(ul 4, dl 6),
/// C:X(ul 3).
struct MicroScenario {
  std::vector<BaseStation> stations;
  SlotTraffic slot;
  std::set<std::string> apps{"X"};
  std::set<std::string> station_ids{"A", "B", "C"};
  std::map<std::string, std::string> placement{{"X", "A"}};
  Graph graph;
  RoutingTable table;
};

inline MicroScenario make_micro_scenario() {
  MicroScenario micro;
  micro.stations = {
      {"A", GeoPoint(0.0, 0.0), true},
      {"B", GeoPoint(0.0, equator_lon(1000.0)), true},
      {"C", GeoPoint(0.0, 0.9), true},
  };
  micro.slot.slot = SlotId{20190531, 0};
  micro.slot.records["A"]["X"] = AppVolume{2, 0};
  micro.slot.records["B"]["X"] = AppVolume{4, 6};
  micro.slot.records["C"]["X"] = AppVolume{3, 0};
  micro.graph = build_radius_graph(micro.stations, 2000.0);
  std::vector<std::string> servers{"A"};
  micro.table = build_routing_table(micro.graph, servers);
  return micro;
}

}  // namespace caret::test
