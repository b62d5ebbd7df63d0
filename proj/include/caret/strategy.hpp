#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace caret {

/// Which members of a universe (apps or stations) stay available.
/// Grammar: `ALL` | `LIST id[,id...]` | `HIGH TRAFFIC <p>` with integer
/// p in (0,100].
struct SelectionStrategy {
  enum class Kind { kAll, kExplicit, kHighTraffic };

  Kind kind = Kind::kAll;
  std::vector<std::string> ids;  // kExplicit
  int percent = 0;               // kHighTraffic

  double fraction() const { return percent / 100.0; }
};

/// Where each app service is hosted.
/// Grammar: `CENTRAL` | `DECENTRAL` | `MAP app=bs[,...]`.
struct PlacementStrategy {
  enum class Kind { kCentral, kDecentral, kExplicit };

  Kind kind = Kind::kCentral;
  std::map<std::string, std::string> assignments;  // kExplicit
};

/// How inter-station links are established.
/// Grammar: `RADIUS <meters>` | `MST` | `LINKS a-b[,...]`.
struct LinkStrategy {
  enum class Kind { kRadius, kMst, kExplicit };

  Kind kind = Kind::kMst;
  double radius_m = 0.0;                                   // kRadius
  std::vector<std::pair<std::string, std::string>> links;  // kExplicit
};

/// Grammar: `MIN DISTANCE`.
struct RoutingStrategy {
  enum class Kind { kMinDistance };

  Kind kind = Kind::kMinDistance;
};

/// The six crisis decisions as written in a scenario file.
struct ScenarioSpec {
  std::string apps;
  std::string base_stations;
  std::string edge_servers;
  std::string app_servers;
  std::string links;
  std::string routing;
};

/// The six decisions, parsed.
struct ScenarioConfig {
  SelectionStrategy apps;
  SelectionStrategy base_stations;
  SelectionStrategy edge_servers;
  PlacementStrategy app_servers;
  LinkStrategy links;
  RoutingStrategy routing;
};

SelectionStrategy parse_selection(const std::string& text);
PlacementStrategy parse_placement(const std::string& text);
LinkStrategy parse_link(const std::string& text);
RoutingStrategy parse_routing(const std::string& text);

/// Scenario file: JSON object with exactly the keys `apps`, `base_stations`,
/// `edge_servers`, `app_servers`, `links`, `routing`, each a strategy string.
ScenarioSpec load_scenario_file(const std::filesystem::path& path);
ScenarioConfig parse_scenario(const ScenarioSpec& spec);

/// Applies a selection to a universe of ids. `totals` supplies the ranking
/// for HIGH TRAFFIC (absent ids count as 0); ties go to the smaller id. The
/// HIGH TRAFFIC count is ceil(p/100 * |universe|), computed in integers.
std::vector<std::string> resolve_selection(const SelectionStrategy& strategy,
                                           const std::map<std::string, std::uint64_t>& totals,
                                           const std::vector<std::string>& universe);

/// Maps every app to its hosting station. CENTRAL picks the edge-capable
/// station with the highest all-app volume for all apps; DECENTRAL picks the
/// per-app maximum. Ties go to the smaller station id. Explicit mappings must
/// cover the apps exactly and target edge-capable stations.
std::map<std::string, std::string> place_servers(
    const PlacementStrategy& placement,
    const std::map<std::pair<std::string, std::string>, std::uint64_t>& per_station_app_totals,
    const std::set<std::string>& edge_set, const std::set<std::string>& apps);

}  // namespace caret
