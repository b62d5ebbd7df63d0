#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "caret/topology.hpp"

namespace caret {

/// Distance value marking stations outside the source's component.
inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();

/// Shortest-path tree rooted at one station. `distance_m` covers every graph
/// node (kUnreachable outside the component); `predecessor` omits the source
/// and unreachable nodes.
struct ShortestPathTree {
  std::string source;
  std::map<std::string, double> distance_m;
  std::map<std::string, std::string> predecessor;
};

/// One shortest-path tree per server station.
using RoutingTable = std::map<std::string, ShortestPathTree>;

/// Station sequence from server to client; hop_count is edges traversed.
struct Path {
  std::vector<std::string> stations;

  std::size_t hop_count() const { return stations.empty() ? 0 : stations.size() - 1; }
};

/// Dijkstra with link lengths as weights. When two tentative paths tie in
/// total length the predecessor with the smaller station id wins, making the
/// tree unique.
ShortestPathTree shortest_paths_from(const Graph& g, const std::string& source);

RoutingTable build_routing_table(const Graph& g, std::span<const std::string> servers);

/// Reconstructs the server-to-client path by walking predecessors back from
/// the client. Returns nullopt when the client is outside the server's
/// component.
std::optional<Path> route(const RoutingTable& table, const std::string& server,
                          const std::string& client);

}  // namespace caret
