#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caret/geo.hpp"

namespace caret {

/// Undirected inter-station link. Endpoints are stored with a < b.
struct GraphEdge {
  std::string a;
  std::string b;
  double length_m = 0.0;
};

/// Simple undirected graph over station ids. Nodes are sorted and unique,
/// edges are normalized (a < b), sorted by (a, b), and pairwise distinct.
struct Graph {
  std::vector<std::string> nodes;
  std::vector<GraphEdge> edges;

  bool has_node(const std::string& id) const;
};

/// Anchored connectivity as a function of link radius: ascending
/// (radius_m, fraction) breakpoints, starting at radius 0.
struct ConnectivityCurve {
  std::string anchor;
  std::vector<std::pair<double, double>> breakpoints;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n);

  std::size_t find(std::size_t i);
  /// Joins two components; returns false if already joined.
  bool unite(std::size_t a, std::size_t b);
  std::size_t component_size(std::size_t i);

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

/// Adjacency view: node -> (neighbor, length), neighbors sorted by id.
std::map<std::string, std::vector<std::pair<std::string, double>>> adjacency(const Graph& g);

/// Links every pair of stations within `radius_m` of each other (inclusive).
Graph build_radius_graph(std::span<const BaseStation> stations, double radius_m);

/// Graph from an explicit link list. Every endpoint must name a distinct
/// station from `stations`; duplicate pairs are rejected.
Graph build_explicit_graph(std::span<const BaseStation> stations,
                           std::span<const std::pair<std::string, std::string>> links);

/// Kruskal over the complete distance graph. Edge ties are broken by the
/// (length, endpoint pair) order, so the tree is deterministic.
Graph minimum_spanning_tree(std::span<const BaseStation> stations);

/// Fraction of nodes in the connected component containing `anchor` (BFS).
double connectivity(const Graph& g, const std::string& anchor);

/// Smallest pairwise distance r such that the radius-r graph reaches the
/// target anchored connectivity. Returns 0 when the target is met with no
/// links at all (single station, or target <= 1/n).
double min_radius_for_connectivity(std::span<const BaseStation> stations,
                                   const std::string& anchor, double target);

/// Anchored connectivity breakpoints over all pairwise distances.
ConnectivityCurve connectivity_curve(std::span<const BaseStation> stations,
                                     const std::string& anchor);

/// Per-station minimum global link radius to join the anchor's component:
/// the bottleneck (maximum) edge on the MST path from the anchor. The anchor
/// itself maps to 0.
std::map<std::string, double> per_station_connect_radius(std::span<const BaseStation> stations,
                                                         const std::string& anchor);

}  // namespace caret
