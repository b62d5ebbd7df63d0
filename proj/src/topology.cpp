#include "caret/topology.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <tuple>

#include "caret/errors.hpp"
#include "caret/text.hpp"

namespace caret {

namespace {

struct IndexedStations {
  std::vector<const BaseStation*> by_id;  // sorted by id
  std::map<std::string, std::size_t> index;
};

IndexedStations index_stations(std::span<const BaseStation> stations) {
  IndexedStations out;
  out.by_id.reserve(stations.size());
  for (const auto& s : stations) out.by_id.push_back(&s);
  std::sort(out.by_id.begin(), out.by_id.end(),
            [](const BaseStation* a, const BaseStation* b) { return a->id < b->id; });
  for (std::size_t i = 0; i < out.by_id.size(); ++i) {
    if (!out.index.emplace(out.by_id[i]->id, i).second) {
      throw ConfigError("duplicate station id '" + out.by_id[i]->id + "'");
    }
  }
  return out;
}

struct IndexEdge {
  std::size_t a;
  std::size_t b;
  double length_m;
};

// All pairs (i < j in id order), sorted by (length, a, b).
std::vector<IndexEdge> pairwise_edges(const IndexedStations& idx) {
  std::vector<IndexEdge> edges;
  const std::size_t n = idx.by_id.size();
  edges.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.push_back(
          {i, j, haversine_distance(idx.by_id[i]->location, idx.by_id[j]->location)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const IndexEdge& x, const IndexEdge& y) {
    return std::tie(x.length_m, x.a, x.b) < std::tie(y.length_m, y.a, y.b);
  });
  return edges;
}

Graph make_graph(const IndexedStations& idx, std::vector<IndexEdge> edges) {
  Graph g;
  g.nodes.reserve(idx.by_id.size());
  for (const auto* s : idx.by_id) g.nodes.push_back(s->id);
  std::sort(edges.begin(), edges.end(), [](const IndexEdge& x, const IndexEdge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  g.edges.reserve(edges.size());
  for (const auto& e : edges) {
    g.edges.push_back({idx.by_id[e.a]->id, idx.by_id[e.b]->id, e.length_m});
  }
  return g;
}

std::size_t require_node(const Graph& g, const std::string& anchor) {
  const auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), anchor);
  if (it == g.nodes.end() || *it != anchor) {
    throw ConfigError("unknown anchor station '" + anchor + "'");
  }
  return static_cast<std::size_t>(it - g.nodes.begin());
}

}  // namespace

bool Graph::has_node(const std::string& id) const {
  return std::binary_search(nodes.begin(), nodes.end(), id);
}

UnionFind::UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
  for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t UnionFind::find(std::size_t i) {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool UnionFind::unite(std::size_t a, std::size_t b) {
  std::size_t ra = find(a);
  std::size_t rb = find(b);
  if (ra == rb) return false;
  if (size_[ra] < size_[rb]) std::swap(ra, rb);
  parent_[rb] = ra;
  size_[ra] += size_[rb];
  return true;
}

std::size_t UnionFind::component_size(std::size_t i) { return size_[find(i)]; }

std::map<std::string, std::vector<std::pair<std::string, double>>> adjacency(const Graph& g) {
  std::map<std::string, std::vector<std::pair<std::string, double>>> adj;
  for (const auto& node : g.nodes) adj[node];
  for (const auto& e : g.edges) {
    adj[e.a].emplace_back(e.b, e.length_m);
    adj[e.b].emplace_back(e.a, e.length_m);
  }
  for (auto& [node, neighbors] : adj) std::sort(neighbors.begin(), neighbors.end());
  return adj;
}

Graph build_radius_graph(std::span<const BaseStation> stations, double radius_m) {
  if (!(radius_m > 0.0)) throw ConfigError("link radius must be positive");
  const auto idx = index_stations(stations);
  std::vector<IndexEdge> kept;
  for (auto& e : pairwise_edges(idx)) {
    if (e.length_m <= radius_m) kept.push_back(e);
  }
  return make_graph(idx, std::move(kept));
}

Graph build_explicit_graph(std::span<const BaseStation> stations,
                           std::span<const std::pair<std::string, std::string>> links) {
  const auto idx = index_stations(stations);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::vector<IndexEdge> edges;
  for (const auto& [a, b] : links) {
    const auto ia = idx.index.find(a);
    const auto ib = idx.index.find(b);
    if (ia == idx.index.end()) throw ConfigError("link references unknown station '" + a + "'");
    if (ib == idx.index.end()) throw ConfigError("link references unknown station '" + b + "'");
    if (ia->second == ib->second) throw ConfigError("link endpoints must differ: '" + a + "'");
    auto pair = std::minmax(ia->second, ib->second);
    if (!seen.insert(pair).second) {
      throw ConfigError("duplicate link " + a + "-" + b);
    }
    edges.push_back({pair.first, pair.second,
                     haversine_distance(idx.by_id[pair.first]->location,
                                        idx.by_id[pair.second]->location)});
  }
  return make_graph(idx, std::move(edges));
}

Graph minimum_spanning_tree(std::span<const BaseStation> stations) {
  if (stations.empty()) throw ConfigError("spanning tree requires at least one station");
  const auto idx = index_stations(stations);
  const std::size_t n = idx.by_id.size();
  UnionFind uf(n);
  std::vector<IndexEdge> tree;
  tree.reserve(n > 0 ? n - 1 : 0);
  for (const auto& e : pairwise_edges(idx)) {
    if (uf.unite(e.a, e.b)) {
      tree.push_back(e);
      if (tree.size() + 1 == n) break;
    }
  }
  return make_graph(idx, std::move(tree));
}

double connectivity(const Graph& g, const std::string& anchor) {
  const std::size_t start = require_node(g, anchor);
  const auto adj = adjacency(g);
  std::set<std::string> visited;
  std::deque<std::string> queue{g.nodes[start]};
  visited.insert(g.nodes[start]);
  while (!queue.empty()) {
    const std::string node = std::move(queue.front());
    queue.pop_front();
    for (const auto& [neighbor, length] : adj.at(node)) {
      if (visited.insert(neighbor).second) queue.push_back(neighbor);
    }
  }
  return static_cast<double>(visited.size()) / static_cast<double>(g.nodes.size());
}

namespace {

// Shared union-find sweep over ascending pairwise distances. Calls `visit`
// with (radius, anchored fraction) after each distinct distance value that
// changes the fraction; returns as soon as `visit` returns true.
void sweep_radii(std::span<const BaseStation> stations, const std::string& anchor,
                 const std::function<bool(double, double)>& visit);

void sweep_radii_impl(const IndexedStations& idx, std::size_t anchor_index,
                      const std::function<bool(double, double)>& visit) {
  const std::size_t n = idx.by_id.size();
  const double total = static_cast<double>(n);
  UnionFind uf(n);
  double fraction = 1.0 / total;
  if (visit(0.0, fraction)) return;

  const auto edges = pairwise_edges(idx);
  std::size_t i = 0;
  while (i < edges.size()) {
    const double length = edges[i].length_m;
    // Merge the whole group of equal-length edges: at radius `length` all
    // of them are present.
    while (i < edges.size() && edges[i].length_m == length) {
      uf.unite(edges[i].a, edges[i].b);
      ++i;
    }
    const double updated = static_cast<double>(uf.component_size(anchor_index)) / total;
    if (updated != fraction) {
      fraction = updated;
      if (visit(length, fraction)) return;
    }
  }
}

void sweep_radii(std::span<const BaseStation> stations, const std::string& anchor,
                 const std::function<bool(double, double)>& visit) {
  const auto idx = index_stations(stations);
  const auto it = idx.index.find(anchor);
  if (it == idx.index.end()) throw ConfigError("unknown anchor station '" + anchor + "'");
  sweep_radii_impl(idx, it->second, visit);
}

}  // namespace

double min_radius_for_connectivity(std::span<const BaseStation> stations,
                                   const std::string& anchor, double target) {
  if (!(target > 0.0) || target > 1.0) {
    throw ConfigError("connectivity target must be in (0, 1], got " + format_double(target));
  }
  double result = 0.0;
  bool found = false;
  sweep_radii(stations, anchor, [&](double radius, double fraction) {
    if (fraction >= target) {
      result = radius;
      found = true;
      return true;
    }
    return false;
  });
  if (!found) {
    // Unreachable: the sweep ends with every station joined, fraction 1.
    throw Error("internal: connectivity sweep never reached target");
  }
  return result;
}

ConnectivityCurve connectivity_curve(std::span<const BaseStation> stations,
                                     const std::string& anchor) {
  ConnectivityCurve curve;
  curve.anchor = anchor;
  sweep_radii(stations, anchor, [&](double radius, double fraction) {
    curve.breakpoints.emplace_back(radius, fraction);
    return false;
  });
  return curve;
}

std::map<std::string, double> per_station_connect_radius(std::span<const BaseStation> stations,
                                                         const std::string& anchor) {
  const Graph tree = minimum_spanning_tree(stations);
  require_node(tree, anchor);
  const auto adj = adjacency(tree);

  std::map<std::string, double> radius;
  radius[anchor] = 0.0;
  std::deque<std::string> queue{anchor};
  while (!queue.empty()) {
    const std::string node = std::move(queue.front());
    queue.pop_front();
    const double here = radius.at(node);
    for (const auto& [neighbor, length] : adj.at(node)) {
      if (radius.contains(neighbor)) continue;
      radius[neighbor] = std::max(here, length);
      queue.push_back(neighbor);
    }
  }
  return radius;
}

}  // namespace caret
