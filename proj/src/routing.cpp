#include "caret/routing.hpp"

#include <algorithm>
#include <queue>
#include <set>

#include "caret/errors.hpp"

namespace caret {

ShortestPathTree shortest_paths_from(const Graph& g, const std::string& source) {
  if (!g.has_node(source)) throw ConfigError("unknown source station '" + source + "'");

  const std::size_t n = g.nodes.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(g.nodes[i], i);

  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& e : g.edges) {
    const std::size_t a = index.at(e.a);
    const std::size_t b = index.at(e.b);
    adj[a].emplace_back(b, e.length_m);
    adj[b].emplace_back(a, e.length_m);
  }
  for (auto& neighbors : adj) std::sort(neighbors.begin(), neighbors.end());

  std::vector<double> dist(n, kUnreachable);
  std::vector<std::size_t> pred(n, n);  // n = none
  const std::size_t start = index.at(source);
  dist[start] = 0.0;

  // Node indices follow the sorted node ids, so index order is id order and
  // the (distance, index) queue pops ties deterministically.
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  queue.emplace(0.0, start);
  std::vector<bool> settled(n, false);

  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (settled[u]) continue;
    settled[u] = true;
    for (const auto& [v, length] : adj[u]) {
      if (settled[v]) continue;
      const double candidate = dist[u] + length;
      if (candidate < dist[v]) {
        dist[v] = candidate;
        pred[v] = u;
        queue.emplace(candidate, v);
      } else if (candidate == dist[v] && u < pred[v]) {
        pred[v] = u;
      }
    }
  }

  ShortestPathTree tree;
  tree.source = source;
  for (std::size_t i = 0; i < n; ++i) {
    tree.distance_m.emplace(g.nodes[i], dist[i]);
    if (pred[i] != n) tree.predecessor.emplace(g.nodes[i], g.nodes[pred[i]]);
  }
  return tree;
}

RoutingTable build_routing_table(const Graph& g, std::span<const std::string> servers) {
  std::set<std::string> distinct(servers.begin(), servers.end());
  RoutingTable table;
  for (const auto& server : distinct) {
    table.emplace(server, shortest_paths_from(g, server));
  }
  return table;
}

std::optional<Path> route(const RoutingTable& table, const std::string& server,
                          const std::string& client) {
  const auto it = table.find(server);
  if (it == table.end()) throw ConfigError("no routing tree for server '" + server + "'");
  const ShortestPathTree& tree = it->second;

  const auto dist = tree.distance_m.find(client);
  if (dist == tree.distance_m.end()) {
    throw ConfigError("unknown client station '" + client + "'");
  }
  if (dist->second == kUnreachable) return std::nullopt;

  Path path;
  std::string node = client;
  while (node != server) {
    path.stations.push_back(node);
    node = tree.predecessor.at(node);
  }
  path.stations.push_back(server);
  std::reverse(path.stations.begin(), path.stations.end());
  return path;
}

}  // namespace caret
