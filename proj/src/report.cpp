#include "caret/report.hpp"

#include <algorithm>

#include "caret/errors.hpp"
#include "caret/text.hpp"

namespace caret {

namespace {

nlohmann::json point_geometry(const GeoPoint& p) {
  return {{"type", "Point"}, {"coordinates", {p.lon, p.lat}}};
}

nlohmann::json feature(nlohmann::json geometry, nlohmann::json properties) {
  return {{"type", "Feature"}, {"geometry", std::move(geometry)},
          {"properties", std::move(properties)}};
}

nlohmann::json collection(nlohmann::json features) {
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

std::map<std::string, const BaseStation*> station_index(std::span<const BaseStation> stations) {
  std::map<std::string, const BaseStation*> index;
  for (const auto& s : stations) index.emplace(s.id, &s);
  return index;
}

}  // namespace

nlohmann::json export_coverage(const CityMap& map) {
  auto features = nlohmann::json::array();
  for (const auto& tile : map.tiles) {
    features.push_back(feature(point_geometry(tile.centroid),
                               {{"tile_id", tile.id}, {"bs_id", map.assignment.at(tile.id)}}));
  }
  std::vector<const BaseStation*> stations;
  for (const auto& s : map.stations) stations.push_back(&s);
  std::sort(stations.begin(), stations.end(),
            [](const BaseStation* a, const BaseStation* b) { return a->id < b->id; });
  for (const auto* s : stations) {
    features.push_back(feature(point_geometry(s->location),
                               {{"bs_id", s->id}, {"edge_capable", s->edge_capable}}));
  }
  return collection(std::move(features));
}

nlohmann::json export_links(const Graph& graph, std::span<const BaseStation> stations) {
  const auto index = station_index(stations);
  for (const auto& node : graph.nodes) {
    if (!index.contains(node)) {
      throw ConfigError("no coordinates for station '" + node + "'");
    }
  }
  auto features = nlohmann::json::array();
  for (const auto& edge : graph.edges) {
    const GeoPoint& a = index.at(edge.a)->location;
    const GeoPoint& b = index.at(edge.b)->location;
    features.push_back(feature(
        {{"type", "LineString"}, {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}},
        {{"bs_a", edge.a}, {"bs_b", edge.b}, {"length_m", edge.length_m}}));
  }
  return collection(std::move(features));
}

nlohmann::json export_connect_radius(const std::map<std::string, double>& radii,
                                     std::span<const BaseStation> stations) {
  const auto index = station_index(stations);
  auto features = nlohmann::json::array();
  for (const auto& [station, radius] : radii) {
    const auto it = index.find(station);
    if (it == index.end()) throw ConfigError("no coordinates for station '" + station + "'");
    features.push_back(feature(point_geometry(it->second->location),
                               {{"bs_id", station}, {"min_connect_radius_m", radius}}));
  }
  return collection(std::move(features));
}

std::string render_metrics_csv(std::span<const SlotMetrics> per_slot) {
  std::string out = "slot,total,local,wireless,nonserviceable,filtered_out,network_load\n";
  for (const auto& m : per_slot) {
    out += m.slot.to_string();
    out += ',';
    out += std::to_string(m.total);
    out += ',';
    out += std::to_string(m.local);
    out += ',';
    out += std::to_string(m.wireless);
    out += ',';
    out += std::to_string(m.nonserviceable);
    out += ',';
    out += std::to_string(m.filtered_out);
    out += ',';
    out += std::to_string(m.network_load);
    out += '\n';
  }
  return out;
}

std::string render_link_loads_csv(std::span<const SlotMetrics> per_slot) {
  std::string out = "slot,bs_a,bs_b,bytes\n";
  for (const auto& m : per_slot) {
    for (const auto& [link, bytes] : m.link_loads) {
      out += m.slot.to_string();
      out += ',';
      out += link.first;
      out += ',';
      out += link.second;
      out += ',';
      out += std::to_string(bytes);
      out += '\n';
    }
  }
  return out;
}

std::string render_aggregate_json(const AggregateMetrics& aggregate) {
  std::string out = "{\n";
  out += "  \"slot_count\": " + std::to_string(aggregate.slot_count) + ",\n";
  out += "  \"total_bytes\": " + std::to_string(aggregate.total) + ",\n";
  out += "  \"local_bytes\": " + std::to_string(aggregate.local) + ",\n";
  out += "  \"wireless_bytes\": " + std::to_string(aggregate.wireless) + ",\n";
  out += "  \"nonserviceable_bytes\": " + std::to_string(aggregate.nonserviceable) + ",\n";
  out += "  \"filtered_out_bytes\": " + std::to_string(aggregate.filtered_out) + ",\n";
  out += "  \"network_load\": " + std::to_string(aggregate.network_load) + ",\n";
  out += "  \"local_fraction\": " + format_sig12(aggregate.local_fraction()) + ",\n";
  out += "  \"wireless_fraction\": " + format_sig12(aggregate.wireless_fraction()) + ",\n";
  out += "  \"nonserviceable_fraction\": " + format_sig12(aggregate.nonserviceable_fraction()) +
         "\n";
  out += "}\n";
  return out;
}

std::string render_routing_table_csv(const RoutingTable& table) {
  std::string out = "server,bs_id,distance_m,predecessor\n";
  for (const auto& [server, tree] : table) {
    for (const auto& [station, distance] : tree.distance_m) {
      out += server;
      out += ',';
      out += station;
      out += ',';
      if (distance != kUnreachable) out += format_fixed2(distance);
      out += ',';
      const auto pred = tree.predecessor.find(station);
      if (pred != tree.predecessor.end()) out += pred->second;
      out += '\n';
    }
  }
  return out;
}

void write_metrics(const AggregateMetrics& aggregate, std::span<const SlotMetrics> per_slot,
                   const std::filesystem::path& out_dir) {
  write_text_file(out_dir / "metrics.csv", render_metrics_csv(per_slot));
  write_text_file(out_dir / "link_loads.csv", render_link_loads_csv(per_slot));
  write_text_file(out_dir / "aggregate.json", render_aggregate_json(aggregate));
}

void write_geojson(const nlohmann::json& collection, const std::filesystem::path& path) {
  write_text_file(path, collection.dump(2) + "\n");
}

}  // namespace caret
