#pragma once

#include <filesystem>
#include <map>
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "caret/flows.hpp"
#include "caret/geo.hpp"
#include "caret/routing.hpp"
#include "caret/topology.hpp"

namespace caret {

// GeoJSON feature collections (RFC 7946, coordinates as [lon, lat]).
// Feature order and key order are fixed, so output bytes are reproducible.
// Numeric properties keep full precision; rounded presentation belongs to
// the CSV artifacts.

/// One point feature per tile (tagged with its serving station) followed by
/// one point feature per station.
nlohmann::json export_coverage(const CityMap& map);

/// One line feature per edge with its length in meters. Every graph node
/// must appear in `stations`.
nlohmann::json export_links(const Graph& graph, std::span<const BaseStation> stations);

/// One point feature per station with its minimum connect radius.
nlohmann::json export_connect_radius(const std::map<std::string, double>& radii,
                                     std::span<const BaseStation> stations);

// Text artifacts. Integers print verbatim, lengths with two decimals,
// fractions with 12 significant digits; rows are fully ordered.

std::string render_metrics_csv(std::span<const SlotMetrics> per_slot);
std::string render_link_loads_csv(std::span<const SlotMetrics> per_slot);
std::string render_aggregate_json(const AggregateMetrics& aggregate);
std::string render_routing_table_csv(const RoutingTable& table);

/// Writes metrics.csv, link_loads.csv, and aggregate.json into `out_dir`.
void write_metrics(const AggregateMetrics& aggregate, std::span<const SlotMetrics> per_slot,
                   const std::filesystem::path& out_dir);

void write_geojson(const nlohmann::json& collection, const std::filesystem::path& path);

}  // namespace caret
