#include "caret/flows.hpp"

#include <algorithm>

#include "caret/errors.hpp"

namespace caret {

namespace {

double fraction_of(std::uint64_t part, std::uint64_t total) {
  if (total == 0) return 0.0;
  return static_cast<double>(part) / static_cast<double>(total);
}

}  // namespace

double AggregateMetrics::local_fraction() const { return fraction_of(local, total); }
double AggregateMetrics::wireless_fraction() const { return fraction_of(wireless, total); }
double AggregateMetrics::nonserviceable_fraction() const {
  return fraction_of(nonserviceable, total);
}

FlowGeneration generate_flows(const SlotTraffic& slot, const std::set<std::string>& apps,
                              const std::set<std::string>& stations,
                              const std::map<std::string, std::string>& placement,
                              const RoutingTable& table) {
  FlowGeneration out;
  for (const auto& [station, station_apps] : slot.records) {
    const bool station_available = stations.contains(station);
    for (const auto& [app, volume] : station_apps) {
      if (!station_available || !apps.contains(app)) {
        out.filtered_out += volume.ul_bytes + volume.dl_bytes;
        continue;
      }
      const auto placed = placement.find(app);
      if (placed == placement.end()) {
        throw ConfigError("no server placement for available app '" + app + "'");
      }
      const std::string& server = placed->second;
      const auto downlink_path = route(table, server, station);

      if (volume.ul_bytes > 0) {
        TrafficFlow flow{slot.slot, app, station, server, Direction::kUplink,
                         volume.ul_bytes, std::nullopt};
        if (downlink_path) {
          Path uplink = *downlink_path;
          std::reverse(uplink.stations.begin(), uplink.stations.end());
          flow.path = std::move(uplink);
        }
        out.flows.push_back(std::move(flow));
      }
      if (volume.dl_bytes > 0) {
        out.flows.push_back(TrafficFlow{slot.slot, app, station, server, Direction::kDownlink,
                                        volume.dl_bytes, downlink_path});
      }
    }
  }
  return out;
}

LoadAccumulation accumulate_load(std::span<const TrafficFlow> flows) {
  LoadAccumulation out;
  for (const auto& flow : flows) {
    if (!flow.path) continue;
    const auto& stations = flow.path->stations;
    for (std::size_t i = 0; i + 1 < stations.size(); ++i) {
      auto link = std::minmax(stations[i], stations[i + 1]);
      out.link_loads[{link.first, link.second}] += flow.volume;
    }
  }
  for (const auto& [link, bytes] : out.link_loads) out.network_load += bytes;
  return out;
}

SlotMetrics compute_metrics(std::span<const TrafficFlow> flows, std::uint64_t filtered_out,
                            const SlotId& slot) {
  SlotMetrics metrics;
  metrics.slot = slot;
  metrics.filtered_out = filtered_out;
  for (const auto& flow : flows) {
    metrics.total += flow.volume;
    if (!flow.path) {
      metrics.nonserviceable += flow.volume;
    } else if (flow.path->hop_count() == 0) {
      metrics.local += flow.volume;
    } else {
      metrics.wireless += flow.volume;
    }
  }
  auto load = accumulate_load(flows);
  metrics.link_loads = std::move(load.link_loads);
  metrics.network_load = load.network_load;
  return metrics;
}

AggregateMetrics aggregate(std::span<const SlotMetrics> per_slot) {
  AggregateMetrics agg;
  agg.slot_count = per_slot.size();
  for (const auto& m : per_slot) {
    agg.total += m.total;
    agg.local += m.local;
    agg.wireless += m.wireless;
    agg.nonserviceable += m.nonserviceable;
    agg.filtered_out += m.filtered_out;
    agg.network_load += m.network_load;
    for (const auto& [link, bytes] : m.link_loads) agg.link_loads[link] += bytes;
  }
  return agg;
}

}  // namespace caret
