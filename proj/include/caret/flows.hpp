#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "caret/routing.hpp"
#include "caret/traffic.hpp"

namespace caret {

/// One directed traffic demand between a client station and an app server.
/// Uplink paths run client -> server, downlink server -> client. A missing
/// path means the client has no route to the server.
struct TrafficFlow {
  SlotId slot;
  std::string app;
  std::string client;
  std::string server;
  Direction direction = Direction::kUplink;
  std::uint64_t volume = 0;
  std::optional<Path> path;
};

using LinkLoads = std::map<std::pair<std::string, std::string>, std::uint64_t>;

/// Byte accounting for one slot. local + wireless + nonserviceable == total
/// exactly; network_load is the sum of all link loads.
struct SlotMetrics {
  SlotId slot;
  std::uint64_t total = 0;
  std::uint64_t local = 0;
  std::uint64_t wireless = 0;
  std::uint64_t nonserviceable = 0;
  std::uint64_t filtered_out = 0;
  LinkLoads link_loads;
  std::uint64_t network_load = 0;
};

/// Slot metrics summed over a run; fractions are derived from the integer
/// totals at the end.
struct AggregateMetrics {
  std::size_t slot_count = 0;
  std::uint64_t total = 0;
  std::uint64_t local = 0;
  std::uint64_t wireless = 0;
  std::uint64_t nonserviceable = 0;
  std::uint64_t filtered_out = 0;
  LinkLoads link_loads;
  std::uint64_t network_load = 0;

  double local_fraction() const;
  double wireless_fraction() const;
  double nonserviceable_fraction() const;
};

struct FlowGeneration {
  std::vector<TrafficFlow> flows;
  std::uint64_t filtered_out = 0;
};

/// Turns one slot's records into flows. Records at unavailable stations or
/// for unavailable apps contribute to filtered_out and produce no flow; every
/// remaining (station, app, direction) with volume > 0 yields one flow.
FlowGeneration generate_flows(const SlotTraffic& slot, const std::set<std::string>& apps,
                              const std::set<std::string>& stations,
                              const std::map<std::string, std::string>& placement,
                              const RoutingTable& table);

struct LoadAccumulation {
  LinkLoads link_loads;
  std::uint64_t network_load = 0;
};

/// Adds each routed flow's volume to every link on its path. Local flows
/// (zero hops) and unroutable flows contribute nothing.
LoadAccumulation accumulate_load(std::span<const TrafficFlow> flows);

SlotMetrics compute_metrics(std::span<const TrafficFlow> flows, std::uint64_t filtered_out,
                            const SlotId& slot);

/// Component-wise integer sum; independent of slot order.
AggregateMetrics aggregate(std::span<const SlotMetrics> per_slot);

}  // namespace caret
