#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "caret/flows.hpp"
#include "caret/routing.hpp"
#include "caret/strategy.hpp"
#include "caret/topology.hpp"
#include "caret/traffic.hpp"

namespace caret {

/// The six decisions applied to a concrete registry and traffic window.
struct ResolvedScenario {
  std::set<std::string> apps;
  std::set<std::string> stations;
  std::set<std::string> edge;
  std::map<std::string, std::string> placement;
  std::string anchor;
  Graph graph;
  RoutingTable table;
  double connectivity_fraction = 0.0;
};

/// Resolves selections against total traffic, places servers, establishes
/// links over the available stations, and builds the routing table.
///
/// App and station selections rank on unfiltered totals; placement and the
/// anchor use totals filtered to the available apps and stations. The anchor
/// is the available station with the highest filtered volume (smallest id on
/// ties). Explicit links must name registry stations; links touching
/// unavailable stations are dropped.
ResolvedScenario resolve_scenario(const ScenarioConfig& config,
                                  std::span<const BaseStation> registry,
                                  std::span<const SlotTraffic> slots);

struct EvaluationOutcome {
  std::vector<SlotMetrics> per_slot;
  AggregateMetrics aggregate;
};

/// Evaluates every slot against the resolved scenario. Slots are processed
/// in parallel; the result is independent of the worker count.
EvaluationOutcome evaluate_slots(const ResolvedScenario& scenario,
                                 std::span<const SlotTraffic> slots, unsigned workers);

/// Reads every `slot_*.csv` in a directory, sorted by file name.
std::vector<SlotTraffic> read_slot_dir(const std::filesystem::path& dir, unsigned workers);

struct EvaluateRequest {
  std::filesystem::path registry_path;
  std::filesystem::path slots_dir;
  std::filesystem::path scenario_path;
  std::filesystem::path out_dir;
  unsigned workers = 0;  // 0 = hardware concurrency
};

struct EvaluateResult {
  ResolvedScenario scenario;
  EvaluationOutcome outcome;
};

/// Full pipeline: load inputs, resolve, evaluate, and write the artifact
/// tree (metrics.csv, link_loads.csv, aggregate.json, routing_table.csv,
/// links.geojson, summary.json, manifest.json).
EvaluateResult run_evaluate(const EvaluateRequest& request);

struct SweepRequest {
  std::filesystem::path registry_path;
  std::filesystem::path slots_dir;
  std::filesystem::path scenario_path;  // links entry is replaced per radius
  std::vector<double> radii;            // positive, strictly ascending
  std::filesystem::path out_dir;
  unsigned workers = 0;
};

struct SweepRow {
  double radius_m = 0.0;
  double connectivity = 0.0;
  double local_frac = 0.0;
  double wireless_frac = 0.0;
  double nonserviceable_frac = 0.0;
  std::uint64_t network_load = 0;
};

/// One evaluation per radius with all other decisions held fixed. Writes
/// sweep.csv plus a full artifact tree per radius.
std::vector<SweepRow> run_sweep(const SweepRequest& request);

struct ConvertRequest {
  std::filesystem::path tilewise_dir;
  std::filesystem::path registry_path;
  std::filesystem::path tiles_path;
  std::filesystem::path out_dir;
};

struct ConvertSummary {
  std::uint64_t bytes_in = 0;
  std::uint64_t bytes_out = 0;
  std::size_t series_files = 0;
  std::size_t slot_files = 0;
};

/// Tile-wise to station-wise conversion. Input and output byte totals are
/// equal by construction; the summary reports both.
ConvertSummary run_convert(const ConvertRequest& request);

/// Writes registry.csv, tiles.csv, and slots/ for a synthetic city.
void run_synth(const SynthConfig& config, const std::filesystem::path& out_dir);

struct TopologyRequest {
  std::filesystem::path registry_path;
  std::string links_text = "MST";
  std::optional<std::string> anchor;
  std::optional<std::filesystem::path> slots_dir;  // ranks the default anchor
  std::optional<double> target_connectivity;
  std::filesystem::path out_dir;
};

struct TopologyResult {
  std::string anchor;
  double mst_max_edge_m = 0.0;
  double mst_total_m = 0.0;
  std::optional<double> min_radius_m;  // set when a target was requested
  ConnectivityCurve curve;
};

/// Link analysis over the whole registry: MST, connectivity curve,
/// per-station connect radii, and the strategy graph as GeoJSON.
TopologyResult run_topology(const TopologyRequest& request);

/// Builds the link graph for a strategy over the available stations.
Graph build_link_graph(const LinkStrategy& strategy, std::span<const BaseStation> available,
                       std::span<const BaseStation> registry);

}  // namespace caret
