#include "caret/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <tuple>

#include "caret/errors.hpp"
#include "caret/log.hpp"
#include "caret/report.hpp"
#include "caret/text.hpp"
#include "caret/version.hpp"

namespace caret {

namespace {

unsigned effective_workers(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Runs fn(i) for i in [0, count) across a worker pool. Work items land in
// caller-indexed slots, so results never depend on scheduling.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  workers = std::min<std::size_t>(effective_workers(workers), count == 0 ? 1 : count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::string> sorted_ids(std::span<const BaseStation> stations) {
  std::vector<std::string> ids;
  ids.reserve(stations.size());
  for (const auto& s : stations) ids.push_back(s.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::vector<BaseStation> filter_stations(std::span<const BaseStation> registry,
                                         const std::set<std::string>& keep) {
  std::vector<BaseStation> out;
  out.reserve(keep.size());
  for (const auto& s : registry) {
    if (keep.contains(s.id)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(),
            [](const BaseStation& a, const BaseStation& b) { return a.id < b.id; });
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_quote(const std::string& s) { return "\"" + json_escape(s) + "\""; }

}  // namespace

Graph build_link_graph(const LinkStrategy& strategy, std::span<const BaseStation> available,
                       std::span<const BaseStation> registry) {
  switch (strategy.kind) {
    case LinkStrategy::Kind::kRadius:
      return build_radius_graph(available, strategy.radius_m);
    case LinkStrategy::Kind::kMst:
      return minimum_spanning_tree(available);
    case LinkStrategy::Kind::kExplicit: {
      std::set<std::string> known;
      for (const auto& s : registry) known.insert(s.id);
      std::set<std::string> usable;
      for (const auto& s : available) usable.insert(s.id);
      std::vector<std::pair<std::string, std::string>> kept;
      for (const auto& [a, b] : strategy.links) {
        if (!known.contains(a)) throw ConfigError("link references unknown station '" + a + "'");
        if (!known.contains(b)) throw ConfigError("link references unknown station '" + b + "'");
        if (usable.contains(a) && usable.contains(b)) {
          kept.emplace_back(a, b);
        } else {
          log_debug("dropping link " + a + "-" + b + " to an unavailable station");
        }
      }
      return build_explicit_graph(available, kept);
    }
  }
  throw Error("internal: unhandled link strategy");
}

ResolvedScenario resolve_scenario(const ScenarioConfig& config,
                                  std::span<const BaseStation> registry,
                                  std::span<const SlotTraffic> slots) {
  if (registry.empty()) throw ConfigError("station registry is empty");

  const auto station_universe = sorted_ids(registry);
  const TrafficTotals totals = accumulate_totals(slots);

  std::vector<std::string> app_universe;
  for (const auto& [app, bytes] : totals.per_app) app_universe.push_back(app);
  if (app_universe.empty()) throw ConfigError("traffic window contains no app records");

  ResolvedScenario resolved;
  const auto stations =
      resolve_selection(config.base_stations, totals.per_station, station_universe);
  resolved.stations.insert(stations.begin(), stations.end());
  const auto apps = resolve_selection(config.apps, totals.per_app, app_universe);
  resolved.apps.insert(apps.begin(), apps.end());
  const auto edge = resolve_selection(config.edge_servers, totals.per_station, stations);
  resolved.edge.insert(edge.begin(), edge.end());

  const TrafficTotals filtered =
      accumulate_totals_filtered(slots, resolved.apps, resolved.stations);
  resolved.placement =
      place_servers(config.app_servers, filtered.per_station_app, resolved.edge, resolved.apps);

  // Anchor: available station with the highest filtered volume, ties to the
  // smaller id. Iteration over the sorted set keeps the first maximum.
  std::uint64_t best = 0;
  bool first = true;
  for (const auto& station : resolved.stations) {
    const auto it = filtered.per_station.find(station);
    const std::uint64_t volume = it == filtered.per_station.end() ? 0 : it->second;
    if (first || volume > best) {
      resolved.anchor = station;
      best = volume;
      first = false;
    }
  }

  const auto available = filter_stations(registry, resolved.stations);
  resolved.graph = build_link_graph(config.links, available, registry);
  resolved.connectivity_fraction = connectivity(resolved.graph, resolved.anchor);

  std::vector<std::string> servers;
  for (const auto& [app, server] : resolved.placement) servers.push_back(server);
  resolved.table = build_routing_table(resolved.graph, servers);
  return resolved;
}

EvaluationOutcome evaluate_slots(const ResolvedScenario& scenario,
                                 std::span<const SlotTraffic> slots, unsigned workers) {
  EvaluationOutcome outcome;
  outcome.per_slot.resize(slots.size());
  parallel_for(slots.size(), workers, [&](std::size_t i) {
    const auto generated = generate_flows(slots[i], scenario.apps, scenario.stations,
                                          scenario.placement, scenario.table);
    outcome.per_slot[i] = compute_metrics(generated.flows, generated.filtered_out, slots[i].slot);
  });
  outcome.aggregate = aggregate(outcome.per_slot);
  return outcome;
}

std::vector<SlotTraffic> read_slot_dir(const std::filesystem::path& dir, unsigned workers) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("slot directory does not exist: " + dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.starts_with("slot_") && name.ends_with(".csv")) files.push_back(entry.path());
  }
  if (files.empty()) throw ConfigError("no slot files (slot_*.csv) in " + dir.string());
  std::sort(files.begin(), files.end());

  std::vector<SlotTraffic> slots(files.size());
  parallel_for(files.size(), workers, [&](std::size_t i) { slots[i] = read_slot_file(files[i]); });
  return slots;
}

namespace {

void validate_slot_stations(std::span<const SlotTraffic> slots,
                            std::span<const BaseStation> registry) {
  std::set<std::string> known;
  for (const auto& s : registry) known.insert(s.id);
  for (const auto& slot : slots) {
    for (const auto& [station, apps] : slot.records) {
      if (!known.contains(station)) {
        throw ConfigError("slot " + slot.slot.to_string() + " references unknown station '" +
                          station + "'");
      }
    }
  }
}

std::string render_summary_json(const ResolvedScenario& scenario) {
  std::string out = "{\n";
  out += "  \"anchor\": " + json_quote(scenario.anchor) + ",\n";
  out += "  \"connectivity\": " + format_sig12(scenario.connectivity_fraction) + ",\n";
  out += "  \"available_apps\": [";
  bool first = true;
  for (const auto& app : scenario.apps) {
    if (!first) out += ", ";
    out += json_quote(app);
    first = false;
  }
  out += "],\n";
  out += "  \"available_station_count\": " + std::to_string(scenario.stations.size()) + ",\n";
  out += "  \"edge_station_count\": " + std::to_string(scenario.edge.size()) + ",\n";
  out += "  \"link_count\": " + std::to_string(scenario.graph.edges.size()) + ",\n";
  out += "  \"placement\": {";
  first = true;
  for (const auto& [app, server] : scenario.placement) {
    if (!first) out += ", ";
    out += json_quote(app) + ": " + json_quote(server);
    first = false;
  }
  out += "}\n";
  out += "}\n";
  return out;
}

std::string digest_inputs(const std::filesystem::path& registry_path,
                          const std::filesystem::path& slots_dir) {
  Fnv1a digest;
  digest.update(read_text_file(registry_path));
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(slots_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.starts_with("slot_") && name.ends_with(".csv")) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    digest.update(file.filename().string());
    digest.update(std::string_view("\0", 1));
    digest.update(read_text_file(file));
  }
  return "fnv1a:" + digest.hex();
}

std::string render_manifest_json(const ScenarioSpec& spec, const EvaluateRequest& request,
                                 const std::string& digest,
                                 const std::vector<double>* radii = nullptr) {
  std::string out = "{\n";
  out += "  \"dataset_digest\": " + json_quote(digest) + ",\n";
  out += "  \"inputs\": {\n";
  out += "    \"registry\": " + json_quote(request.registry_path.string()) + ",\n";
  out += "    \"scenario\": " + json_quote(request.scenario_path.string()) + ",\n";
  out += "    \"slots\": " + json_quote(request.slots_dir.string()) + "\n";
  out += "  },\n";
  out += "  \"output_dir\": " + json_quote(request.out_dir.string()) + ",\n";
  if (radii != nullptr) {
    out += "  \"radii_m\": [";
    for (std::size_t i = 0; i < radii->size(); ++i) {
      if (i > 0) out += ", ";
      out += format_double((*radii)[i]);
    }
    out += "],\n";
  }
  out += "  \"scenario\": {\n";
  out += "    \"apps\": " + json_quote(spec.apps) + ",\n";
  out += "    \"base_stations\": " + json_quote(spec.base_stations) + ",\n";
  out += "    \"edge_servers\": " + json_quote(spec.edge_servers) + ",\n";
  out += "    \"app_servers\": " + json_quote(spec.app_servers) + ",\n";
  out += "    \"links\": " + json_quote(spec.links) + ",\n";
  out += "    \"routing\": " + json_quote(spec.routing) + "\n";
  out += "  },\n";
  out += "  \"tool_version\": " + json_quote(kVersion) + ",\n";
  out += "  \"workers\": " + std::to_string(request.workers) + "\n";
  out += "}\n";
  return out;
}

void write_evaluation_artifacts(const ResolvedScenario& scenario,
                                const EvaluationOutcome& outcome,
                                std::span<const BaseStation> registry,
                                const std::filesystem::path& out_dir) {
  write_metrics(outcome.aggregate, outcome.per_slot, out_dir);
  write_text_file(out_dir / "routing_table.csv", render_routing_table_csv(scenario.table));
  write_text_file(out_dir / "summary.json", render_summary_json(scenario));
  write_geojson(export_links(scenario.graph, registry), out_dir / "links.geojson");
}

struct LoadedInputs {
  std::vector<BaseStation> registry;
  std::vector<SlotTraffic> slots;
  ScenarioSpec spec;
};

LoadedInputs load_inputs(const std::filesystem::path& registry_path,
                         const std::filesystem::path& slots_dir,
                         const std::filesystem::path& scenario_path, unsigned workers) {
  LoadedInputs inputs;
  inputs.registry = load_station_registry(registry_path);
  inputs.slots = read_slot_dir(slots_dir, workers);
  validate_slot_stations(inputs.slots, inputs.registry);
  inputs.spec = load_scenario_file(scenario_path);
  return inputs;
}

}  // namespace

EvaluateResult run_evaluate(const EvaluateRequest& request) {
  const auto inputs = load_inputs(request.registry_path, request.slots_dir,
                                  request.scenario_path, request.workers);
  const ScenarioConfig config = parse_scenario(inputs.spec);

  EvaluateResult result;
  result.scenario = resolve_scenario(config, inputs.registry, inputs.slots);
  result.outcome = evaluate_slots(result.scenario, inputs.slots, request.workers);

  write_evaluation_artifacts(result.scenario, result.outcome, inputs.registry, request.out_dir);
  const std::string digest = digest_inputs(request.registry_path, request.slots_dir);
  write_text_file(request.out_dir / "manifest.json",
                  render_manifest_json(inputs.spec, request, digest));
  return result;
}

std::vector<SweepRow> run_sweep(const SweepRequest& request) {
  if (request.radii.empty()) throw ConfigError("sweep requires at least one radius");
  for (std::size_t i = 0; i < request.radii.size(); ++i) {
    if (!(request.radii[i] > 0.0)) throw ConfigError("sweep radii must be positive");
    if (i > 0 && !(request.radii[i] > request.radii[i - 1])) {
      throw ConfigError("sweep radii must be strictly ascending");
    }
  }

  const auto inputs = load_inputs(request.registry_path, request.slots_dir,
                                  request.scenario_path, request.workers);

  std::vector<SweepRow> rows;
  std::string csv = "radius_m,connectivity,local_frac,wireless_frac,nonserviceable_frac,network_load\n";
  for (const double radius : request.radii) {
    ScenarioSpec spec = inputs.spec;
    spec.links = "RADIUS " + format_double(radius);
    const ScenarioConfig config = parse_scenario(spec);
    const ResolvedScenario scenario = resolve_scenario(config, inputs.registry, inputs.slots);
    const EvaluationOutcome outcome = evaluate_slots(scenario, inputs.slots, request.workers);

    write_evaluation_artifacts(scenario, outcome, inputs.registry,
                               request.out_dir / ("r_" + format_fixed2(radius)));

    SweepRow row;
    row.radius_m = radius;
    row.connectivity = scenario.connectivity_fraction;
    row.local_frac = outcome.aggregate.local_fraction();
    row.wireless_frac = outcome.aggregate.wireless_fraction();
    row.nonserviceable_frac = outcome.aggregate.nonserviceable_fraction();
    row.network_load = outcome.aggregate.network_load;
    rows.push_back(row);

    csv += format_fixed2(row.radius_m);
    csv += ',';
    csv += format_sig12(row.connectivity);
    csv += ',';
    csv += format_sig12(row.local_frac);
    csv += ',';
    csv += format_sig12(row.wireless_frac);
    csv += ',';
    csv += format_sig12(row.nonserviceable_frac);
    csv += ',';
    csv += std::to_string(row.network_load);
    csv += '\n';
  }
  write_text_file(request.out_dir / "sweep.csv", csv);

  EvaluateRequest manifest_request{request.registry_path, request.slots_dir,
                                   request.scenario_path, request.out_dir, request.workers};
  const std::string digest = digest_inputs(request.registry_path, request.slots_dir);
  write_text_file(request.out_dir / "manifest.json",
                  render_manifest_json(inputs.spec, manifest_request, digest, &request.radii));
  return rows;
}

ConvertSummary run_convert(const ConvertRequest& request) {
  const auto stations = load_station_registry(request.registry_path);
  const auto tiles = load_tile_registry(request.tiles_path);
  const CityMap map = build_city_map(stations, tiles);

  if (!std::filesystem::is_directory(request.tilewise_dir)) {
    throw IoError("tile-wise directory does not exist: " + request.tilewise_dir.string());
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(request.tilewise_dir)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  if (files.empty()) {
    throw ConfigError("no tile-wise files (*.txt) in " + request.tilewise_dir.string());
  }
  std::sort(files.begin(), files.end());

  std::vector<TilewiseSeries> series;
  std::set<std::string> cities;
  std::set<std::tuple<std::string, int, Direction>> seen;
  for (const auto& file : files) {
    const TilewiseName name = parse_tilewise_name(file.filename().string());
    cities.insert(name.city);
    if (cities.size() > 1) {
      throw ConfigError("tile-wise directory mixes cities: " + *cities.begin() + " and " +
                        *cities.rbegin());
    }
    if (!seen.insert({name.app, name.yyyymmdd, name.direction}).second) {
      throw ConfigError("duplicate tile-wise series in " + file.filename().string());
    }
    series.push_back(read_tilewise_file(file, name.app, name.yyyymmdd, name.direction));
  }

  ConvertSummary summary;
  summary.series_files = files.size();
  for (const auto& s : series) {
    for (const auto& [tile, volumes] : s.rows) {
      for (const auto v : volumes) summary.bytes_in += v;
    }
  }

  const auto converted = convert_to_bswise(series, map.assignment);
  write_slot_files(converted, request.out_dir);
  write_geojson(export_coverage(map), request.out_dir / "coverage.geojson");
  summary.slot_files = converted.size();
  for (const auto& slot : converted) {
    for (const auto& [station, apps] : slot.records) {
      for (const auto& [app, volume] : apps) {
        summary.bytes_out += volume.ul_bytes + volume.dl_bytes;
      }
    }
  }
  if (summary.bytes_in != summary.bytes_out) {
    throw Error("internal: conversion dropped bytes (" + std::to_string(summary.bytes_in) +
                " in, " + std::to_string(summary.bytes_out) + " out)");
  }
  return summary;
}

void run_synth(const SynthConfig& config, const std::filesystem::path& out_dir) {
  const SynthOutput output = generate_synthetic(config);
  write_station_registry(output.stations, out_dir / "registry.csv");
  write_tile_registry(output.tiles, out_dir / "tiles.csv");
  write_slot_files(output.traffic, out_dir / "slots");
}

TopologyResult run_topology(const TopologyRequest& request) {
  const auto stations = load_station_registry(request.registry_path);
  if (stations.empty()) throw ConfigError("station registry is empty");
  const LinkStrategy strategy = parse_link(request.links_text);

  TopologyResult result;
  if (request.anchor) {
    bool known = false;
    for (const auto& s : stations) known = known || s.id == *request.anchor;
    if (!known) throw ConfigError("unknown anchor station '" + *request.anchor + "'");
    result.anchor = *request.anchor;
  } else if (request.slots_dir) {
    const auto slots = read_slot_dir(*request.slots_dir, 0);
    validate_slot_stations(slots, stations);
    const TrafficTotals totals = accumulate_totals(slots);
    std::uint64_t best = 0;
    bool first = true;
    for (const auto& id : sorted_ids(stations)) {
      const auto it = totals.per_station.find(id);
      const std::uint64_t volume = it == totals.per_station.end() ? 0 : it->second;
      if (first || volume > best) {
        result.anchor = id;
        best = volume;
        first = false;
      }
    }
  } else {
    result.anchor = sorted_ids(stations).front();
  }

  const Graph graph = build_link_graph(strategy, stations, stations);
  const Graph mst = minimum_spanning_tree(stations);
  for (const auto& e : mst.edges) {
    result.mst_max_edge_m = std::max(result.mst_max_edge_m, e.length_m);
    result.mst_total_m += e.length_m;
  }
  result.curve = connectivity_curve(stations, result.anchor);
  const auto radii = per_station_connect_radius(stations, result.anchor);
  if (request.target_connectivity) {
    result.min_radius_m =
        min_radius_for_connectivity(stations, result.anchor, *request.target_connectivity);
  }

  std::string mst_csv = "bs_a,bs_b,length_m\n";
  for (const auto& e : mst.edges) {
    mst_csv += e.a + "," + e.b + "," + format_fixed2(e.length_m) + "\n";
  }
  write_text_file(request.out_dir / "mst.csv", mst_csv);

  std::string curve_csv = "radius_m,connectivity\n";
  for (const auto& [radius, fraction] : result.curve.breakpoints) {
    curve_csv += format_fixed2(radius) + "," + format_sig12(fraction) + "\n";
  }
  write_text_file(request.out_dir / "connectivity_curve.csv", curve_csv);

  std::string radius_csv = "bs_id,min_connect_radius_m\n";
  for (const auto& [station, radius] : radii) {
    radius_csv += station + "," + format_fixed2(radius) + "\n";
  }
  write_text_file(request.out_dir / "connect_radius.csv", radius_csv);
  write_geojson(export_connect_radius(radii, stations), request.out_dir / "connect_radius.geojson");
  write_geojson(export_links(graph, stations), request.out_dir / "links.geojson");

  std::string summary = "{\n";
  summary += "  \"anchor\": " + json_quote(result.anchor) + ",\n";
  summary += "  \"link_count\": " + std::to_string(graph.edges.size()) + ",\n";
  if (result.min_radius_m) {
    summary += "  \"min_radius_m\": " + format_sig12(*result.min_radius_m) + ",\n";
  }
  summary += "  \"mst_max_edge_m\": " + format_sig12(result.mst_max_edge_m) + ",\n";
  summary += "  \"mst_total_m\": " + format_sig12(result.mst_total_m) + ",\n";
  summary += "  \"station_count\": " + std::to_string(stations.size());
  if (request.target_connectivity) {
    summary += ",\n  \"target_connectivity\": " + format_sig12(*request.target_connectivity);
  }
  summary += "\n}\n";
  write_text_file(request.out_dir / "summary.json", summary);
  return result;
}

}  // namespace caret
