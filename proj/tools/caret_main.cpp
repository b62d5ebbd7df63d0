// caret: crisis-mode RAN evaluation tool.
//
// Subcommands: convert, synth, topology, evaluate, sweep.
// Exit codes: 0 success, 1 internal error, 2 invalid input or configuration.

#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "caret/errors.hpp"
#include "caret/log.hpp"
#include "caret/pipeline.hpp"
#include "caret/text.hpp"
#include "caret/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

int dispatch(CLI::App& app, const std::function<void()>& run) {
  try {
    run();
    return kExitOk;
  } catch (const caret::Error& e) {
    std::cerr << "caret: error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "caret: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crisis-mode RAN evaluation tool"};
  app.set_version_flag("--version", std::string("caret ") + caret::kVersion);
  app.require_subcommand(1);

  // convert
  auto* convert = app.add_subcommand("convert", "Convert tile-wise traffic to slot files");
  caret::ConvertRequest convert_request;
  convert->add_option("--tilewise", convert_request.tilewise_dir, "Directory of tile-wise .txt files")
      ->required();
  convert->add_option("--registry", convert_request.registry_path, "Station registry CSV")->required();
  convert->add_option("--tiles", convert_request.tiles_path, "Tile registry CSV")->required();
  convert->add_option("--out", convert_request.out_dir, "Output directory for slot files")->required();

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic city dataset");
  caret::SynthConfig synth_config;
  std::string synth_out;
  synth->add_option("--stations", synth_config.station_count, "Station count")->capture_default_str();
  synth->add_option("--apps", synth_config.app_count, "App count")->capture_default_str();
  synth->add_option("--slots-per-day", synth_config.slots_per_day, "Slots per day")
      ->capture_default_str();
  synth->add_option("--days", synth_config.days, "Day count")->capture_default_str();
  synth->add_option("--volume-scale", synth_config.volume_scale, "Byte volume multiplier")
      ->capture_default_str();
  synth->add_option("--seed", synth_config.seed, "Random seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output directory")->required();

  // topology
  auto* topology = app.add_subcommand("topology", "Analyze the inter-station link topology");
  caret::TopologyRequest topology_request;
  std::string topology_anchor;
  std::string topology_slots;
  double topology_target = 0.0;
  topology->add_option("--registry", topology_request.registry_path, "Station registry CSV")
      ->required();
  topology->add_option("--links", topology_request.links_text, "Link strategy")
      ->capture_default_str();
  auto* anchor_opt = topology->add_option("--anchor", topology_anchor, "Anchor station id");
  auto* slots_opt = topology->add_option("--slots", topology_slots,
                                         "Slot directory used to rank the default anchor");
  auto* target_opt = topology->add_option("--target-connectivity", topology_target,
                                          "Report the minimum radius for this connectivity");
  topology->add_option("--out", topology_request.out_dir, "Output directory")->required();

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a crisis scenario over traffic data");
  caret::EvaluateRequest evaluate_request;
  evaluate->add_option("--registry", evaluate_request.registry_path, "Station registry CSV")
      ->required();
  evaluate->add_option("--slots", evaluate_request.slots_dir, "Slot directory")->required();
  evaluate->add_option("--scenario", evaluate_request.scenario_path, "Scenario JSON")->required();
  evaluate->add_option("--out", evaluate_request.out_dir, "Output directory")->required();
  evaluate->add_option("--workers", evaluate_request.workers, "Worker threads (0 = auto)")
      ->capture_default_str();

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate a scenario across link radii");
  caret::SweepRequest sweep_request;
  sweep->add_option("--registry", sweep_request.registry_path, "Station registry CSV")->required();
  sweep->add_option("--slots", sweep_request.slots_dir, "Slot directory")->required();
  sweep->add_option("--scenario", sweep_request.scenario_path, "Scenario JSON template")->required();
  sweep->add_option("--radii", sweep_request.radii, "Ascending link radii in meters")
      ->required()
      ->delimiter(',');
  sweep->add_option("--out", sweep_request.out_dir, "Output directory")->required();
  sweep->add_option("--workers", sweep_request.workers, "Worker threads (0 = auto)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (convert->parsed()) {
    return dispatch(app, [&] {
      const auto summary = caret::run_convert(convert_request);
      std::cout << "converted " << summary.series_files << " tile-wise files into "
                << summary.slot_files << " slot files\n"
                << "bytes in:  " << summary.bytes_in << "\n"
                << "bytes out: " << summary.bytes_out << " (equal)\n";
    });
  }
  if (synth->parsed()) {
    return dispatch(app, [&] {
      caret::run_synth(synth_config, synth_out);
      std::cout << "wrote synthetic city (" << synth_config.station_count << " stations, "
                << synth_config.app_count << " apps, " << synth_config.slots_per_day
                << " slots/day, " << synth_config.days << " days) to " << synth_out << "\n";
    });
  }
  if (topology->parsed()) {
    return dispatch(app, [&] {
      if (!anchor_opt->empty()) topology_request.anchor = topology_anchor;
      if (!slots_opt->empty()) topology_request.slots_dir = topology_slots;
      if (!target_opt->empty()) topology_request.target_connectivity = topology_target;
      const auto result = caret::run_topology(topology_request);
      std::cout << "anchor: " << result.anchor << "\n"
                << "mst max edge: " << caret::format_fixed2(result.mst_max_edge_m) << " m\n";
      if (result.min_radius_m) {
        std::cout << "min radius for target connectivity: "
                  << caret::format_fixed2(*result.min_radius_m) << " m\n";
      }
    });
  }
  if (evaluate->parsed()) {
    return dispatch(app, [&] {
      const auto result = caret::run_evaluate(evaluate_request);
      const auto& agg = result.outcome.aggregate;
      std::cout << "slots: " << agg.slot_count << "\n"
                << "total bytes: " << agg.total << "\n"
                << "local: " << caret::format_sig12(agg.local_fraction()) << "\n"
                << "wireless: " << caret::format_sig12(agg.wireless_fraction()) << "\n"
                << "nonserviceable: " << caret::format_sig12(agg.nonserviceable_fraction()) << "\n"
                << "network load: " << agg.network_load << "\n";
    });
  }
  if (sweep->parsed()) {
    return dispatch(app, [&] {
      const auto rows = caret::run_sweep(sweep_request);
      std::cout << "swept " << rows.size() << " radii\n";
      for (const auto& row : rows) {
        std::cout << caret::format_fixed2(row.radius_m) << " m: connectivity "
                  << caret::format_sig12(row.connectivity) << ", nonserviceable "
                  << caret::format_sig12(row.nonserviceable_frac) << "\n";
      }
    });
  }
  return kExitUsage;
}
