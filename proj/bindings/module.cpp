// Python bindings for the caret evaluation engine.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "caret/errors.hpp"
#include "caret/flows.hpp"
#include "caret/geo.hpp"
#include "caret/pipeline.hpp"
#include "caret/routing.hpp"
#include "caret/strategy.hpp"
#include "caret/topology.hpp"
#include "caret/traffic.hpp"
#include "caret/version.hpp"

namespace py = pybind11;

namespace {

py::dict aggregate_to_dict(const caret::AggregateMetrics& agg) {
  py::dict d;
  d["slot_count"] = agg.slot_count;
  d["total_bytes"] = agg.total;
  d["local_bytes"] = agg.local;
  d["wireless_bytes"] = agg.wireless;
  d["nonserviceable_bytes"] = agg.nonserviceable;
  d["filtered_out_bytes"] = agg.filtered_out;
  d["network_load"] = agg.network_load;
  d["local_fraction"] = agg.local_fraction();
  d["wireless_fraction"] = agg.wireless_fraction();
  d["nonserviceable_fraction"] = agg.nonserviceable_fraction();
  return d;
}

}  // namespace

PYBIND11_MODULE(_caret, m) {
  m.doc() = "Crisis-mode RAN evaluation engine";
  m.attr("__version__") = caret::kVersion;

  py::register_exception<caret::Error>(m, "CaretError");

  py::class_<caret::GeoPoint>(m, "GeoPoint")
      .def(py::init<double, double>(), py::arg("lat"), py::arg("lon"))
      .def_readonly("lat", &caret::GeoPoint::lat)
      .def_readonly("lon", &caret::GeoPoint::lon)
      .def("__repr__", [](const caret::GeoPoint& p) {
        return "GeoPoint(lat=" + std::to_string(p.lat) + ", lon=" + std::to_string(p.lon) + ")";
      });

  py::class_<caret::BaseStation>(m, "BaseStation")
      .def(py::init([](const std::string& id, double lat, double lon, bool edge_capable) {
             return caret::BaseStation{id, caret::GeoPoint(lat, lon), edge_capable};
           }),
           py::arg("id"), py::arg("lat"), py::arg("lon"), py::arg("edge_capable") = true)
      .def_readonly("id", &caret::BaseStation::id)
      .def_readonly("location", &caret::BaseStation::location)
      .def_readonly("edge_capable", &caret::BaseStation::edge_capable)
      .def("__repr__", [](const caret::BaseStation& s) { return "BaseStation('" + s.id + "')"; });

  py::class_<caret::Tile>(m, "Tile")
      .def(py::init([](std::int64_t id, double lat, double lon) {
             return caret::Tile{id, caret::GeoPoint(lat, lon)};
           }),
           py::arg("id"), py::arg("lat"), py::arg("lon"))
      .def_readonly("id", &caret::Tile::id)
      .def_readonly("centroid", &caret::Tile::centroid);

  py::class_<caret::GraphEdge>(m, "GraphEdge")
      .def_readonly("a", &caret::GraphEdge::a)
      .def_readonly("b", &caret::GraphEdge::b)
      .def_readonly("length_m", &caret::GraphEdge::length_m)
      .def("__repr__", [](const caret::GraphEdge& e) {
        return "GraphEdge(" + e.a + "-" + e.b + ", " + std::to_string(e.length_m) + " m)";
      });

  py::class_<caret::Graph>(m, "Graph")
      .def_readonly("nodes", &caret::Graph::nodes)
      .def_readonly("edges", &caret::Graph::edges);

  m.def("haversine_distance", &caret::haversine_distance, py::arg("a"), py::arg("b"),
        "Great-circle distance in meters.");

  m.def(
      "assign_tiles",
      [](const std::vector<caret::Tile>& tiles, const std::vector<caret::BaseStation>& stations) {
        return caret::assign_tiles(tiles, stations);
      },
      py::arg("tiles"), py::arg("stations"),
      "Maps each tile id to its nearest station id (ties to the smaller id).");

  m.def("load_station_registry", &caret::load_station_registry, py::arg("path"));

  m.def(
      "build_radius_graph",
      [](const std::vector<caret::BaseStation>& stations, double radius_m) {
        return caret::build_radius_graph(stations, radius_m);
      },
      py::arg("stations"), py::arg("radius_m"));

  m.def(
      "minimum_spanning_tree",
      [](const std::vector<caret::BaseStation>& stations) {
        return caret::minimum_spanning_tree(stations);
      },
      py::arg("stations"));

  m.def("connectivity", &caret::connectivity, py::arg("graph"), py::arg("anchor"),
        "Fraction of nodes in the anchor's connected component.");

  m.def(
      "min_radius_for_connectivity",
      [](const std::vector<caret::BaseStation>& stations, const std::string& anchor,
         double target) { return caret::min_radius_for_connectivity(stations, anchor, target); },
      py::arg("stations"), py::arg("anchor"), py::arg("target"));

  m.def(
      "per_station_connect_radius",
      [](const std::vector<caret::BaseStation>& stations, const std::string& anchor) {
        return caret::per_station_connect_radius(stations, anchor);
      },
      py::arg("stations"), py::arg("anchor"));

  m.def(
      "shortest_paths_from",
      [](const caret::Graph& graph, const std::string& source) {
        const auto tree = caret::shortest_paths_from(graph, source);
        return py::make_tuple(tree.distance_m, tree.predecessor);
      },
      py::arg("graph"), py::arg("source"),
      "Returns (distances, predecessors); unreachable stations map to inf.");

  m.def(
      "synth",
      [](const std::filesystem::path& out_dir, std::size_t stations, std::size_t apps,
         std::size_t slots_per_day, std::size_t days, std::uint64_t volume_scale,
         std::uint64_t seed) {
        caret::SynthConfig config{stations, apps, slots_per_day, days, volume_scale, seed};
        caret::run_synth(config, out_dir);
      },
      py::arg("out_dir"), py::arg("stations") = 10, py::arg("apps") = 3,
      py::arg("slots_per_day") = 96, py::arg("days") = 1, py::arg("volume_scale") = 1,
      py::arg("seed") = 0, "Writes a deterministic synthetic city dataset.");

  m.def(
      "convert",
      [](const std::filesystem::path& tilewise_dir, const std::filesystem::path& registry,
         const std::filesystem::path& tiles, const std::filesystem::path& out_dir) {
        const auto summary = caret::run_convert({tilewise_dir, registry, tiles, out_dir});
        py::dict d;
        d["bytes_in"] = summary.bytes_in;
        d["bytes_out"] = summary.bytes_out;
        d["series_files"] = summary.series_files;
        d["slot_files"] = summary.slot_files;
        return d;
      },
      py::arg("tilewise_dir"), py::arg("registry"), py::arg("tiles"), py::arg("out_dir"),
      "Converts tile-wise traffic files to per-slot station-wise files.");

  m.def(
      "evaluate",
      [](const std::filesystem::path& registry, const std::filesystem::path& slots,
         const std::filesystem::path& scenario, const std::filesystem::path& out_dir,
         unsigned workers) {
        const auto result = caret::run_evaluate({registry, slots, scenario, out_dir, workers});
        py::dict d = aggregate_to_dict(result.outcome.aggregate);
        d["anchor"] = result.scenario.anchor;
        d["connectivity"] = result.scenario.connectivity_fraction;
        d["placement"] = result.scenario.placement;
        return d;
      },
      py::arg("registry"), py::arg("slots"), py::arg("scenario"), py::arg("out_dir"),
      py::arg("workers") = 0,
      "Runs the full evaluation pipeline and writes the artifact tree.");

  m.def(
      "sweep",
      [](const std::filesystem::path& registry, const std::filesystem::path& slots,
         const std::filesystem::path& scenario, const std::vector<double>& radii,
         const std::filesystem::path& out_dir, unsigned workers) {
        const auto rows = caret::run_sweep({registry, slots, scenario, radii, out_dir, workers});
        py::list out;
        for (const auto& row : rows) {
          py::dict d;
          d["radius_m"] = row.radius_m;
          d["connectivity"] = row.connectivity;
          d["local_frac"] = row.local_frac;
          d["wireless_frac"] = row.wireless_frac;
          d["nonserviceable_frac"] = row.nonserviceable_frac;
          d["network_load"] = row.network_load;
          out.append(d);
        }
        return out;
      },
      py::arg("registry"), py::arg("slots"), py::arg("scenario"), py::arg("radii"),
      py::arg("out_dir"), py::arg("workers") = 0,
      "Evaluates the scenario once per link radius; returns the summary rows.");
}
