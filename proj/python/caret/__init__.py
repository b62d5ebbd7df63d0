"""Crisis-mode RAN evaluation engine.

Thin wrapper around the compiled `_caret` extension module.
"""

from ._caret import (
    BaseStation,
    CaretError,
    GeoPoint,
    Graph,
    GraphEdge,
    Tile,
    __version__,
    assign_tiles,
    build_radius_graph,
    connectivity,
    convert,
    evaluate,
    haversine_distance,
    load_station_registry,
    min_radius_for_connectivity,
    minimum_spanning_tree,
    per_station_connect_radius,
    shortest_paths_from,
    sweep,
    synth,
)

__all__ = [
    "BaseStation",
    "CaretError",
    "GeoPoint",
    "Graph",
    "GraphEdge",
    "Tile",
    "__version__",
    "assign_tiles",
    "build_radius_graph",
    "connectivity",
    "convert",
    "evaluate",
    "haversine_distance",
    "load_station_registry",
    "min_radius_for_connectivity",
    "minimum_spanning_tree",
    "per_station_connect_radius",
    "shortest_paths_from",
    "sweep",
    "synth",
]
