"""Graph spanner construction toolkit with exact fixed-point verification."""

from .graph import (
    INF,
    SCALE,
    GraphError,
    GraphFamilySpec,
    ParseError,
    SpannerResult,
    WeightedGraph,
    bad_cycle,
    build_graph,
    clique_cycle,
    connected_components,
    generate,
    gnm,
    is_connected,
    load_graph,
    save_graph,
)
from .metrics import (
    StretchCheck,
    exact_distances,
    girth,
    lightness,
    mst,
    verify_stretch,
)

__all__ = [
    "INF",
    "SCALE",
    "GraphError",
    "GraphFamilySpec",
    "ParseError",
    "SpannerResult",
    "WeightedGraph",
    "bad_cycle",
    "build_graph",
    "clique_cycle",
    "connected_components",
    "generate",
    "gnm",
    "is_connected",
    "load_graph",
    "save_graph",
    "StretchCheck",
    "exact_distances",
    "girth",
    "lightness",
    "mst",
    "verify_stretch",
]

__version__ = "0.1.0"
