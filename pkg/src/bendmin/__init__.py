"""Bend-minimum orthogonal drawings of planar graphs with maximum degree 3."""

from __future__ import annotations

from .dp import SolveResult, SolverConfig, bend_min_global, bend_min_ref_edge, bend_min_vertex
from .graph import Graph, build_graph, graph_from_json
from .ortho import OrthoRep, validate_rep
from .realize import GridDrawing, compact, emit_json, emit_svg

__all__ = [
    "Graph",
    "GridDrawing",
    "OrthoRep",
    "SolveResult",
    "SolverConfig",
    "bend_min_global",
    "bend_min_ref_edge",
    "bend_min_vertex",
    "build_graph",
    "compact",
    "emit_json",
    "emit_svg",
    "graph_from_json",
    "validate_rep",
]
