"""Forbidden-subgraph universality toolkit for finite trees."""

from .graph import Graph, TreeShape, ShapeKind, parse_edge_list, emit_edge_list, emit_dot, tree_shape, girth, distances

__all__ = [
    "Graph",
    "ShapeKind",
    "TreeShape",
    "distances",
    "emit_dot",
    "emit_edge_list",
    "girth",
    "parse_edge_list",
    "tree_shape",
]
