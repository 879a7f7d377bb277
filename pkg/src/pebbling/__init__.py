"""Exact graph pebbling: reachability, pebbling numbers, Class 0 and random-graph sweeps."""

from .generators import BlowupSpec, chh_graph, gnp_sample, named_graph, path_blowup
from .graph import (
    Graph,
    GraphError,
    diameter,
    distances,
    enumerate_graphs,
    is_isomorphic,
    max_disjoint_paths,
    vertex_connectivity,
)
from .number import classify_small, enumerate_distributions, is_class0, pebbling_number
from .proof import audit_counterexample
from .solver import Move, apply_move, can_pebble, size, verify_certificate, weight

__all__ = [
    "BlowupSpec", "chh_graph", "gnp_sample", "named_graph", "path_blowup",
    "Graph", "GraphError", "diameter", "distances", "enumerate_graphs", "is_isomorphic",
    "max_disjoint_paths", "vertex_connectivity",
    "classify_small", "enumerate_distributions", "is_class0", "pebbling_number",
    "audit_counterexample",
    "Move", "apply_move", "can_pebble", "size", "verify_certificate", "weight",
]

__version__ = "0.1.0"
