"""Maximum-weight arborescences and single-root dependency trees over dense
edge scores."""

from .arborescence import decode_mwa
from .constrained import best_root_edge_removal, decode_dependency_tree, delete_root_edges
from .contraction import contract, stitch
from .errors import (
    DecodeError,
    GraphError,
    NoArborescence,
    NoDependencyTree,
    ParseError,
    SpanrootError,
)
from .graph import ROOT, Edge, EdgeSelection, Graph, build_graph, worked_example
from .greedy import Cycle, find_cycle, greedy_graph
from .metrics import evaluate, exact_match, malformed_rate, relative_delta, uas
from .oracle import best_tree_weight, enumerate_trees, n_run_baseline
from .trace import DecodeTrace

__all__ = [
    "ROOT",
    "Cycle",
    "DecodeError",
    "DecodeTrace",
    "Edge",
    "EdgeSelection",
    "Graph",
    "GraphError",
    "NoArborescence",
    "NoDependencyTree",
    "ParseError",
    "SpanrootError",
    "best_root_edge_removal",
    "best_tree_weight",
    "build_graph",
    "contract",
    "decode_dependency_tree",
    "decode_mwa",
    "delete_root_edges",
    "enumerate_trees",
    "evaluate",
    "exact_match",
    "find_cycle",
    "greedy_graph",
    "malformed_rate",
    "n_run_baseline",
    "relative_delta",
    "stitch",
    "uas",
    "worked_example",
]
