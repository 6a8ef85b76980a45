"""Best dependency tree: an arborescence with exactly one root edge.

:func:`decode_dependency_tree` runs the same contraction loop as
:func:`~spanroot.arborescence.decode_mwa` and, once the greedy graph is
acyclic, repeatedly deletes the root edge whose removal costs least.  A
removal either leaves the greedy graph acyclic (one root edge fewer) or
closes a cycle through the target, which is then contracted in the graph
*before* the deletion and the search continues on the smaller graph.  The
greedy weight after a removal only changes at the target's head, so each
candidate is scored in constant time.

:func:`delete_root_edges` and :func:`best_root_edge_removal` expose the two
steps on standalone graphs.
"""

from __future__ import annotations

from typing import Iterable, Optional

import numpy as np

from ._dense import decode_positions
from .arborescence import selection_from_positions
from .errors import NoFeasibleRemoval, NotARootEdge
from .graph import ROOT, Edge, EdgeSelection, Graph, best_incoming
from .greedy import greedy_graph
from .trace import DecodeTrace, RootEdgeCandidate

__all__ = [
    "RootEdgeCandidate",
    "best_root_edge_removal",
    "decode_dependency_tree",
    "delete_root_edges",
]


def delete_root_edges(g: Graph, e: Edge) -> Graph:
    """``g`` without any edge from the root to ``e.dst`` (all parallel copies).

    Remaining edges keep their ids.
    """
    if e.src != ROOT:
        raise NotARootEdge(f"edge {e.id} leaves node {e.src}, not the root")
    keep = ~((g.src == ROOT) & (g.dst == e.dst))
    labels = None if g.labels is None else [lab for lab, k in zip(g.labels, keep) if k]
    return Graph(g.n, g.src[keep], g.dst[keep], g.weight[keep], ids=g.ids[keep], labels=labels)


def best_root_edge_removal(g: Graph, sigma: Iterable[Edge], greedy_weight: Optional[float] = None
                           ) -> RootEdgeCandidate:
    """Root edge of the greedy graph whose deletion keeps the most weight.

    ``sigma`` holds the root edges of ``greedy(g)``.  The greedy weight after
    deleting ``root -> j`` is the current greedy weight minus that edge plus
    the best non-root edge into ``j``.  Targets without such an edge are
    skipped; ties go to the lowest edge id.
    """
    sigma = sorted(sigma, key=lambda e: e.id)
    if len(sigma) < 2:
        raise ValueError("need at least two root edges to choose a removal")
    if greedy_weight is None:
        greedy_weight = greedy_graph(g).selection.total_weight
    best = None
    for e in sigma:
        if e.src != ROOT:
            raise NotARootEdge(f"edge {e.id} does not leave the root")
        alt = best_incoming(g, e.dst, exclude_root=True)
        if alt is None:
            continue
        w = greedy_weight - e.weight + alt.weight
        if best is None or w > best.removal_weight:
            best = RootEdgeCandidate(e, e.dst, w)
    if best is None:
        raise NoFeasibleRemoval("every root child depends on the root alone")
    return best


def decode_dependency_tree(g: Graph, trace: Optional[DecodeTrace] = None) -> EdgeSelection:
    """Best arborescence of ``g`` with exactly one edge leaving the root.

    Same ``O(n^2)`` bound as :func:`decode_mwa`.

    Raises:
        NoArborescence: some node cannot be reached from the root.
        NoDependencyTree: every arborescence needs two or more root edges.
    """
    return selection_from_positions(g, decode_positions(g, True, trace))


def root_edge_count(sel: EdgeSelection) -> int:
    ids = np.fromiter(sel.chosen.values(), dtype=np.int64)
    return int(np.count_nonzero(sel.graph.src[sel.graph.positions(ids)] == ROOT))
