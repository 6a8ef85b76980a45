"""Cycle contraction, the bookkeeping map back to the original graph, and
stitching contracted trees back into trees of the original graph.

These functions materialise a new :class:`~spanroot.graph.Graph` for every
contraction.  They are the readable reference form of the operation and are
what the tests and trace checks use; the decoders run an equivalent in-place
contraction over a dense score matrix (see :mod:`spanroot._dense`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import MultipleEnterEdges, NoEnterEdge, NodeNotInCycle, NotACycle, UnknownEdgeId
from .graph import ROOT, Edge, Graph
from .greedy import Cycle


@dataclass(frozen=True)
class ContractionRecord:
    """How ``contract(original, cycle)`` relates to ``original``.

    pi:
        contracted edge id -> the original edge it stands for.
    enter_breaks:
        contracted enter-edge id -> the cycle node it enters (entrance site).
    node_map:
        contracted node -> original node; the supernode maps to -1.
    """

    original: Graph
    cycle: Cycle
    supernode: int
    pi: Mapping[int, Edge]
    enter_breaks: Mapping[int, int]
    node_map: tuple[int, ...]

    def kind(self, contracted_id) -> str:
        e = self.pi[contracted_id]
        src_in, dst_in = e.src in self.cycle, e.dst in self.cycle
        if dst_in:
            return "enter"
        return "exit" if src_in else "external"


@dataclass(frozen=True)
class ContractedGraph:
    graph: Graph
    record: ContractionRecord


def break_cycle(C: Cycle, j) -> set[int]:
    """Edge ids of the cycle with the edge pointing to ``j`` removed."""
    if j not in C:
        raise NodeNotInCycle(f"node {j} is not on cycle {C.nodes}")
    return {e.id for v, e in C.internal_edges.items() if v != j}


def broken_weight(C: Cycle, j) -> float:
    """Weight of the cycle once broken at ``j``."""
    if j not in C:
        raise NodeNotInCycle(f"node {j} is not on cycle {C.nodes}")
    return math.fsum(e.weight for v, e in C.internal_edges.items() if v != j)


def _check_cycle(g: Graph, C: Cycle):
    k = len(C.nodes)
    if k < 2 or set(C.nodes) != set(C.internal_edges) or ROOT in C:
        raise NotACycle(f"{C.nodes} is not a cycle over non-root nodes")
    for i, v in enumerate(C.nodes):
        e = C.internal_edges[v]
        try:
            if g.edge(e.id) != e:
                raise NotACycle(f"edge {e.id} differs from the graph's edge")
        except UnknownEdgeId:
            raise NotACycle(f"edge {e.id} is not in the graph") from None
        if e.dst != v or e.src != C.nodes[i - 1]:
            raise NotACycle(f"edge {e.src}->{e.dst} does not close {C.nodes}")


def contract(g: Graph, C: Cycle) -> ContractedGraph:
    """Replace cycle ``C`` by one supernode.

    Non-cycle nodes keep their relative order and are renumbered
    ``0..k-1``; the supernode gets id ``k``.  Edges keep their relative
    order, so contracted ids follow original ids.  An edge entering the
    cycle at ``j`` is reweighted by the weight of the cycle broken at ``j``;
    edges with both ends on the cycle are dropped.
    """
    _check_cycle(g, C)
    members = set(C.nodes)
    keep = [v for v in range(g.n + 1) if v not in members]
    relabel = {v: i for i, v in enumerate(keep)}
    c = len(keep)
    total = C.cycle_weight
    cost_to_go = {v: total - e.weight for v, e in C.internal_edges.items()}

    src, dst, weight, labels = [], [], [], []
    pi, enter_breaks = {}, {}
    for e in g.edges:
        s_in, d_in = e.src in members, e.dst in members
        if s_in and d_in:
            continue
        new_id = len(src)
        if d_in:
            src.append(relabel[e.src])
            dst.append(c)
            weight.append(e.weight + cost_to_go[e.dst])
            enter_breaks[new_id] = e.dst
        elif s_in:
            src.append(c)
            dst.append(relabel[e.dst])
            weight.append(e.weight)
        else:
            src.append(relabel[e.src])
            dst.append(relabel[e.dst])
            weight.append(e.weight)
        labels.append(e.label)
        pi[new_id] = e
    graph = Graph(c, src, dst, weight, labels=labels)
    record = ContractionRecord(g, C, c, pi, enter_breaks, tuple(keep) + (-1,))
    return ContractedGraph(graph, record)


def stitch(a_c: Iterable[int], rec: ContractionRecord) -> set[int]:
    """Expand a tree of the contracted graph into one of the original.

    The single edge entering the supernode fixes where the cycle breaks.
    The result weighs the same as ``a_c`` does in the contracted graph.
    """
    a_c = list(a_c)
    enters = [i for i in a_c if i in rec.enter_breaks]
    if not enters:
        raise NoEnterEdge("the contracted tree has no edge into the supernode")
    if len(enters) > 1:
        raise MultipleEnterEdges(f"{len(enters)} edges enter the supernode")
    j = rec.enter_breaks[enters[0]]
    try:
        mapped = {rec.pi[i].id for i in a_c}
    except KeyError as exc:
        raise UnknownEdgeId(exc.args[0]) from None
    return mapped | break_cycle(rec.cycle, j)


def decompose(a: Iterable[int], rec: ContractionRecord):
    """Split an original tree with exactly one edge entering the cycle into
    ``(contracted ids, in-cycle original ids, entrance site)``.

    Inverse of :func:`stitch` when the in-cycle part is the broken cycle.
    """
    back = {e.id: i for i, e in rec.pi.items()}
    g = rec.original
    contracted, inside, sites = [], [], []
    for eid in a:
        e = g.edge(eid)
        if e.src in rec.cycle and e.dst in rec.cycle:
            inside.append(eid)
            continue
        contracted.append(back[eid])
        if e.dst in rec.cycle:
            sites.append(e.dst)
    if len(sites) != 1:
        raise NoEnterEdge(f"expected one edge entering the cycle, found {len(sites)}")
    return sorted(contracted), sorted(inside), sites[0]
