"""The greedy graph (best incoming edge per node) and its critical cycles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional

import numpy as np

from .errors import NoIncomingEdge
from .graph import ROOT, Edge, EdgeSelection, Graph


@dataclass(frozen=True)
class Cycle:
    """A simple directed cycle ``nodes[0] -> nodes[1] -> ... -> nodes[0]``.

    ``nodes`` starts at the smallest member; ``internal_edges`` maps each
    member to its incoming edge on the cycle.
    """

    nodes: tuple[int, ...]
    internal_edges: Mapping[int, Edge]

    @property
    def cycle_weight(self) -> float:
        return math.fsum(e.weight for e in self.internal_edges.values())

    def __contains__(self, node):
        return node in self.internal_edges

    def __len__(self):
        return len(self.nodes)

    def edge_ids(self) -> set[int]:
        return {e.id for e in self.internal_edges.values()}


@dataclass(frozen=True)
class GreedyResult:
    selection: EdgeSelection
    cycle: Optional[Cycle]


def greedy_graph(g: Graph) -> GreedyResult:
    """Pick the best incoming edge of every non-root node (lowest id on ties),
    then look for a cycle among the picks."""
    if len(g) == 0:
        raise NoIncomingEdge(1)
    pos = np.arange(len(g))
    order = np.lexsort((pos, -g.weight, g.dst))
    dst_sorted = g.dst[order]
    first = np.ones(len(order), dtype=bool)
    first[1:] = dst_sorted[1:] != dst_sorted[:-1]
    best = order[first]
    covered = g.dst[best]
    if len(covered) != g.n:
        have = np.zeros(g.n + 1, dtype=bool)
        have[covered] = True
        missing = int(np.flatnonzero(~have[1:])[0]) + 1
        raise NoIncomingEdge(missing)
    chosen = {int(d): int(i) for d, i in zip(covered, g.ids[best])}
    sel = EdgeSelection(g, chosen)
    return GreedyResult(sel, find_cycle(sel))


def find_cycle(sel: EdgeSelection) -> Optional[Cycle]:
    """Return the cycle of ``sel`` with the smallest minimum node, or None.

    Every node has at most one chosen head, so the selection is a functional
    graph and one pass over head pointers finds all of its cycles.
    """
    g = sel.graph
    head: dict[int, Edge] = {v: g.edge(eid) for v, eid in sel.chosen.items()}
    state = {ROOT: 2}
    best = None
    for start in sorted(head):
        if start in state:
            continue
        walk = []
        v = start
        while v not in state:
            state[v] = 1
            walk.append(v)
            e = head.get(v)
            if e is None:
                break
            v = e.src
        else:
            if state[v] == 1:
                members = walk[walk.index(v):]
                if best is None or min(members) < min(best):
                    best = members
        for u in walk:
            state[u] = 2
    if best is None:
        return None
    # walking heads runs against edge direction
    forward = best[::-1]
    k = forward.index(min(forward))
    nodes = tuple(forward[k:] + forward[:k])
    return Cycle(nodes, {v: head[v] for v in nodes})

