"""Rooted weighted directed multigraphs and the tree predicates over them.

Node 0 is always the root.  Non-root nodes are numbered ``1..n``.  Edge ids
are stable integers; graphs built with :func:`build_graph` number their edges
in input order starting at 0, derived graphs (views, snapshots) keep the ids
of the edges they were derived from.  Ids are strictly increasing along the
internal edge arrays, which lets "lowest id wins" tie-breaking reduce to
"lowest position wins".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    EdgeIntoRoot,
    GraphError,
    NodeOutOfRange,
    NonFiniteWeight,
    RootHasNoIncoming,
    SelfLoop,
    UnknownEdgeId,
)

ROOT = 0


class Edge(NamedTuple):
    id: int
    src: int
    dst: int
    weight: float
    label: Optional[str] = None


class Graph:
    """Immutable rooted weighted directed multigraph over nodes ``0..n``.

    Edges live in parallel numpy arrays (``src``, ``dst``, ``weight``,
    ``ids``), so graphs with millions of edges stay cheap to build and to
    hand to the dense decoder.  Use :func:`build_graph` for small graphs
    given as tuples and :meth:`Graph.from_arrays` for generated ones.
    """

    root = ROOT

    def __init__(self, n, src, dst, weight, ids=None, labels=None):
        n = int(n)
        if n < 1:
            raise GraphError(f"need at least one non-root node, got n={n}")
        src = np.asarray(src, dtype=np.int64).reshape(-1)
        dst = np.asarray(dst, dtype=np.int64).reshape(-1)
        weight = np.asarray(weight, dtype=np.float64).reshape(-1)
        m = len(src)
        if len(dst) != m or len(weight) != m:
            raise GraphError("src, dst and weight must have equal length")
        if ids is None:
            ids = np.arange(m, dtype=np.int64)
        else:
            ids = np.asarray(ids, dtype=np.int64).reshape(-1)
            if len(ids) != m:
                raise GraphError("ids must match the number of edges")
            if m > 1 and np.any(np.diff(ids) <= 0):
                raise GraphError("edge ids must be strictly increasing")
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != m:
                raise GraphError("labels must match the number of edges")
            if all(lab is None for lab in labels):
                labels = None

        if m:
            bad = (src < 0) | (src > n) | (dst < 0) | (dst > n)
            if bad.any():
                k = int(np.flatnonzero(bad)[0])
                raise NodeOutOfRange(
                    f"edge {int(ids[k])} ({int(src[k])}->{int(dst[k])}) "
                    f"has an endpoint outside 0..{n}")
            into_root = dst == ROOT
            if into_root.any():
                k = int(np.flatnonzero(into_root)[0])
                raise EdgeIntoRoot(f"edge {int(ids[k])} points into the root")
            loops = src == dst
            if loops.any():
                k = int(np.flatnonzero(loops)[0])
                raise SelfLoop(f"edge {int(ids[k])} is a self-loop at node {int(src[k])}")
            finite = np.isfinite(weight)
            if not finite.all():
                k = int(np.flatnonzero(~finite)[0])
                raise NonFiniteWeight(f"edge {int(ids[k])} has weight {weight[k]}")

        for arr in (src, dst, weight, ids):
            arr.setflags(write=False)
        self.n = n
        self.src = src
        self.dst = dst
        self.weight = weight
        self.ids = ids
        self.labels = labels

    @classmethod
    def from_arrays(cls, n, src, dst, weight, ids=None, labels=None):
        return cls(n, src, dst, weight, ids=ids, labels=labels)

    @property
    def node_count(self):
        """Number of nodes including the root (``n + 1``)."""
        return self.n + 1

    @property
    def num_edges(self):
        return len(self.src)

    def __len__(self):
        return len(self.src)

    def __repr__(self):
        return f"Graph(n={self.n}, edges={len(self.src)})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.src, other.src)
                and np.array_equal(self.dst, other.dst)
                and np.array_equal(self.weight, other.weight)
                and np.array_equal(self.ids, other.ids)
                and self.label_list() == other.label_list())

    __hash__ = None

    def label_list(self):
        if self.labels is None:
            return [None] * len(self.src)
        return list(self.labels)

    def _edge_at(self, k) -> Edge:
        label = None if self.labels is None else self.labels[k]
        return Edge(int(self.ids[k]), int(self.src[k]), int(self.dst[k]),
                    float(self.weight[k]), label)

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self._edge_at(k) for k in range(len(self.src)))

    def positions(self, edge_ids) -> np.ndarray:
        """Array positions of the given edge ids; raises on unknown ids."""
        if not isinstance(edge_ids, np.ndarray):
            edge_ids = np.fromiter(edge_ids, dtype=np.int64)
        edge_ids = edge_ids.astype(np.int64, copy=False).reshape(-1)
        pos = np.searchsorted(self.ids, edge_ids)
        ok = pos < len(self.ids)
        ok[ok] = self.ids[pos[ok]] == edge_ids[ok]
        if not ok.all():
            bad = int(edge_ids[np.flatnonzero(~ok)[0]])
            raise UnknownEdgeId(bad)
        return pos

    def edge(self, edge_id) -> Edge:
        return self._edge_at(int(self.positions([edge_id])[0]))

    @cached_property
    def _incoming_index(self):
        order = np.argsort(self.dst, kind="stable")
        bounds = np.searchsorted(self.dst[order], np.arange(self.n + 2))
        return order, bounds

    def incoming_positions(self, j) -> np.ndarray:
        order, bounds = self._incoming_index
        return order[bounds[j]:bounds[j + 1]]

    def incoming(self, j) -> list[Edge]:
        """Incoming edges of ``j`` in id order."""
        return [self._edge_at(int(k)) for k in self.incoming_positions(j)]

    def root_edges(self) -> list[Edge]:
        return [self._edge_at(int(k)) for k in np.flatnonzero(self.src == ROOT)]


def build_graph(n, edges: Iterable[Sequence]) -> Graph:
    """Build a graph over nodes ``0..n`` from ``(src, dst, weight[, label])``
    tuples.  Edge ids follow input order, starting at 0."""
    src, dst, weight, labels = [], [], [], []
    for e in edges:
        if len(e) not in (3, 4):
            raise GraphError(f"edge must be (src, dst, weight[, label]), got {e!r}")
        src.append(int(e[0]))
        dst.append(int(e[1]))
        weight.append(float(e[2]))
        labels.append(e[3] if len(e) == 4 else None)
    return Graph(n, src, dst, weight, labels=labels)


def worked_example() -> Graph:
    """The small five-node graph used throughout the docs and tests.

    Its greedy graph holds the cycle 2->4->3->2.  The best arborescence
    weighs 260 and uses two root edges; the best dependency tree weighs 210.
    """
    return build_graph(4, [
        (0, 1, 90), (0, 2, 40), (1, 3, 10), (2, 4, 60),
        (2, 3, 30), (3, 2, 50), (4, 3, 70), (4, 1, 20),
    ])


def total_weight(g: Graph, sel: Iterable[int]) -> float:
    """Sum of the weights of the selected edges (0 for an empty selection)."""
    pos = g.positions(sel)
    return math.fsum(g.weight[pos].tolist())


def _heads_of(g: Graph, pos: np.ndarray):
    """Head array for a selection, or None if it breaks C1."""
    if len(pos) != g.n:
        return None
    heads = np.full(g.n + 1, -1, dtype=np.int64)
    dst = g.dst[pos]
    if len(np.unique(dst)) != g.n:
        return None
    heads[dst] = g.src[pos]
    return heads


def heads_reach_root(heads: Sequence[int]) -> bool:
    """True iff following ``heads`` from every node ends at the root.

    ``heads[0]`` is ignored; entries must lie in ``0..n``.
    """
    n = len(heads) - 1
    state = [0] * (n + 1)  # 0 unknown, 1 on current path, 2 reaches root
    state[ROOT] = 2
    for start in range(1, n + 1):
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = heads[v]
            if v < 0 or v > n:
                return False
        if state[v] == 1:
            return False
        for u in path:
            state[u] = 2
    return True


def is_arborescence(g: Graph, sel: Iterable[int]) -> bool:
    pos = g.positions(sel)
    heads = _heads_of(g, pos)
    if heads is None:
        return False
    return heads_reach_root(heads.tolist())


def is_dependency_tree(g: Graph, sel: Iterable[int]) -> bool:
    pos = g.positions(sel)
    if int(np.count_nonzero(g.src[pos] == ROOT)) != 1:
        return False
    heads = _heads_of(g, pos)
    return heads is not None and heads_reach_root(heads.tolist())


def best_incoming(g: Graph, j, exclude_root=False) -> Optional[Edge]:
    """Max-weight incoming edge of ``j``; ties go to the lowest id.

    With ``exclude_root`` only edges leaving a non-root node count.  Returns
    None when no candidate exists.
    """
    if j == ROOT:
        raise RootHasNoIncoming("the root has no incoming edges")
    if not 0 < j <= g.n:
        raise RootHasNoIncoming(f"node {j} is not a non-root node of the graph")
    pos = g.incoming_positions(j)
    if exclude_root:
        pos = pos[g.src[pos] != ROOT]
    if len(pos) == 0:
        return None
    w = g.weight[pos]
    # pos is id-ordered, so argmax's first-hit rule is the lowest-id rule
    return g._edge_at(int(pos[int(np.argmax(w))]))


@dataclass(frozen=True)
class EdgeSelection:
    """One chosen incoming edge (by id) per non-root node of ``graph``."""

    graph: Graph
    chosen: Mapping[int, int]

    @property
    def edge_ids(self) -> list[int]:
        return sorted(self.chosen.values())

    @property
    def total_weight(self) -> float:
        return total_weight(self.graph, self.chosen.values())

    @property
    def is_total(self) -> bool:
        return len(self.chosen) == self.graph.n

    def edges(self) -> list[Edge]:
        return [self.graph.edge(self.chosen[v]) for v in sorted(self.chosen)]

    def heads(self) -> list[int]:
        """Head of each token ``1..n`` as a list indexed from 0 (token 1)."""
        out = []
        for v in range(1, self.graph.n + 1):
            out.append(self.graph.edge(self.chosen[v]).src if v in self.chosen else -1)
        return out

    def root_edges(self) -> list[Edge]:
        return [e for e in self.edges() if e.src == ROOT]

    def is_arborescence(self) -> bool:
        return is_arborescence(self.graph, self.chosen.values())

    def is_dependency_tree(self) -> bool:
        return is_dependency_tree(self.graph, self.chosen.values())
