"""Dense contraction engine behind :func:`decode_mwa` and
:func:`decode_dependency_tree`.

Scores live in an incoming-major ``(n+1, n+1)`` matrix ``M``: ``M[j, i]`` is
the best edge from original node ``i`` into slot ``j`` (``-inf`` when absent)
and ``P[j, i]`` is the position of the original edge that cell stands for.
Parallel edges collapse to their best member up front.  Sources are never
merged; ``label[i]`` names the slot that currently holds node ``i``.
Contracting a cycle overwrites the row of its smallest slot with, per source,
the best enter edge reweighted by the cost of breaking the cycle where it
lands.  Exit edges need no work: the rows of the other slots already hold
them under their original sources.  A contraction reads ``|C|`` contiguous
rows, so the whole decode is ``O(n^2)`` without any sorting.

Node membership is kept as a contraction forest (each contracted slot points
at the supernode that absorbed it).  Expansion walks the forest top-down, so
the per-layer membership must survive, which rules out path compression.
"""

from __future__ import annotations

import numba
import numpy as np

from .errors import NoArborescence, NoFeasibleRemoval
from .graph import ROOT, Graph
from .greedy import Cycle
from .trace import (
    BaseCaseEvent,
    ContractionEvent,
    DecodeTrace,
    RemovalEvent,
    RootEdgeCandidate,
)

NEG = -np.inf


def dense_scores(g: Graph):
    """Incoming-major score matrix and edge-position matrix of ``g``.

    Among parallel edges the heaviest wins, then the lowest id.
    """
    N = g.n + 1
    m = len(g)
    dtype = np.int32 if m < np.iinfo(np.int32).max else np.int64
    M = np.full((N, N), NEG)
    P = np.full((N, N), np.iinfo(dtype).max, dtype=dtype)
    if m == 0:
        return M, P
    key = g.dst * N + g.src
    pos = np.arange(m, dtype=dtype)
    Mf, Pf = M.reshape(-1), P.reshape(-1)
    Pf[key] = pos
    if not np.array_equal(Pf[key], pos):
        # parallel edges: keep the heaviest, then the lowest position
        order = np.lexsort((pos, -g.weight, key))
        ks = key[order]
        first = np.ones(m, dtype=bool)
        first[1:] = ks[1:] != ks[:-1]
        pos = order[first].astype(dtype)
        key = key[pos]
        Pf[key] = pos
    Mf[key] = g.weight[pos]
    return M, P


def _argbest_rows(values, ids):
    """Per row, the column of the max (lowest id among ties) and the max.

    Rows that are entirely ``-inf`` return an arbitrary column.
    """
    pick = values.argmax(axis=1)
    best = values[np.arange(len(values)), pick]
    hits = np.count_nonzero(values == best[:, None])
    # without ties a finite row hits once and an all -inf row hits everywhere
    empty = np.count_nonzero(best == NEG)
    if hits != len(best) + (values.shape[1] - 1) * empty:
        ties = values == best[:, None]
        pick = np.where(ties, ids, np.iinfo(ids.dtype).max).argmin(axis=1)
    return pick, best


@numba.njit(cache=True)
def _row_best(values, ids, start):
    """Index of the max of ``values[start:]`` (lowest id among ties) and the
    max; index ``-1`` when every entry is ``-inf``."""
    k, bw, be = -1, -np.inf, np.iinfo(ids.dtype).max
    for i in range(start, len(values)):
        w = values[i]
        if w == -np.inf:
            continue
        if w > bw or (w == bw and ids[i] < be):
            k, bw, be = i, w, ids[i]
    return k, bw


@numba.njit(cache=True)
def _fold(M, P, label, Cs, Hs, r):
    """Merge cycle slots ``Cs`` into slot ``r``; ``Hs[a] -> Cs[a]`` are the
    cycle edges, given by original source.

    Row ``r`` gets, per source outside the cycle, the best enter edge plus
    the cost of breaking the cycle where it lands.  Ties go to the lowest
    edge position.  Returns the positions of the cycle edges.
    """
    N = M.shape[0]
    k = len(Cs)
    in_w = np.empty(k)
    in_e = np.empty(k, dtype=np.int64)
    for a in range(k):
        in_w[a] = M[Cs[a], Hs[a]]
        in_e[a] = P[Cs[a], Hs[a]]
    rest = in_w.sum() - in_w
    on = np.zeros(N, dtype=np.bool_)
    for a in range(k):
        on[Cs[a]] = True

    row_w = np.full(N, -np.inf)
    row_e = np.full(N, np.iinfo(P.dtype).max, dtype=P.dtype)
    for a in range(k):
        c = Cs[a]
        for i in range(N):
            w = M[c, i]
            if w == -np.inf:
                continue
            w = w + rest[a]
            e = P[c, i]
            if w > row_w[i] or (w == row_w[i] and e < row_e[i]):
                row_w[i] = w
                row_e[i] = e
    for i in range(N):
        if on[label[i]]:
            row_w[i] = -np.inf
            label[i] = r
    M[r, :] = row_w
    P[r, :] = row_e
    return in_e


@numba.njit(cache=True)
def _contract_slots(M, P, label, alive, forest, Cs, Hs):
    """Fold ``Cs`` into its smallest slot and record the new supernode in
    the contraction forest.  Returns the representative slot."""
    slot_node, parent, internal, layers, counts = forest
    r = Cs.min()
    in_e = _fold(M, P, label, Cs, Hs, r)
    F = counts[0]
    counts[0] += 1
    for a in range(len(Cs)):
        node = slot_node[Cs[a]]
        parent[node] = F
        internal[node] = in_e[a]
        alive[Cs[a]] = False
    layers[counts[1]] = F
    counts[1] += 1
    alive[r] = True
    slot_node[r] = F
    return r


@numba.njit(cache=True)
def _break_cycles(M, P, label, alive, forest, head, log_nodes, log_ptr):
    """Contract critical cycles until the greedy graph is acyclic.

    Walks head pointers from every live node; a walk that meets itself has
    found a cycle, which is contracted on the spot, and the walk resumes
    from the new supernode.  Each cycle is appended to the log.  Returns
    False when some supernode has no incoming edge left.
    """
    N = M.shape[0]
    state = np.zeros(N, dtype=np.int8)  # 0 unseen, 1 on current walk, 2 reaches root
    state[0] = 2
    where = np.zeros(N, dtype=np.int64)
    path = np.empty(N, dtype=np.int64)
    nlog = 0
    for start in range(1, N):
        if state[start] != 0 or not alive[start]:
            continue
        path[0] = start
        where[start] = 0
        plen = 1
        state[start] = 1
        v = start
        while True:
            u = label[head[v]]
            if state[u] == 2:
                break
            if state[u] == 0:
                state[u] = 1
                where[u] = plen
                path[plen] = u
                plen += 1
                v = u
                continue
            k = where[u]
            Cs = path[k:plen].copy()
            plen = k
            lo = log_ptr[nlog]
            log_nodes[lo:lo + len(Cs)] = Cs
            log_nodes[lo + len(Cs):lo + 2 * len(Cs)] = head[Cs]
            log_ptr[nlog + 1] = lo + 2 * len(Cs)
            nlog += 1
            r = _contract_slots(M, P, label, alive, forest, Cs, head[Cs])
            i, _ = _row_best(M[r], P[r], 0)
            if i < 0:
                return False
            head[r] = i
            state[r] = 1
            where[r] = plen
            path[plen] = r
            plen += 1
            v = r
        for x in path[:plen]:
            state[x] = 2
    return True


@numba.njit(cache=True)
def _unfold(parent, internal, layers, dst, incoming):
    """Expand contractions top-down, filling ``incoming`` for every forest
    node: the edge into a supernode enters one member, the others keep
    their cycle edge."""
    F = len(parent)
    order = np.argsort(parent, kind="mergesort")
    start = np.searchsorted(parent[order], np.arange(F + 1))
    for f in layers:
        e = incoming[f]
        v = dst[e]
        while parent[v] != f:
            v = parent[v]
        for k in range(start[f], start[f + 1]):
            m = order[k]
            incoming[m] = e if m == v else internal[m]


class DenseDecoder:
    """One decode; mutates the ``M`` and ``P`` it is given."""

    def __init__(self, g: Graph, M, P, trace: DecodeTrace | None = None):
        self.g = g
        self.M = M
        self.P = P
        N = M.shape[0]
        self.N = N
        self.label = np.arange(N)
        self.alive = np.ones(N, dtype=bool)
        # contraction forest: leaves 0..N-1 are the original nodes
        self.slot_node = np.arange(N)  # forest node held by each slot
        self.parent = np.full(2 * N, -1, dtype=np.int64)
        self.internal = np.full(2 * N, -1, dtype=np.int64)  # edge position on the parent's cycle
        self.layers = np.full(N, -1, dtype=np.int64)  # supernodes in creation order
        self.counts = np.array([N, 0], dtype=np.int64)  # forest size, layers used
        # per live slot, the original source node of its chosen incoming edge
        self.head = None
        self.nr_src = None
        self.nr_w = None
        self.trace = trace
        self.snap = trace is not None and trace.snapshots

    @property
    def forest(self):
        return self.slot_node, self.parent, self.internal, self.layers, self.counts

    # -- greedy graph ------------------------------------------------------

    def _init_greedy(self):
        head, best = _argbest_rows(self.M, self.P)
        missing = np.flatnonzero(best[1:] == NEG)
        if len(missing):
            raise NoArborescence(f"node {int(missing[0]) + 1} has no incoming edge")
        head[ROOT] = -1
        self.head = head

    def _contract(self, cyc, heads, phase):
        """Fold slots ``cyc``; ``heads[k]`` is the source node of the cycle
        edge into ``cyc[k]``.  Returns the representative slot."""
        Cs = np.asarray(cyc, dtype=np.int64)
        Hs = np.asarray(heads, dtype=np.int64)
        if self.snap:
            self._record_contraction(phase, Cs, Hs)
        elif self.trace is not None:
            self.trace.record(ContractionEvent(phase, len(Cs)))
        return int(_contract_slots(self.M, self.P, self.label, self.alive, self.forest, Cs, Hs))

    def _break_cycles(self):
        base = (self.M.copy(), self.P.copy()) if self.snap else None
        log_nodes = np.empty(4 * self.N, dtype=np.int64)
        log_ptr = np.zeros(self.N + 1, dtype=np.int64)
        ok = _break_cycles(self.M, self.P, self.label, self.alive, self.forest,
                           self.head, log_nodes, log_ptr)
        if self.trace is not None:
            self._record_log(log_nodes, log_ptr, base)
        if not ok:
            raise NoArborescence("a contracted cycle cannot be reached from the root")

    # -- root constraint --------------------------------------------------

    def _init_non_root(self):
        pick, best = _argbest_rows(self.M[:, 1:], self.P[:, 1:])
        nr = pick + 1
        nr[best == NEG] = -1
        nr[ROOT] = -1
        self.nr_src = nr
        self.nr_w = best

    def _greedy_total(self):
        slots = np.flatnonzero(self.alive)[1:]
        return float(self.M[slots, self.head[slots]].sum())

    def _constrain(self):
        M, P, label = self.M, self.P, self.label
        head = self.head
        self._init_non_root()
        total = self._greedy_total()
        while True:
            kids = np.flatnonzero((head == ROOT) & self.alive)
            if len(kids) <= 1:
                return
            alt = self.nr_w[kids]
            feasible = alt != NEG
            if not feasible.any():
                raise NoFeasibleRemoval(
                    "every root child depends on the root alone; no dependency tree exists")
            wbar = np.full(len(kids), NEG)
            wbar[feasible] = total - M[kids[feasible], ROOT] + alt[feasible]
            ties = feasible & (wbar == wbar[feasible].max())
            pick = int(np.flatnonzero(ties)[np.argmin(P[kids[ties], ROOT])])
            t = int(kids[pick])
            src = int(self.nr_src[t])
            s = int(label[src])

            walk = []
            v = s
            while v != ROOT and v != t:
                walk.append(v)
                v = int(label[head[v]])
            case = "reduction" if v == t else "optimization"
            if self.trace is not None:
                self._record_removal(case, kids, feasible, wbar, pick, t, src, walk)

            if case == "optimization":
                total = float(wbar[pick])
                M[t, ROOT] = NEG
                head[t] = src
                continue

            # contract the graph before the deletion: t keeps its root edge,
            # but on the cycle t is entered by its best non-root edge
            cyc = [t] + walk
            cheads = [src] + head[walk].tolist()
            before = float(M[t, ROOT]) + float(M[walk, head[walk]].sum())
            r = self._contract(cyc, cheads, "reduction")
            # the reweighted root edge is a best edge into the supernode
            head[r] = ROOT
            total = total - before + float(M[r, ROOT])
            i, nbest = _row_best(M[r], P[r], 1)
            self.nr_src[r] = i
            self.nr_w[r] = nbest

    # -- expansion ----------------------------------------------------------

    def _expand(self):
        F, L = self.counts
        slots = np.flatnonzero(self.alive)[1:]
        incoming = np.full(F, -1, dtype=np.int64)
        incoming[self.slot_node[slots]] = self.P[slots, self.head[slots]]
        _unfold(self.parent[:F], self.internal[:F], self.layers[:L][::-1].copy(),
                self.g.dst, incoming)
        return incoming[1:self.g.n + 1]

    def solve(self, constrained=False, head=None):
        """Positions of the chosen incoming edge of nodes ``1..n``.

        ``head`` may supply the greedy picks (source node per node) when the
        caller already has them.
        """
        if head is None:
            self._init_greedy()
        else:
            self.head = head
        self._break_cycles()
        if self.trace is not None:
            self.trace.record(BaseCaseEvent(self._snapshot()[0] if self.snap else None))
        if constrained:
            self._constrain()
        return self._expand()

    # -- tracing ------------------------------------------------------------

    def _snapshot(self):
        """The current contracted graph, one edge per live (source, target)
        slot pair, with the ids of the original edges behind them."""
        slots = np.flatnonzero(self.alive)
        index = {int(s): k for k, s in enumerate(slots)}
        rows_w = self.M[slots]
        rows_p = self.P[slots]
        src, dst, weight, pos = [], [], [], []
        for s in slots.tolist():
            cols = np.flatnonzero(self.label == s)
            pick, best = _argbest_rows(rows_w[:, cols], rows_p[:, cols])
            hit = np.flatnonzero(best != NEG)
            src.extend([index[s]] * len(hit))
            dst.extend(hit.tolist())
            weight.extend(best[hit].tolist())
            pos.extend(rows_p[hit, cols[pick[hit]]].tolist())
        pos = np.array(pos, dtype=np.int64)
        order = np.argsort(pos, kind="stable")
        graph = Graph(len(slots) - 1, np.array(src, dtype=np.int64)[order],
                      np.array(dst, dtype=np.int64)[order], np.array(weight)[order],
                      ids=self.g.ids[pos[order]])
        return graph, index

    def _snapshot_cycle(self, graph, index, Cs, Hs):
        ids = self.g.ids[self.P[Cs, Hs]]
        internal = {index[int(c)]: graph.edge(int(i)) for c, i in zip(Cs, ids)}
        succ = {e.src: v for v, e in internal.items()}
        nodes = [min(internal)]
        while len(nodes) < len(internal):
            nodes.append(succ[nodes[-1]])
        return Cycle(tuple(nodes), internal)

    def _record_log(self, log_nodes, log_ptr, base):
        """Trace the contractions of the cycle-breaking pass.  Snapshots
        replay the logged cycles on a copy of the starting matrices."""
        cycles = []
        for k in range(self.N):
            lo, hi = log_ptr[k], log_ptr[k + 1]
            if hi <= lo:
                break
            half = (hi - lo) // 2
            cycles.append((log_nodes[lo:lo + half], log_nodes[lo + half:hi]))
        if base is None:
            for Cs, _ in cycles:
                self.trace.record(ContractionEvent("opt", len(Cs)))
            return
        replay = DenseDecoder(self.g, base[0], base[1], self.trace)
        for Cs, Hs in cycles:
            replay._contract(Cs, Hs, "opt")

    def _record_contraction(self, phase, Cs, Hs):
        graph, index = self._snapshot()
        cycle = self._snapshot_cycle(graph, index, Cs, Hs)
        self.trace.record(ContractionEvent(phase, len(Cs), graph, cycle))

    def _record_removal(self, case, kids, feasible, wbar, pick, t, src, walk):
        ids = self.g.ids
        graph, index = self._snapshot() if self.snap else (None, None)

        def cand(k):
            slot = int(kids[k])
            eid = int(ids[self.P[slot, ROOT]])
            if graph is not None:
                return RootEdgeCandidate(graph.edge(eid), index[slot], float(wbar[k]))
            edge = self.g.edge(eid)._replace(dst=slot, weight=float(self.M[slot, ROOT]))
            return RootEdgeCandidate(edge, slot, float(wbar[k]))

        cands = tuple(cand(k) for k in range(len(kids)) if feasible[k])
        cycle = None
        if case == "reduction" and graph is not None:
            Cs = np.asarray([t] + walk)
            Hs = np.asarray([src] + self.head[walk].tolist())
            cycle = self._snapshot_cycle(graph, index, Cs, Hs)
        self.trace.record(RemovalEvent(case, cands, cand(pick), graph, cycle))


def decode_positions(g: Graph, constrained=False, trace=None):
    """Run one decode of ``g``."""
    M, P = dense_scores(g)
    return DenseDecoder(g, M, P, trace).solve(constrained)


def single_child_decoder(g: Graph):
    """Decode ``g`` once per allowed root child, sharing the setup.

    Returns ``(M, decode)`` where ``decode(j)`` gives the edge positions of
    the best arborescence whose only root edge enters ``j`` and raises
    ``NoArborescence`` when there is none.  The score matrix and the best
    non-root edge into every node are computed once; each call still does
    its own contraction pass on a fresh copy.
    """
    M, P = dense_scores(g)
    nr_pick, nr_w = _argbest_rows(M[:, 1:], P[:, 1:])
    nr_src = nr_pick + 1
    headless = np.flatnonzero(nr_w[1:] == NEG) + 1
    root_w = M[:, ROOT].copy()
    root_e = P[:, ROOT].copy()
    nr_e = P[np.arange(len(nr_src)), nr_src]

    def decode(j):
        if root_w[j] == NEG:
            raise NoArborescence(f"no root edge enters {j}")
        if len(headless) > 1 or (len(headless) == 1 and headless[0] != j):
            raise NoArborescence("a node besides the root child has no incoming edge")
        head = nr_src.copy()
        head[ROOT] = -1
        if root_w[j] > nr_w[j] or (root_w[j] == nr_w[j] and root_e[j] < nr_e[j]):
            head[j] = ROOT
        Mj = M.copy()
        Mj[:, ROOT] = NEG
        Mj[j, ROOT] = root_w[j]
        return DenseDecoder(g, Mj, P.copy()).solve(False, head=head)

    return M, decode
