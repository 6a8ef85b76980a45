"""Independent references for the decoders.

* :func:`enumerate_trees` lists every tree by brute force over head
  assignments (parallel edges count as distinct choices).
* :func:`best_tree_weight` is the same exhaustive search, vectorised with a
  precomputed table of every rooted spanning tree of the complete graph.
  It is what the large fuzz runs use.
* :func:`n_run_baseline` solves the single-root problem the slow way: one
  unconstrained decode per possible root child.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Optional

import numpy as np

from ._dense import dense_scores, single_child_decoder
from .arborescence import selection_from_positions
from .errors import NoArborescence, NoDependencyTree, TooLarge
from .graph import ROOT, EdgeSelection, Graph, heads_reach_root

DEFAULT_MAX_N = 8
_CACHED_N = 7  # larger tables are scored chunk by chunk instead of cached flat


def enumerate_trees(g: Graph, constrained=False, max_n=DEFAULT_MAX_N):
    """Every arborescence of ``g`` (or every dependency tree when
    ``constrained``) as ``(frozenset of edge ids, weight)`` pairs."""
    if g.n > max_n:
        raise TooLarge(f"graph has {g.n} non-root nodes, limit is {max_n}")
    choices = [g.incoming(v) for v in range(1, g.n + 1)]
    out = []
    for combo in itertools.product(*choices):
        heads = [ROOT] + [e.src for e in combo]
        if constrained and heads.count(ROOT) != 2:  # heads[0] is a placeholder
            continue
        if not heads_reach_root(heads):
            continue
        out.append((frozenset(e.id for e in combo), math.fsum(e.weight for e in combo)))
    return out


@lru_cache(maxsize=None)
def tree_table(n) -> np.ndarray:
    """All rooted spanning trees of the complete digraph on ``0..n``.

    Row ``k`` holds the heads of nodes ``1..n``; there are ``(n+1)**(n-1)``
    rows.
    """
    if n < 1:
        raise ValueError("n must be positive")
    # node v picks from the n candidates {0..n} minus itself
    cand = np.array([[h for h in range(n + 1) if h != v] for v in range(1, n + 1)],
                    dtype=np.int8)
    steps = max(1, math.ceil(math.log2(n)) + 1)
    pieces = []
    lead = min(n, 2)  # enumerate the first `lead` nodes' heads in the outer loop
    for prefix in itertools.product(range(n), repeat=lead):
        rest = n - lead
        if rest:
            grid = np.indices((n,) * rest, dtype=np.int8).reshape(rest, -1).T
        else:
            grid = np.zeros((1, 0), dtype=np.int8)
        picks = np.empty((len(grid), n), dtype=np.int8)
        picks[:, :lead] = prefix
        picks[:, lead:] = grid
        heads = cand[np.arange(n), picks]
        parent = np.zeros((len(heads), n + 1), dtype=np.int8)
        parent[:, 1:] = heads
        anc = parent
        for _ in range(steps):
            anc = np.take_along_axis(anc, anc.astype(np.intp), axis=1)
        ok = (anc[:, 1:] == 0).all(axis=1)
        pieces.append(heads[ok])
    table = np.concatenate(pieces)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _flat_table(n):
    """Flat indices into an incoming-major ``(n+1, n+1)`` score matrix, one
    row per tree, and the mask of single-root trees."""
    table = tree_table(n).astype(np.intp)
    flat = np.arange(1, n + 1) * (n + 1) + table
    single = np.count_nonzero(table == 0, axis=1) == 1
    flat.setflags(write=False)
    single.setflags(write=False)
    return flat, single


def best_tree_weights(g: Graph, max_n=DEFAULT_MAX_N, chunk=1 << 18):
    """``(best arborescence weight, best dependency tree weight)`` with None
    where no such tree exists.  Exhaustive over every spanning tree of the
    complete graph; missing edges score ``-inf``."""
    if g.n > max_n:
        raise TooLarge(f"graph has {g.n} non-root nodes, limit is {max_n}")
    M, _ = dense_scores(g)
    Mf = M.ravel()
    n = g.n
    best_arb = best_dep = -np.inf
    if n <= _CACHED_N:
        flat, single = _flat_table(n)
    else:
        table = tree_table(n)
        offset = np.arange(1, n + 1, dtype=np.intp) * (n + 1)
    rows = len(tree_table(n))
    for lo in range(0, rows, chunk):
        if n <= _CACHED_N:
            f, one = flat[lo:lo + chunk], single[lo:lo + chunk]
        else:
            part = table[lo:lo + chunk]
            f = offset + part
            one = np.count_nonzero(part == 0, axis=1) == 1
        w = Mf[f].sum(axis=1)
        best_arb = max(best_arb, float(w.max()))
        dep = w[one]
        if len(dep):
            best_dep = max(best_dep, float(dep.max()))
    return (None if np.isneginf(best_arb) else best_arb,
            None if np.isneginf(best_dep) else best_dep)


def best_tree_weight(g: Graph, constrained=False, max_n=DEFAULT_MAX_N) -> Optional[float]:
    """Weight of the best arborescence (or dependency tree), None if none
    exists."""
    return best_tree_weights(g, max_n)[1 if constrained else 0]


def n_run_baseline(g: Graph) -> EdgeSelection:
    """Best dependency tree via one unconstrained decode per root child.

    For every node with an edge from the root, all other root edges are
    dropped and the best arborescence of what remains is found.  The best of
    those runs wins; ties go to the lowest child.
    """
    M, decode = single_child_decoder(g)
    children = np.flatnonzero(~np.isneginf(M[:, ROOT]))
    best_w, best_pos = None, None
    for j in children.tolist():
        try:
            pos = decode(j)
        except NoArborescence:
            continue
        w = math.fsum(g.weight[pos].tolist())
        if best_w is None or w > best_w:
            best_w, best_pos = w, pos
    if best_pos is None:
        if not _reachable_from_root(M.T):
            raise NoArborescence("some node cannot be reached from the root")
        raise NoDependencyTree("no single root child reaches every node")
    return selection_from_positions(g, best_pos)


def _reachable_from_root(W) -> bool:
    adj = ~np.isneginf(W)
    seen = np.zeros(len(W), dtype=bool)
    seen[ROOT] = True
    frontier = np.array([ROOT])
    while len(frontier):
        nxt = adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = np.flatnonzero(nxt)
    return bool(seen.all())
