"""Seeded random graphs for fuzzing and benchmarks."""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .graph import Graph

DENSITIES = (0.4, 0.7, 1.0)


def all_pairs(n):
    """Every candidate edge over ``0..n``: sources ``0..n``, targets ``1..n``,
    no self-loops, in (src, dst) order."""
    src = np.repeat(np.arange(n + 1), n)
    dst = np.tile(np.arange(1, n + 1), n + 1)
    keep = src != dst
    return src[keep], dst[keep]


def random_multigraph(rng: np.random.Generator, n, density, low=-9, high=9,
                      parallel=False) -> Graph:
    """Integer weights uniform in ``[low, high]``.  Each candidate edge is kept
    with probability ``density``; with ``parallel`` every kept edge gets one
    to two extra copies with probability 0.3, each with its own weight."""
    src, dst = all_pairs(n)
    keep = rng.random(len(src)) < density
    src, dst = src[keep], dst[keep]
    if parallel and len(src):
        copies = np.where(rng.random(len(src)) < 0.3, rng.integers(1, 3, len(src)), 0)
        src = np.repeat(src, copies + 1)
        dst = np.repeat(dst, copies + 1)
    weight = rng.integers(low, high + 1, len(src)).astype(np.float64)
    return Graph(n, src, dst, weight)


def fuzz_corpus(seed, count, min_n=2, max_n=7, parallel_share=0.1) -> Iterator[Graph]:
    """The oracle fuzz corpus: ``n`` uniform in ``[min_n, max_n]``, densities
    cycling through 0.4/0.7/1.0, a ``parallel_share`` of graphs with parallel
    edges."""
    rng = np.random.default_rng(seed)
    for k in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        parallel = bool(rng.random() < parallel_share)
        yield random_multigraph(rng, n, DENSITIES[k % len(DENSITIES)], parallel=parallel)


def dense_graph(rng: np.random.Generator, n, density=1.0) -> Graph:
    """Weights uniform in ``[0, 1)``; each candidate edge kept with
    probability ``density``."""
    src, dst = all_pairs(n)
    if density < 1.0:
        keep = rng.random(len(src)) < density
        src, dst = src[keep], dst[keep]
    return Graph(n, src, dst, rng.random(len(src)))
