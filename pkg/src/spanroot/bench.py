"""Wall-clock scaling of the decoders on dense random graphs."""

from __future__ import annotations

import csv
import io
import statistics
import time
from typing import Callable, Iterable, Optional

import numpy as np

from .arborescence import decode_mwa
from .constrained import decode_dependency_tree
from .generate import dense_graph
from .oracle import n_run_baseline

ALGORITHMS: dict[str, Callable] = {
    "decode_mwa": decode_mwa,
    "decode_dependency_tree": decode_dependency_tree,
    "n_run_baseline": n_run_baseline,
}


def ladder(min_n, max_n, factor=2) -> list[int]:
    """``min_n, factor*min_n, ...`` up to ``max_n`` (always included)."""
    if min_n < 2:
        raise ValueError("min-n must be at least 2")
    if max_n < min_n:
        raise ValueError("max-n must not be below min-n")
    sizes = []
    n = min_n
    while n < max_n:
        sizes.append(n)
        n *= factor
    sizes.append(max_n)
    return sizes


def run(min_n=100, max_n=1600, trials=5, seed=0, density=1.0,
        algorithms: Optional[Iterable[str]] = None, progress=None) -> list[tuple[int, str, float]]:
    """``(n, algorithm, median seconds)`` rows.

    Every trial draws a fresh graph; all algorithms time the same graph.
    Only the decode is timed, not the graph generation.
    """
    names = list(ALGORITHMS if algorithms is None else algorithms)
    rng = np.random.default_rng(seed)
    rows = []
    for n in ladder(min_n, max_n):
        times = {name: [] for name in names}
        for _ in range(trials):
            g = dense_graph(rng, n, density)
            for name in names:
                t0 = time.perf_counter()
                ALGORITHMS[name](g)
                times[name].append(time.perf_counter() - t0)
        for name in names:
            rows.append((n, name, statistics.median(times[name])))
            if progress is not None:
                progress(rows[-1])
    return rows


def to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "algorithm", "median_seconds"])
    for n, name, secs in rows:
        w.writerow([n, name, f"{secs:.6f}"])
    return buf.getvalue()


def read_csv(text) -> list[tuple[int, str, float]]:
    r = csv.DictReader(io.StringIO(text))
    return [(int(d["n"]), d["algorithm"], float(d["median_seconds"])) for d in r]


def loglog_slope(rows, algorithm) -> float:
    """Least-squares slope of log(seconds) against log(n)."""
    pts = [(n, s) for n, name, s in rows if name == algorithm]
    if len(pts) < 2:
        raise ValueError(f"need two sizes to fit {algorithm}")
    x = np.log([n for n, _ in pts])
    y = np.log([max(s, 1e-9) for _, s in pts])
    return float(np.polyfit(x, y, 1)[0])
