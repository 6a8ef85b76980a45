"""Maximum-weight arborescence by repeated cycle contraction."""

from __future__ import annotations

from typing import Optional

from ._dense import decode_positions
from .graph import EdgeSelection, Graph
from .trace import DecodeTrace


def selection_from_positions(g: Graph, pos) -> EdgeSelection:
    ids = g.ids[pos].tolist()
    return EdgeSelection(g, {v: ids[v - 1] for v in range(1, g.n + 1)})


def decode_mwa(g: Graph, trace: Optional[DecodeTrace] = None) -> EdgeSelection:
    """Best arborescence of ``g`` (any number of root edges).

    Contracts critical cycles of the greedy graph until it is acyclic, then
    expands the contractions in reverse.  Runs in ``O(n^2)`` time on top of
    building the dense score matrix.

    Raises:
        NoArborescence: some node cannot be reached from the root.
    """
    return selection_from_positions(g, decode_positions(g, False, trace))
