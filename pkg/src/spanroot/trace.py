"""Optional trace channel for the decoders.

Pass a :class:`DecodeTrace` to a decoder to learn which branch fired at each
step.  With ``snapshots=True`` every event also carries the contracted graph
the step operated on, rebuilt as a standalone :class:`Graph` whose edge ids
are the ids of the original edges they stand for.  Snapshots cost
``O(n^2)`` each and are meant for tests and debugging.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .graph import Edge, Graph
from .greedy import Cycle


class RootEdgeCandidate(NamedTuple):
    """A root edge considered for removal and the greedy weight after it.

    ``removal_weight`` is ``w(greedy(G / edge))``.
    """

    edge: Edge
    target: int
    removal_weight: float


@dataclass(frozen=True)
class ContractionEvent:
    phase: str  # "opt" while finding the arborescence, "reduction" in the root search
    size: int
    graph: Optional[Graph] = None
    cycle: Optional[Cycle] = None


@dataclass(frozen=True)
class BaseCaseEvent:
    """The contracted graph whose greedy graph is acyclic."""

    graph: Optional[Graph] = None


@dataclass(frozen=True)
class RemovalEvent:
    case: str  # "optimization" or "reduction"
    candidates: tuple[RootEdgeCandidate, ...]
    chosen: RootEdgeCandidate
    graph: Optional[Graph] = None
    cycle: Optional[Cycle] = None


@dataclass
class DecodeTrace:
    snapshots: bool = False
    events: list = field(default_factory=list)

    def record(self, event):
        self.events.append(event)

    @property
    def contractions(self) -> list[ContractionEvent]:
        return [e for e in self.events if isinstance(e, ContractionEvent)]

    @property
    def removals(self) -> list[RemovalEvent]:
        return [e for e in self.events if isinstance(e, RemovalEvent)]

    @property
    def base_case(self) -> Optional[BaseCaseEvent]:
        for e in self.events:
            if isinstance(e, BaseCaseEvent):
                return e
        return None

    def case_counts(self) -> Counter:
        counts = Counter()
        for e in self.events:
            if isinstance(e, ContractionEvent):
                counts[f"contract:{e.phase}"] += 1
            elif isinstance(e, RemovalEvent):
                counts[e.case] += 1
        return counts

    def summary(self) -> str:
        counts = self.case_counts()
        keys = ("contract:opt", "optimization", "reduction")
        return " ".join(f"{k}={counts.get(k, 0)}" for k in keys)
