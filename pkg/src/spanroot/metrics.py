"""Corpus-level scores for decoded head assignments.

A sentence is a plain sequence of heads: entry ``k`` is the head of token
``k + 1`` and 0 stands for the root.  Every token counts towards UAS,
punctuation included.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import EmptyCorpus, LengthMismatch, ZeroBaseline
from .graph import ROOT, heads_reach_root

SentenceHeads = Sequence[int]


def is_well_formed(heads: SentenceHeads) -> bool:
    """Exactly one root attachment and the heads form a tree over the root."""
    n = len(heads)
    if any(not 0 <= h <= n for h in heads):
        return False
    if sum(1 for h in heads if h == ROOT) != 1:
        return False
    return heads_reach_root([ROOT, *heads])


def malformed_rate(preds: Sequence[SentenceHeads]) -> float:
    """Fraction of sentences with several root attachments or that are not
    trees at all."""
    if not preds:
        raise EmptyCorpus("no sentences")
    return sum(1 for h in preds if not is_well_formed(h)) / len(preds)


def _check_aligned(gold, pred):
    if len(gold) != len(pred):
        raise LengthMismatch(f"{len(gold)} gold sentences but {len(pred)} predicted")
    for k, (g, p) in enumerate(zip(gold, pred)):
        if len(g) != len(p):
            raise LengthMismatch(f"sentence {k}: {len(g)} gold tokens but {len(p)} predicted")
    if not gold:
        raise EmptyCorpus("no sentences")


def uas(gold: Sequence[SentenceHeads], pred: Sequence[SentenceHeads]) -> float:
    """Share of tokens whose predicted head matches the gold head."""
    _check_aligned(gold, pred)
    tokens = sum(len(g) for g in gold)
    if tokens == 0:
        raise EmptyCorpus("no tokens")
    hits = sum(a == b for g, p in zip(gold, pred) for a, b in zip(g, p))
    return hits / tokens


def exact_match(gold: Sequence[SentenceHeads], pred: Sequence[SentenceHeads]) -> float:
    """Share of sentences whose heads all match."""
    _check_aligned(gold, pred)
    return sum(list(g) == list(p) for g, p in zip(gold, pred)) / len(gold)


def relative_delta(unconstrained_score: float, constrained_score: float) -> float:
    """Change of the constrained score relative to the unconstrained one."""
    if unconstrained_score <= 0:
        raise ZeroBaseline(f"baseline score must be positive, got {unconstrained_score}")
    return (constrained_score - unconstrained_score) / unconstrained_score


def format_percent(x: float, digits=3, signed=True) -> str:
    """``0.2222...`` -> ``+22.222%``."""
    return f"{x * 100:{'+' if signed else ''}.{digits}f}%"


@dataclass(frozen=True)
class EvalReport:
    sentences: int
    tokens: int
    malformed_rate: float  # of the unconstrained predictions
    uas_unconstrained: float
    uas_constrained: float
    exact_unconstrained: float
    exact_constrained: float
    rel_delta_uas: Optional[float]  # None when the unconstrained score is 0
    rel_delta_exact: Optional[float]

    def rows(self) -> list[tuple[str, str]]:
        def rate(x):
            return f"{x:.6f}"

        def delta(x):
            return "undefined" if x is None else f"{x:.6f}"

        return [
            ("sentences", str(self.sentences)),
            ("tokens", str(self.tokens)),
            ("malformed_rate", rate(self.malformed_rate)),
            ("uas_unconstrained", rate(self.uas_unconstrained)),
            ("uas_constrained", rate(self.uas_constrained)),
            ("exact_unconstrained", rate(self.exact_unconstrained)),
            ("exact_constrained", rate(self.exact_constrained)),
            ("rel_delta_uas", delta(self.rel_delta_uas)),
            ("rel_delta_exact", delta(self.rel_delta_exact)),
        ]

    def to_text(self) -> str:
        return "".join(f"{k}={v}\n" for k, v in self.rows())

    def to_csv(self) -> str:
        rows = self.rows()
        return ",".join(k for k, _ in rows) + "\n" + ",".join(v for _, v in rows) + "\n"


def _delta_or_none(base, new):
    try:
        return relative_delta(base, new)
    except ZeroBaseline:
        return None


def evaluate(gold, pred_constrained, pred_unconstrained) -> EvalReport:
    """Score both decoders against ``gold``; deltas are relative to the
    unconstrained scores."""
    _check_aligned(gold, pred_constrained)
    _check_aligned(gold, pred_unconstrained)
    u_uas, c_uas = uas(gold, pred_unconstrained), uas(gold, pred_constrained)
    u_em, c_em = exact_match(gold, pred_unconstrained), exact_match(gold, pred_constrained)
    return EvalReport(
        sentences=len(gold),
        tokens=sum(len(g) for g in gold),
        malformed_rate=malformed_rate(pred_unconstrained),
        uas_unconstrained=u_uas,
        uas_constrained=c_uas,
        exact_unconstrained=u_em,
        exact_constrained=c_em,
        rel_delta_uas=_delta_or_none(u_uas, c_uas),
        rel_delta_exact=_delta_or_none(u_em, c_em),
    )
