"""Plain-text formats: weight files in, head files out.

A weight file is a sequence of blank-line separated blocks::

    # comment
    n 4
    e 0 1 90 nsubj
    e 1 3 10

``n`` gives the number of non-root tokens; each ``e`` line is one scored
edge ``src dst weight [label]`` with node 0 as the root.  Self-loops and
edges into the root are dropped (and counted) instead of rejected, since
score exporters often emit the full matrix.

A head file holds one ``index<TAB>head<TAB>label`` line per token and a blank
line after every sentence.  ``_`` marks a missing head or label.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import ParseError
from .graph import ROOT, EdgeSelection, Graph

MISSING = "_"


@dataclass(frozen=True)
class WeightBlock:
    """One sentence of a weight file."""

    graph: Graph
    lineno: int  # line of the ``n`` header
    self_loops: int = 0  # dropped edges
    into_root: int = 0

    @property
    def dropped(self):
        return self.self_loops + self.into_root


def _int(tok, what, lineno):
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {tok!r}", lineno) from None


def _weight(tok, lineno):
    try:
        w = float(tok)
    except ValueError:
        raise ParseError(f"weight must be a number, got {tok!r}", lineno) from None
    if not math.isfinite(w):
        raise ParseError(f"weight must be finite, got {tok!r}", lineno)
    return w


class _Block:
    def __init__(self, n, lineno):
        self.n = n
        self.lineno = lineno
        self.src, self.dst, self.weight, self.labels = [], [], [], []
        self.self_loops = 0
        self.into_root = 0

    def add(self, toks, lineno):
        if len(toks) not in (4, 5):
            raise ParseError("edge line needs `e <src> <dst> <weight> [label]`", lineno)
        src = _int(toks[1], "src", lineno)
        dst = _int(toks[2], "dst", lineno)
        w = _weight(toks[3], lineno)
        for v in (src, dst):
            if not 0 <= v <= self.n:
                raise ParseError(f"node {v} outside 0..{self.n}", lineno)
        if src == dst:
            self.self_loops += 1
            return
        if dst == ROOT:
            self.into_root += 1
            return
        self.src.append(src)
        self.dst.append(dst)
        self.weight.append(w)
        self.labels.append(toks[4] if len(toks) == 5 else None)

    def finish(self) -> WeightBlock:
        g = Graph(self.n, self.src, self.dst, self.weight, labels=self.labels)
        return WeightBlock(g, self.lineno, self.self_loops, self.into_root)


def parse_weights(lines: Iterable[str]) -> list[WeightBlock]:
    """Parse a weight file given as lines (an open file works)."""
    blocks = []
    cur: Optional[_Block] = None
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            if cur is not None:
                blocks.append(cur.finish())
                cur = None
            continue
        toks = line.split()
        if toks[0] == "n":
            if cur is not None:
                raise ParseError("new `n` header before a blank line", lineno)
            if len(toks) != 2:
                raise ParseError("header line needs `n <count>`", lineno)
            n = _int(toks[1], "count", lineno)
            if n < 1:
                raise ParseError(f"count must be positive, got {n}", lineno)
            cur = _Block(n, lineno)
        elif toks[0] == "e":
            if cur is None:
                raise ParseError("edge line before any `n` header", lineno)
            cur.add(toks, lineno)
        else:
            raise ParseError(f"unknown record {toks[0]!r}", lineno)
    if cur is not None:
        blocks.append(cur.finish())
    return blocks


def read_weights(path) -> list[WeightBlock]:
    with open(path, encoding="utf-8") as f:
        return parse_weights(f)


def format_weight(w: float) -> str:
    """Six decimals, or the shortest exact repr when six would round."""
    s = f"{w:.6f}"
    return s if float(s) == w else repr(float(w))


def emit_weights(graphs: Iterable[Graph]) -> str:
    out = []
    for g in graphs:
        lines = [f"n {g.n}"]
        labels = g.label_list()
        for s, d, w, lab in zip(g.src.tolist(), g.dst.tolist(), g.weight.tolist(), labels):
            line = f"e {s} {d} {format_weight(w)}"
            lines.append(line if lab is None else f"{line} {lab}")
        out.append("\n".join(lines) + "\n")
    return "\n".join(out)


def write_weights(path, graphs: Iterable[Graph]):
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_weights(graphs))


# -- head files ---------------------------------------------------------------


@dataclass(frozen=True)
class HeadsSentence:
    heads: tuple[Optional[int], ...]  # None where the decoder gave up
    labels: tuple[Optional[str], ...]


def sentence_from_selection(sel: EdgeSelection) -> HeadsSentence:
    edges = sel.edges()  # ordered by target node
    return HeadsSentence(tuple(e.src for e in edges), tuple(e.label for e in edges))


def missing_sentence(n) -> HeadsSentence:
    return HeadsSentence((None,) * n, (None,) * n)


def emit_heads(sentences: Iterable[HeadsSentence]) -> str:
    out = []
    for s in sentences:
        for k, (h, lab) in enumerate(zip(s.heads, s.labels), 1):
            head = MISSING if h is None else str(h)
            out.append(f"{k}\t{head}\t{MISSING if lab is None else lab}\n")
        out.append("\n")
    return "".join(out)


def write_heads(path, sentences: Iterable[HeadsSentence]):
    with open(path, "w", encoding="utf-8") as f:
        f.write(emit_heads(sentences))


def parse_heads(lines: Iterable[str]) -> list[HeadsSentence]:
    sentences = []
    heads, labels = [], []

    def flush():
        if heads:
            sentences.append(HeadsSentence(tuple(heads), tuple(labels)))
            heads.clear()
            labels.clear()

    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 3:
            raise ParseError("expected `index<TAB>head<TAB>label`", lineno)
        idx = _int(cols[0], "index", lineno)
        if idx != len(heads) + 1:
            raise ParseError(f"expected token index {len(heads) + 1}, got {idx}", lineno)
        heads.append(None if cols[1] == MISSING else _int(cols[1], "head", lineno))
        labels.append(None if cols[2] == MISSING else cols[2])
    flush()
    return sentences


def read_heads(path) -> list[HeadsSentence]:
    with open(path, encoding="utf-8") as f:
        return parse_heads(f)


def head_lists(sentences: Sequence[HeadsSentence]) -> list[list[int]]:
    """Heads as plain integer lists for scoring; a missing head becomes -1,
    which never matches and makes the sentence malformed."""
    return [[-1 if h is None else h for h in s.heads] for s in sentences]
