"""Command line entry point: ``spanroot {decode,eval,bench,oracle}``.

Exit codes: 0 success, 1 unreadable input (bad file, mismatched corpora,
oversized sentences), 2 some sentence could not be decoded or verified.
"""

from __future__ import annotations

import argparse
import math
import sys

from . import bench
from .arborescence import decode_mwa
from .constrained import decode_dependency_tree
from .errors import DecodeError, SpanrootError, TooLarge
from .io import (
    emit_heads,
    head_lists,
    missing_sentence,
    read_heads,
    read_weights,
    sentence_from_selection,
)
from .metrics import evaluate
from .oracle import DEFAULT_MAX_N, best_tree_weights
from .trace import DecodeTrace

EXIT_OK, EXIT_INPUT, EXIT_PARTIAL = 0, 1, 2


def _warn(msg):
    print(msg, file=sys.stderr)


def _read_blocks(path):
    blocks = read_weights(path)
    for k, b in enumerate(blocks, 1):
        if b.dropped:
            _warn(f"sentence {k} (line {b.lineno}): dropped {b.dropped} edge(s): "
                  f"{b.self_loops} self-loop(s), {b.into_root} into the root")
    return blocks


def cmd_decode(args):
    decode = decode_dependency_tree if args.mode == "constrained" else decode_mwa
    blocks = _read_blocks(args.input)
    out, status = [], EXIT_OK
    for k, b in enumerate(blocks, 1):
        trace = DecodeTrace() if args.trace else None
        try:
            sel = decode(b.graph, trace=trace)
        except DecodeError as exc:
            _warn(f"sentence {k} (line {b.lineno}): {type(exc).__name__}: {exc}")
            out.append(missing_sentence(b.graph.n))
            status = EXIT_PARTIAL
            continue
        if trace is not None:
            _warn(f"sentence {k}: weight {_fmt(sel.total_weight)} {trace.summary()}")
        out.append(sentence_from_selection(sel))
    text = emit_heads(out)
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    return status


def cmd_eval(args):
    gold = head_lists(read_heads(args.gold))
    con = head_lists(read_heads(args.pred_constrained))
    unc = head_lists(read_heads(args.pred_unconstrained))
    rep = evaluate(gold, con, unc)
    sys.stdout.write(rep.to_csv() if args.format == "csv" else rep.to_text())
    return EXIT_OK


def cmd_bench(args):
    progress = None
    if args.verbose:
        def progress(row):
            _warn(f"n={row[0]} {row[1]} {row[2]:.6f}s")
    rows = bench.run(args.min_n, args.max_n, args.trials, args.seed, args.density,
                     progress=progress)
    sys.stdout.write(bench.to_csv(rows))
    return EXIT_OK


def _fmt(w):
    if w is None:
        return "none"
    return str(int(w)) if float(w).is_integer() else f"{w:.6f}"


def _same(a, b):
    if a is None or b is None:
        return a is b
    return math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)


def _decoded_weight(decode, g):
    try:
        return decode(g).total_weight
    except DecodeError:
        return None


def cmd_oracle(args):
    blocks = _read_blocks(args.input)
    for k, b in enumerate(blocks, 1):
        if b.graph.n > args.max_n:
            raise TooLarge(f"sentence {k} (line {b.lineno}) has {b.graph.n} tokens, "
                           f"limit is {args.max_n}")
    status = EXIT_OK
    for b in blocks:
        arb, dep = best_tree_weights(b.graph, max_n=args.max_n)
        ok_u = _same(arb, _decoded_weight(decode_mwa, b.graph))
        ok_c = _same(dep, _decoded_weight(decode_dependency_tree, b.graph))
        print(f"unconstrained {_fmt(arb)} constrained {_fmt(dep)} "
              f"{'PASS' if ok_u else 'FAIL'} {'PASS' if ok_c else 'FAIL'}")
        if not (ok_u and ok_c):
            status = EXIT_PARTIAL
    return status


def build_parser():
    p = argparse.ArgumentParser(prog="spanroot", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decode", help="decode every sentence of a weight file")
    d.add_argument("--input", required=True)
    d.add_argument("--output", default="-", help="head file to write (default stdout)")
    d.add_argument("--mode", choices=("constrained", "unconstrained"), default="constrained")
    d.add_argument("--trace", action="store_true",
                   help="report which decoding steps fired, on stderr")
    d.set_defaults(func=cmd_decode)

    e = sub.add_parser("eval", help="score constrained and unconstrained head files")
    e.add_argument("--gold", required=True)
    e.add_argument("--pred-constrained", required=True)
    e.add_argument("--pred-unconstrained", required=True)
    e.add_argument("--format", choices=("text", "csv"), default="text")
    e.set_defaults(func=cmd_eval)

    b = sub.add_parser("bench", help="time the decoders on dense random graphs")
    b.add_argument("--min-n", type=int, default=100)
    b.add_argument("--max-n", type=int, default=1600)
    b.add_argument("--trials", type=int, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--density", type=float, default=1.0)
    b.add_argument("--verbose", action="store_true", help="progress on stderr")
    b.set_defaults(func=cmd_bench)

    o = sub.add_parser("oracle", help="check the decoders against exhaustive search")
    o.add_argument("--input", required=True)
    o.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SpanrootError, ValueError, OSError) as exc:
        _warn(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
