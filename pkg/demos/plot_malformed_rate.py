"""
How often does the unconstrained decoder break the root rule?
=============================================================

On weak, noisy scores the best arborescence frequently attaches several
tokens to the root.  We decode random sentences both ways and score them
against a planted gold tree.
"""

import numpy as np

from spanroot import decode_dependency_tree, decode_mwa, evaluate
from spanroot.graph import Graph

rng = np.random.default_rng(0)


def scored_sentence(n, signal=2.5):
    """Dense scores with a bonus on the edges of a random gold tree."""
    order = rng.permutation(np.arange(1, n + 1))
    gold = np.zeros(n + 1, dtype=int)
    for k, v in enumerate(order[1:], 1):
        gold[v] = order[rng.integers(0, k)]
    src, dst = np.meshgrid(np.arange(n + 1), np.arange(1, n + 1), indexing="ij")
    src, dst = src.ravel(), dst.ravel()
    keep = src != dst
    src, dst = src[keep], dst[keep]
    # root edges look a little better than average, as in real score matrices
    w = rng.normal(size=len(src)) + signal * (gold[dst] == src) + 0.5 * (src == 0)
    return Graph(n, src, dst, w), gold[1:].tolist()


###############################################################################
# A few hundred sentences of 5 to 25 tokens.

gold, con, unc = [], [], []
for _ in range(300):
    g, heads = scored_sentence(int(rng.integers(5, 26)))
    gold.append(heads)
    con.append(decode_dependency_tree(g).heads())
    unc.append(decode_mwa(g).heads())

###############################################################################
# The constrained decoder never produces a malformed tree; the relative
# deltas compare it to the unconstrained one.

report = evaluate(gold, con, unc)
print(report.to_text())
