"""
Quadratic time in practice
==========================

Both decoders run in time quadratic in the sentence length.  The naive way
to enforce one root edge reruns the unconstrained decoder once per root
child, which adds a factor of n.
"""

from spanroot import bench

rows = bench.run(min_n=50, max_n=800, trials=3, seed=0)
print(bench.to_csv(rows))

###############################################################################
# Slopes of a straight-line fit on log-log axes.

for name in bench.ALGORITHMS:
    print(f"{name:24s} slope {bench.loglog_slope(rows, name):.2f}")
