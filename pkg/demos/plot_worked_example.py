"""
Decoding a small sentence graph
===============================

Five nodes, eight scored edges.  The best arborescence hangs two tokens off
the root; the best dependency tree allows only one.
"""

from spanroot import DecodeTrace, decode_dependency_tree, decode_mwa, worked_example
from spanroot.contraction import contract
from spanroot.greedy import find_cycle, greedy_graph

g = worked_example()
for e in g.edges:
    print(f"{e.src} -> {e.dst}  {e.weight:g}")

###############################################################################
# Every node takes its best incoming edge.  Nodes 2, 4 and 3 point at each
# other, so the greedy graph is not a tree.

greedy = greedy_graph(g).selection
cycle = find_cycle(greedy)
print("greedy heads:", greedy.heads(), "weight", greedy.total_weight)
print("cycle:", cycle.nodes, "weight", cycle.cycle_weight)

###############################################################################
# Contracting the cycle into one node reweights the edges that enter it:
# entering at node j costs the cycle minus the edge that used to enter j.

cg = contract(g, cycle)
for e in cg.graph.edges:
    kind = cg.record.kind(e.id)
    print(f"{e.src} -> {e.dst}  {e.weight:g}  ({kind})")

###############################################################################
# The unconstrained decoder is done after one contraction.

mwa = decode_mwa(g)
print("best arborescence:", mwa.heads(), "weight", mwa.total_weight)

###############################################################################
# The constrained decoder scores dropping each root edge in constant time
# and keeps the cheaper removal.

trace = DecodeTrace()
dep = decode_dependency_tree(g, trace=trace)
for ev in trace.removals:
    for c in ev.candidates:
        print(f"drop root -> {c.target}: greedy weight {c.removal_weight:g}")
print("best dependency tree:", dep.heads(), "weight", dep.total_weight)
print(trace.summary())
