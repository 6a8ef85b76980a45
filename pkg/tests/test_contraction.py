import pytest
from hypothesis import given

from spanroot.arborescence import decode_mwa
from spanroot.contraction import break_cycle, broken_weight, contract, decompose, stitch
from spanroot.errors import MultipleEnterEdges, NoEnterEdge, NodeNotInCycle, NotACycle
from spanroot.graph import ROOT, Graph, total_weight
from spanroot.greedy import Cycle, greedy_graph
from spanroot.oracle import enumerate_trees

from conftest import E13, E23, E24, E32, E41, E43, R1, R2, graphs


@pytest.fixture
def cycle(gstar):
    return greedy_graph(gstar).cycle


@pytest.mark.parametrize("j, ids, w", [
    (2, {E24, E43}, 130),
    (3, {E32, E24}, 110),
    (4, {E43, E32}, 120),
])
def test_break_cycle(cycle, j, ids, w):
    assert break_cycle(cycle, j) == ids
    assert broken_weight(cycle, j) == w


def test_break_cycle_outside(cycle):
    with pytest.raises(NodeNotInCycle):
        break_cycle(cycle, 1)


def test_contract_worked_example(gstar, cycle):
    cg = contract(gstar, cycle)
    g, rec = cg.graph, cg.record
    c = rec.supernode
    assert g.n == 2 and c == 2
    assert rec.node_map == (0, 1, -1)
    # ids follow the original order: rho->1, rho->2, 1->3, 4->1
    assert [(e.src, e.dst, e.weight) for e in g.edges] == [
        (ROOT, 1, 90), (ROOT, c, 170), (1, c, 120), (c, 1, 20)]
    assert {i: e.id for i, e in rec.pi.items()} == {0: R1, 1: R2, 2: E13, 3: E41}
    assert rec.enter_breaks == {1: 2, 2: 3}
    assert [rec.kind(i) for i in range(4)] == ["external", "enter", "enter", "exit"]


def test_contract_any_cycle_of_the_graph(gstar):
    # 2->3->2 is not critical but still a cycle of the graph
    cg = contract(gstar, Cycle((2, 3), {2: gstar.edge(E32), 3: gstar.edge(E23)}))
    assert cg.graph.n == 3


def test_contract_rejects_non_cycle(gstar):
    broken = Cycle((2, 4), {2: gstar.edge(E32), 4: gstar.edge(E24)})
    with pytest.raises(NotACycle):
        contract(gstar, broken)


@pytest.mark.parametrize("a_c, expected, w", [
    ({0, 1}, {R1, R2, E24, E43}, 260),
    ({0, 2}, {R1, E13, E32, E24}, 210),
])
def test_stitch_worked_example(gstar, cycle, a_c, expected, w):
    cg = contract(gstar, cycle)
    assert total_weight(cg.graph, a_c) == w
    out = stitch(a_c, cg.record)
    assert out == expected
    assert total_weight(gstar, out) == w


def test_stitch_needs_one_enter_edge(gstar, cycle):
    rec = contract(gstar, cycle).record
    with pytest.raises(NoEnterEdge):
        stitch({0}, rec)
    with pytest.raises(MultipleEnterEdges):
        stitch({0, 1, 2}, rec)


def _critical(g):
    if not all(g.incoming(j) for j in range(1, g.n + 1)):
        return None
    return greedy_graph(g).cycle


@given(graphs(max_n=6))
def test_contracted_graph_is_clean(g):
    C = _critical(g)
    if C is None:
        return
    cg = contract(g, C)
    h = cg.graph
    assert h.n == g.n - len(C) + 1
    assert not (h.dst == ROOT).any()
    assert not (h.src == h.dst).any()
    for i, e in cg.record.pi.items():
        ce = h.edge(i)
        if i in cg.record.enter_breaks:
            j = cg.record.enter_breaks[i]
            assert e.dst == j
            assert ce.weight == e.weight + broken_weight(C, j)
        else:
            assert ce.weight == e.weight


@given(graphs(max_n=6))
def test_stitch_preserves_weight(g):
    C = _critical(g)
    if C is None:
        return
    cg = contract(g, C)
    for ids, w in enumerate_trees(cg.graph):
        out = stitch(ids, cg.record)
        assert len(out) == g.n
        assert total_weight(g, out) == w


@given(graphs(max_n=6))
def test_decompose_then_stitch_roundtrip(g):
    C = _critical(g)
    if C is None:
        return
    cg = contract(g, C)
    members = set(C.nodes)
    for ids, w in enumerate_trees(g):
        enters = [i for i in ids if g.edge(i).dst in members and g.edge(i).src not in members]
        if len(enters) != 1:
            continue
        contracted, inside, j = decompose(ids, cg.record)
        a_c_weight = total_weight(cg.graph, contracted)
        # w(A) = w(A_C) - w(C^(j)) + w(A')
        assert w == a_c_weight - broken_weight(C, j) + total_weight(g, inside)
        if set(inside) == break_cycle(C, j):
            assert stitch(contracted, cg.record) == set(ids)


@given(graphs(max_n=6))
def test_broken_cycle_is_best_tree_inside_cycle(g):
    C = _critical(g)
    if C is None:
        return
    members = list(C.nodes)
    for j in members:
        order = [j] + [v for v in members if v != j]
        relabel = {v: k for k, v in enumerate(order)}
        keep = [k for k in range(len(g)) if g.src[k] in relabel and g.dst[k] in relabel
                and g.dst[k] != j and g.src[k] != g.dst[k]]
        sub = Graph(len(members) - 1, [relabel[int(g.src[k])] for k in keep],
                    [relabel[int(g.dst[k])] for k in keep], g.weight[keep])
        assert decode_mwa(sub).total_weight == broken_weight(C, j)
