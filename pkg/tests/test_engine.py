import numpy as np
import pytest
from hypothesis import given

from spanroot._dense import decode_positions, dense_scores, single_child_decoder
from spanroot.arborescence import decode_mwa
from spanroot.constrained import decode_dependency_tree, delete_root_edges
from spanroot.errors import DecodeError
from spanroot.generate import dense_graph, random_multigraph
from spanroot.graph import Graph, build_graph
from spanroot.trace import DecodeTrace

from conftest import graphs


def test_dense_scores_layout(gstar):
    M, P = dense_scores(gstar)
    assert M.shape == (5, 5)
    # row is the target, column the source
    assert M[2, 0] == 40 and P[2, 0] == 1
    assert M[3, 4] == 70 and P[3, 4] == 6
    assert np.isneginf(M[0]).all()
    assert np.isneginf(M[1, 2])


def test_dense_scores_keeps_best_parallel_copy():
    g = build_graph(1, [(0, 1, 2), (0, 1, 5), (0, 1, 5)])
    M, P = dense_scores(g)
    assert M[1, 0] == 5 and P[1, 0] == 1


def test_ties_go_to_lowest_position():
    g = build_graph(2, [(1, 2, 3), (0, 2, 3), (0, 1, 1)])
    assert decode_mwa(g).edge_ids == [0, 2]
    g = build_graph(2, [(0, 2, 3), (1, 2, 3), (0, 1, 1)])
    assert decode_mwa(g).edge_ids == [0, 2]


def test_sparse_ids():
    g = Graph(2, [0, 0, 1], [1, 2, 2], [1.0, 1.0, 5.0], ids=[10, 20, 30])
    assert decode_mwa(g).edge_ids == [10, 30]
    assert sorted(decode_positions(g).tolist()) == [0, 2]


@given(graphs())
def test_tracing_does_not_change_results(g):
    for constrained in (False, True):
        outs = []
        for trace in (None, DecodeTrace(), DecodeTrace(snapshots=True)):
            try:
                outs.append(sorted(decode_positions(g, constrained, trace).tolist()))
            except DecodeError as exc:
                outs.append(type(exc))
        assert outs[0] == outs[1] == outs[2]


@given(graphs(connected=True))
def test_snapshot_events_line_up(g):
    plain, snap = DecodeTrace(), DecodeTrace(snapshots=True)
    try:
        decode_dependency_tree(g, trace=plain)
    except DecodeError:
        return
    decode_dependency_tree(g, trace=snap)
    assert plain.case_counts() == snap.case_counts()
    assert [e.size for e in plain.contractions] == [e.size for e in snap.contractions]
    sizes = [g.n + 1]
    for ev in snap.contractions:
        assert ev.graph.n + 1 == sizes[-1]
        assert len(ev.cycle) == ev.size
        sizes.append(sizes[-1] - ev.size + 1)


@given(graphs(connected=True))
def test_single_child_decoder_matches_filtered_graph(g):
    M, decode = single_child_decoder(g)
    for j in np.flatnonzero(~np.isneginf(M[:, 0])).tolist():
        h = g
        for e in g.root_edges():
            if e.dst != j:
                h = delete_root_edges(h, e)
        try:
            want = decode_mwa(h).total_weight
        except DecodeError:
            with pytest.raises(DecodeError):
                decode(j)
            continue
        assert g.weight[decode(j)].sum() == want


@pytest.mark.parametrize("n", [50, 200])
def test_dense_reals_are_valid_trees(n):
    rng = np.random.default_rng(n)
    g = dense_graph(rng, n)
    a = decode_mwa(g)
    d = decode_dependency_tree(g)
    assert a.is_arborescence() and d.is_dependency_tree()
    assert d.total_weight <= a.total_weight + 1e-9


def test_sparse_large_graph_against_networkx():
    nx = pytest.importorskip("networkx")
    rng = np.random.default_rng(11)
    g = random_multigraph(rng, 150, 0.05, low=-1000, high=1000, parallel=True)
    g = Graph(g.n, np.concatenate([g.src, np.zeros(g.n, int)]),
              np.concatenate([g.dst, np.arange(1, g.n + 1)]),
              np.concatenate([g.weight, np.full(g.n, -5000.0)]))
    G = nx.DiGraph()
    for s, d, w in zip(g.src.tolist(), g.dst.tolist(), g.weight.tolist()):
        if not G.has_edge(s, d) or G[s][d]["weight"] < w:
            G.add_edge(s, d, weight=w)
    ref = nx.maximum_spanning_arborescence(G)
    want = sum(G[s][d]["weight"] for s, d in ref.edges())
    assert decode_mwa(g).total_weight == want
