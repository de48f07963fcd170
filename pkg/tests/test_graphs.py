import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethe_spectra import bethe, graphs, oracle
from bethe_spectra.bethe import DegreeSequence as D
from bethe_spectra.graphs import Graph


def test_graph_normalises_and_validates():
    g = Graph(3, [(1, 0), (2, 1)])
    assert g.edges == ((0, 1), (1, 2)) and g.m == 2
    with pytest.raises(ValueError, match="loop"):
        Graph(2, [(1, 1)])
    with pytest.raises(ValueError, match="duplicate"):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(ValueError, match="out of range"):
        Graph(2, [(0, 2)])


def test_delete_vertex_relabels():
    g = graphs.path_graph(4).delete_vertex(1)
    assert g.n == 3 and g.edges == ((1, 2),)


def test_json_and_edge_list_roundtrip():
    g = graphs.star_graph(3)
    assert Graph.from_json(g.to_json()) == g
    text = "# a triangle\n0 1\n1 2\n\n2 0\n"
    assert Graph.from_edge_list_text(text) == graphs.complete_graph(3)


@pytest.mark.parametrize(
    "d, n, degs",
    [
        ((1, 2, 1), 3, [1, 2, 1]),
        ((1, 2, 3), 7, [3, 2, 2, 2, 1, 1, 1]),
        ((1, 3, 2), 7, [2, 3, 3, 1, 1, 1, 1]),
    ],
)
def test_bethe_tree_examples(d, n, degs):
    t = graphs.build_bethe_tree(D(d))
    assert t.root == 0 and t.graph.n == n and t.graph.m == n - 1
    assert t.graph.degrees() == degs
    assert t.graph.is_connected()


@st.composite
def small_sequences(draw):
    k = draw(st.integers(2, 5))
    mid = tuple(draw(st.integers(2, 4)) for _ in range(k - 2))
    return D((1,) + mid + (draw(st.integers(1, 5)),))


@settings(max_examples=40, deadline=None)
@given(small_sequences())
def test_bethe_tree_invariants(d):
    t = graphs.build_bethe_tree(d)
    g = t.graph
    assert g.m == g.n - 1 and g.is_connected()
    levels = graphs.bfs_levels(g, t.root)
    degs = g.degrees()
    for v, lev in enumerate(levels):
        assert degs[v] == d[d.k - lev + 1]
    # one line-graph vertex per tree edge, counted level by level
    assert g.m == bethe.level_multiplicities(d).edge_count
    assert graphs.line_graph(g).n == g.m


def test_line_graph_examples():
    assert graphs.line_graph(graphs.star_graph(3)) == graphs.complete_graph(3)
    assert graphs.line_graph(graphs.path_graph(3)) == graphs.complete_graph(2)
    assert graphs.line_graph(graphs.path_graph(5)) == graphs.path_graph(4)


def test_line_graph_edge_count():
    # |E(L(G))| = sum over vertices of C(deg, 2)
    g = graphs.build_bethe_tree(D((1, 3, 4, 2))).graph
    lg = graphs.line_graph(g)
    assert lg.m == sum(x * (x - 1) // 2 for x in g.degrees())


def test_corona_examples():
    assert graphs.corona(graphs.complete_graph(1), graphs.complete_graph(2)) == graphs.complete_graph(3)
    p4 = graphs.corona(graphs.complete_graph(2), graphs.complete_graph(1))
    assert oracle.graph_char_poly(p4) == oracle.graph_char_poly(graphs.path_graph(4))
    g = graphs.corona(graphs.complete_graph(3), graphs.complete_graph(2))
    assert g.n == 9 and g.m == 3 + 3 * (1 + 2)


def test_adjacency_matrix():
    a = graphs.adjacency_matrix(graphs.path_graph(3))
    assert a.dtype == np.int64
    assert (a == np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])).all()


@pytest.mark.parametrize("prefix", [(1, 3), (1, 4), (1, 2, 3), (1, 3, 3), (1, 3, 2, 4)])
def test_capped_rooted_line_graph(prefix):
    h = graphs.rooted_line_graph_of_capped_tree(prefix)
    tree_edges = sum(bethe.level_multiplicities(D(prefix + (1,))).m[1:-1])
    assert h.graph.n == tree_edges
    # the root edge meets the d_{k-1} - 1 edges below it
    assert h.graph.degrees()[h.root] == prefix[-1] - 1
    # H - e is the line graph of the tree hanging below the root's only child
    rest = graphs.line_graph(graphs.build_bethe_tree(D(prefix[:-1] + (prefix[-1] - 1,))).graph)
    hm = h.minus_root()
    assert oracle.graph_char_poly(hm) == oracle.graph_char_poly(rest)
    assert sorted(hm.degrees()) == sorted(rest.degrees())


def test_capped_rejects_bad_prefix():
    with pytest.raises(bethe.InvalidDegreeSequence):
        graphs.rooted_line_graph_of_capped_tree((1, 1))


def test_coalesce_and_attach():
    k2 = graphs.RootedGraph(graphs.complete_graph(2), 0)
    c = graphs.coalesce_graphs(k2, k2)
    assert c.root == 0 and c.graph.n == 3 and sorted(c.graph.degrees()) == [1, 1, 2]
    g = graphs.attach_to_all_graph(graphs.complete_graph(2), graphs.RootedGraph(Graph(1), 0))
    assert g.n == 2 and g.m == 1
    g = graphs.attach_at(graphs.complete_graph(3), k2, [1, 2])
    assert g.n == 5 and g.m == 5 and g.degrees() == [2, 3, 3, 1, 1]


@pytest.mark.parametrize("seed", range(5))
def test_random_trees(seed):
    rng = random.Random(seed)
    for _ in range(20):
        t = graphs.random_tree(rng.randint(1, 12), rng)
        assert t.m == t.n - 1 and t.is_connected()
        r = graphs.random_rooted_tree(10, rng)
        assert 1 <= r.graph.n <= 10 and 0 <= r.root < r.graph.n
