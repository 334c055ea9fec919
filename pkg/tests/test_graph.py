from __future__ import annotations

import itertools
import math

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, to_nx, trees
from treefree.graph import (
    DuplicateEdge,
    EdgeCountMismatch,
    Graph,
    MalformedEdgeLine,
    MalformedHeader,
    ParseError,
    SelfLoop,
    ShapeKind,
    VertexOutOfRange,
    complete_graph,
    cycle_graph,
    diameter,
    disjoint_union,
    distances,
    emit_dot,
    emit_edge_list,
    girth,
    parse_edge_list,
    path_graph,
    petersen_graph,
    star_graph,
    tree_shape,
)


def test_parse_triangle():
    g = parse_edge_list(b"3 3\n0 1\n1 2\n0 2\n")
    assert g == complete_graph(3)


def test_parse_single_vertex():
    g = parse_edge_list(b"1 0\n")
    assert g.order == 1 and g.size == 0


@pytest.mark.parametrize(
    "text, err",
    [
        (b"2 1\n0 0\n", SelfLoop),
        (b"", MalformedHeader),
        (b"3\n", MalformedHeader),
        (b"3 x\n", MalformedHeader),
        (b"3 2\n0 1\n", EdgeCountMismatch),
        (b"3 1\n0 1 2\n", MalformedEdgeLine),
        (b"3 1\n0 -1\n", MalformedEdgeLine),
        (b"3 1\n0 3\n", VertexOutOfRange),
        (b"3 2\n0 1\n1 0\n", DuplicateEdge),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_edge_list(text)
    assert issubclass(err, ParseError)


def test_emit_empty_graph():
    assert emit_edge_list(Graph(0)) == b"0 0\n"


@given(graphs())
def test_emit_parse_round_trip(g):
    assert parse_edge_list(emit_edge_list(g)) == g


@given(graphs())
def test_degree_sum(g):
    assert sum(g.degrees) == 2 * g.size


def test_emit_dot_colours_roles():
    dot = emit_dot(path_graph(3), {0: "spine", 1: "interval(0)", 2: "apex(0)"}).decode()
    assert "fillcolor=red" in dot and "fillcolor=orange" in dot and "fillcolor=blue" in dot
    assert dot.count(" -- ") == 2


def test_graph_rejects_bad_edges():
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 0)])
    with pytest.raises(ValueError):
        Graph.from_edges(2, [(0, 2)])


def test_tree_shape_examples():
    assert tree_shape(path_graph(5)).variant is ShapeKind.PATH
    star = tree_shape(star_graph([1, 1, 1]))
    assert star.variant is ShapeKind.NEAR_PATH and star.center == 0
    assert tree_shape(cycle_graph(4)).variant is ShapeKind.NON_TREE
    assert tree_shape(star_graph([2, 2, 2])).variant is ShapeKind.TREE_OTHER
    assert tree_shape(star_graph([3, 2, 1])).variant is ShapeKind.NEAR_PATH


def test_degenerate_orders():
    assert tree_shape(Graph(0)).variant is ShapeKind.NON_TREE
    assert tree_shape(Graph(1)).variant is ShapeKind.PATH
    assert tree_shape(path_graph(2)).variant is ShapeKind.PATH


@given(trees())
def test_path_shape_properties(t):
    shape = tree_shape(t)
    if shape.variant is ShapeKind.PATH:
        assert t.is_connected() and t.size == t.order - 1
        assert sum(1 for d in t.degrees if d == 1) <= 2
    if shape.variant is ShapeKind.NEAR_PATH:
        leaf = next(w for w in sorted(t.adj[shape.center]) if t.degrees[w] == 1)
        rest, _ = t.induced([v for v in range(t.order) if v != leaf])
        assert tree_shape(rest).variant is ShapeKind.PATH


@given(graphs(max_order=8))
def test_tree_shape_matches_networkx(g):
    h = to_nx(g)
    is_tree = g.order > 0 and nx.is_tree(h)
    assert (tree_shape(g).variant is not ShapeKind.NON_TREE) == is_tree


def test_girth_examples():
    assert girth(cycle_graph(5)) == 5
    assert girth(path_graph(6)) is None
    assert girth(petersen_graph()) == 5
    assert girth(complete_graph(4)) == 3


@given(graphs(max_order=9))
def test_girth_matches_networkx(g):
    expected = nx.girth(to_nx(g))
    assert girth(g) == (None if expected == math.inf else expected)


def test_distance_examples():
    assert distances(path_graph(3))[0, 2] == 2
    assert distances(Graph(2))[0, 1] == math.inf
    d = distances(complete_graph(4))
    assert all(d[i, j] == 1 for i in range(4) for j in range(4) if i != j)


@settings(max_examples=60)
@given(graphs(max_order=12))
def test_distance_metric_axioms(g):
    d = distances(g)
    n = g.order
    for i in range(n):
        assert d[i, i] == 0
        for j in range(n):
            assert d[i, j] == d[j, i]
            if i != j and d[i, j] < math.inf:
                assert d[i, j] >= 1
    for i, j, k in itertools.product(range(n), repeat=3):
        if d[i, j] < math.inf and d[j, k] < math.inf:
            assert d[i, k] <= d[i, j] + d[j, k]


@given(graphs(max_order=9))
def test_distances_match_networkx(g):
    d = distances(g)
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for i in range(g.order):
        for j in range(g.order):
            assert d[i, j] == ref[i].get(j, math.inf)


def test_diameter_and_union():
    assert diameter(path_graph(7)) == 6
    u = disjoint_union(complete_graph(3), path_graph(2))
    assert u.order == 5 and u.size == 4 and len(u.components()) == 2


@given(graphs(max_order=8), st.randoms(use_true_random=False))
def test_relabel_preserves_structure(g, r):
    perm = list(range(g.order))
    r.shuffle(perm)
    h = g.relabel(perm)
    assert h.size == g.size and sorted(h.degrees) == sorted(g.degrees)
    assert all(h.has_edge(perm[u], perm[v]) for u, v in g.edges)


def test_induced_subgraph():
    h, old = cycle_graph(5).induced([0, 1, 2])
    assert old == [0, 1, 2] and h == path_graph(3)
