from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import connected_graphs, to_nx, trees
from oracles import connected_graph_classes
from treefree.blocks import PointedBlock, attached_leaves, block_decomposition, minimal_attached_leaves, pointed_edge
from treefree.embed import is_free
from treefree.graph import Graph, ShapeKind, complete_graph, path_graph, star_graph, tree_shape
from treefree.pruning import (
    NotAnAttachedLeaf,
    core_subgraph,
    core_vertices,
    free_attach,
    free_attach_groups,
    is_critical,
    prune,
    prune_set,
    prune_to_critical,
)

H_TREE = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
TRIANGLE_PENDANT = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])


def iso(g: Graph, h: Graph) -> bool:
    return nx.is_isomorphic(to_nx(g), to_nx(h))


def test_prune_examples():
    assert iso(prune(star_graph([2, 2, 2]), pointed_edge()), star_graph([1, 1, 1]))
    assert iso(prune(TRIANGLE_PENDANT, pointed_edge()), complete_graph(3))
    assert iso(prune(path_graph(6), pointed_edge()), path_graph(4))


def test_prune_rejects_foreign_leaf():
    with pytest.raises(NotAnAttachedLeaf):
        prune(path_graph(5), PointedBlock(complete_graph(3), 0))


def test_prune_with_larger_leaf_deletes_smaller_ones():
    # the pendant edge pointed-embeds into the triangle leaf, so both go
    c = Graph.from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (0, 4)])
    tri = next(lf for lf in attached_leaves(c) if lf.block.order == 3)
    assert iso(prune(c, tri), path_graph(2))


def test_prune_set_examples():
    out = prune_set([star_graph([2, 2, 2]), path_graph(4)], pointed_edge())
    assert len(out) == 2
    assert iso(out[0], star_graph([1, 1, 1])) and iso(out[1], path_graph(2))
    assert len(prune_set([path_graph(5)], pointed_edge())) == 1
    # a relabelled copy prunes to an isomorphic graph
    p5 = path_graph(5)
    out = prune_set([p5, p5.relabel([4, 2, 0, 1, 3])], pointed_edge())
    assert len(out) == 1


def test_prune_set_passes_single_blocks_through():
    out = prune_set([complete_graph(4)], pointed_edge())
    assert out == [complete_graph(4)]


def test_free_attach_examples():
    assert iso(free_attach(Graph(1), pointed_edge(), 3), star_graph([1, 1, 1]))
    assert iso(free_attach(path_graph(2), pointed_edge(), 1), path_graph(4))


@pytest.mark.parametrize("k", [1, 2, 3])
@pytest.mark.parametrize("block", [path_graph(2), complete_graph(3), complete_graph(4)])
def test_free_attach_order(k, block):
    g = star_graph([1, 2])
    leaf = PointedBlock(block, 0)
    assert free_attach(g, leaf, k).order == g.order * (1 + k * (block.order - 1))


def test_free_attach_copy_groups_are_disjoint():
    a = free_attach_groups(path_graph(3), PointedBlock(complete_graph(3), 1), 2)
    flat = [v for fam in a.copy_groups for copy in fam for v in copy]
    assert len(flat) == len(set(flat)) == a.graph.order - 3


def test_core_subgraph_examples():
    k13 = star_graph([1, 1, 1])
    assert core_vertices(k13, pointed_edge(), 3) == [0]
    assert core_subgraph(k13, pointed_edge(), 3).order == 1
    assert core_subgraph(k13, pointed_edge(), 1).order == 4


@pytest.mark.parametrize("block", [path_graph(2), complete_graph(3)])
def test_core_of_free_attachment_contains_original(block):
    leaf = PointedBlock(block, 0)
    for order in range(1, 6):
        for g in connected_graph_classes(order):
            big = free_attach(g, leaf, 2)
            assert set(range(g.order)) <= set(core_vertices(big, leaf, 2))


@settings(max_examples=25, deadline=None)
@given(connected_graphs(max_order=8))
def test_core_of_free_attachment_random(g):
    big = free_attach(g, pointed_edge(), 2)
    assert set(range(g.order)) <= set(core_vertices(big, pointed_edge(), 2))


def test_criticality_examples():
    assert is_critical(star_graph([2, 2, 2]))
    assert not is_critical(star_graph([3, 3, 3]))
    assert is_critical(H_TREE)
    assert iso(prune(H_TREE, pointed_edge()), path_graph(2))
    assert not is_critical(path_graph(4))


def test_prune_to_critical_trace():
    tr = prune_to_critical(star_graph([3, 3, 3]))
    assert tr.critical and len(tr.steps) == 1
    assert iso(tr.final, star_graph([2, 2, 2]))
    step = tr.steps[0]
    assert step.after == prune(step.before, step.leaf)


@given(trees(max_order=12, min_order=3))
def test_tree_pruning_deletes_leaves(t):
    if t.order == 2:
        return
    pruned = prune(t, pointed_edge())
    expected, _ = t.induced([v for v in range(t.order) if t.degrees[v] > 1])
    assert pruned == expected


@given(connected_graphs(max_order=8, min_order=3))
def test_prune_shrinks_and_terminates(c):
    if len(block_decomposition(c).blocks) < 2:
        return
    for lf in attached_leaves(c):
        after = prune(c, lf)
        assert after.order < c.order and after.is_connected()
    tr = prune_to_critical(c)
    assert len(tr.steps) <= c.order
    for s in tr.steps:
        assert s.after.order < s.before.order
        assert s.after == prune(s.before, s.leaf)


def test_critical_trees_match_definition():
    from oracles import brute_force_tree_classes

    for n in range(4, 10):
        for t in brute_force_tree_classes(n):
            shape = tree_shape(t).variant
            if shape in (ShapeKind.PATH, ShapeKind.NEAR_PATH):
                assert not is_critical(t)
                continue
            pruned_shape = tree_shape(prune(t, pointed_edge()))
            assert is_critical(t) == pruned_shape.is_path_like


def monotone_on(c: Graph, gammas) -> None:
    for lf in minimal_attached_leaves(c):
        cm = prune(c, lf)
        for g in gammas:
            if is_free(g, cm):
                a = free_attach_groups(g, lf, c.order)
                groups = [list(fam) for fam in a.copy_groups]
                assert is_free(a.graph, c, copy_groups=groups)


def test_pruning_monotonicity_small():
    gammas = [g for k in range(1, 6) for g in connected_graph_classes(k)]
    for n in range(2, 6):
        for c in connected_graph_classes(n):
            if len(block_decomposition(c).blocks) >= 2:
                monotone_on(c, gammas)


def test_monotonicity_needs_a_minimal_leaf():
    # pruning with a non-minimal leaf can remove too much
    c = Graph.from_edges(5, [(1, 2), (2, 3), (1, 3), (3, 4), (0, 4)])
    tri = next(lf for lf in attached_leaves(c) if lf.block.order == 3)
    assert tri not in minimal_attached_leaves(c)
    g = Graph(1)
    assert is_free(g, prune(c, tri))
    assert not is_free(free_attach(g, tri, c.order), c)


def test_k_copies_suffice():
    # a C-embedding touches at most |V(C)| vertices, so more copies add nothing
    c = star_graph([2, 2, 1])
    leaf = pointed_edge()
    for g in connected_graph_classes(4):
        base = is_free(free_attach(g, leaf, c.order), c)
        assert base == is_free(free_attach(g, leaf, c.order + 2), c)
