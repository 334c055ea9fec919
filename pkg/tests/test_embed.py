from __future__ import annotations

import random

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graphs, random_graph, random_tree, to_nx
from oracles import is_embedding, permutation_embeds, permutation_semicontractive
from treefree.construct import build_witness, default_recipe
from treefree.construct.builders import regular_girth_auto
from treefree.construct.recipes import Stardom
from treefree.embed import (
    FiniteMetric,
    InconsistentAnchors,
    SizeBoundExceeded,
    find_monomorphism,
    find_semicontractive,
    graphs_isomorphic,
    image_sets,
    is_free,
    metric_V1,
)
from treefree.fixtures import FIXTURES
from treefree.graph import Graph, complete_graph, cycle_graph, diameter, disjoint_union, distances, girth, path_graph, petersen_graph, star_graph


def test_monomorphism_examples():
    m = find_monomorphism(path_graph(3), complete_graph(3))
    assert m is not None and is_embedding(path_graph(3), complete_graph(3), m)
    assert find_monomorphism(star_graph([1, 1, 1]), cycle_graph(6)) is None


def test_stardom_witness_is_free():
    t = star_graph([2, 2, 2])
    w = build_witness(t, default_recipe("Stardom"), 4 * t.order, 0)
    assert find_monomorphism(t, w.graph) is None


def test_free_examples():
    assert is_free(cycle_graph(5), complete_graph(3))
    assert not is_free(cycle_graph(6), path_graph(6))


def test_monarch_regular_graph_and_pendant():
    t = FIXTURES["Monarchy"]()
    d = t.max_degree()
    # balls of radius diam(T) are trees once the girth exceeds 2 diam(T)
    g = regular_girth_auto(d - 1, 2 * diameter(t) + 1, 4 * t.order, seed=1)
    assert girth(g) > 2 * diameter(t)
    assert is_free(g, t)
    assert not is_free(g.add_edges([(0, g.order)], new_vertices=1), t)


def test_anchors_are_respected():
    host = cycle_graph(6)
    m = find_monomorphism(path_graph(3), host, {0: 4})
    assert m is not None and m[0] == 4 and is_embedding(path_graph(3), host, m)
    assert find_monomorphism(path_graph(3), path_graph(3), {0: 1, 2: 0}) is None


def test_inconsistent_anchors():
    with pytest.raises(InconsistentAnchors):
        find_monomorphism(path_graph(3), path_graph(4), {0: 0, 1: 2})
    with pytest.raises(InconsistentAnchors):
        find_monomorphism(path_graph(3), path_graph(4), {0: 1, 2: 1})


def test_induced_flag():
    assert find_monomorphism(path_graph(3), complete_graph(3), induced=True) is None
    assert find_monomorphism(path_graph(3), cycle_graph(4), induced=True) is not None


@settings(max_examples=300, deadline=None)
@given(graphs(max_order=5), graphs(max_order=7))
def test_monomorphism_matches_permutations(pattern, host):
    m = find_monomorphism(pattern, host)
    assert (m is not None) == permutation_embeds(pattern, host)
    if m is not None:
        assert is_embedding(pattern, host, m)


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=4), graphs(max_order=6))
def test_induced_matches_permutations(pattern, host):
    m = find_monomorphism(pattern, host, induced=True)
    assert (m is not None) == permutation_embeds(pattern, host, induced=True)


@settings(max_examples=100, deadline=None)
@given(graphs(max_order=5, min_order=1), graphs(max_order=8), st.integers(0, 4))
def test_restricted_anchors_refind(pattern, host, keep):
    m = find_monomorphism(pattern, host)
    if m is None:
        return
    anchors = {p: m[p] for p in sorted(m)[:keep]}
    again = find_monomorphism(pattern, host, anchors)
    assert again is not None and all(again[p] == h for p, h in anchors.items())


def test_image_sets_count_triangles():
    sets = image_sets(complete_graph(3), complete_graph(4), {0: 0})
    assert sets == {frozenset(s) for s in ({0, 1, 2}, {0, 1, 3}, {0, 2, 3})}


def test_copy_groups_do_not_change_answers():
    rng = random.Random(3)
    for _ in range(30):
        t = random_tree(rng, rng.randint(3, 7))
        base = random_graph(rng, rng.randint(2, 6), 0.5)
        # k pendant leaves at every vertex, interchangeable
        k = 3
        edges = list(base.edges)
        groups, nxt = [], base.order
        for v in range(base.order):
            fam = []
            for _ in range(k):
                edges.append((v, nxt))
                fam.append((nxt,))
                nxt += 1
            groups.append(fam)
        host = Graph.from_edges(nxt, edges)
        assert is_free(host, t) == is_free(host, t, copy_groups=groups)


def test_isomorphism_examples():
    p4 = path_graph(4)
    assert graphs_isomorphic(p4, p4.relabel([2, 0, 3, 1]))
    assert not graphs_isomorphic(cycle_graph(6), disjoint_union(complete_graph(3), complete_graph(3)))
    with pytest.raises(SizeBoundExceeded):
        graphs_isomorphic(path_graph(70), path_graph(70))


def test_stardom_witnesses_differing_in_one_bit():
    t = star_graph([2, 2, 2])
    eps = (0, 1, 0, 0, 1, 1, 0)
    flipped = (0, 1, 1, 0, 1, 1, 0)
    a = build_witness(t, Stardom(eps=eps), 4 * t.order, 0).graph
    b = build_witness(t, Stardom(eps=flipped), 4 * t.order, 0).graph
    assert not graphs_isomorphic(a, b, bound=max(a.order, b.order))


@settings(max_examples=200, deadline=None)
@given(graphs(max_order=8), st.randoms(use_true_random=False))
def test_isomorphism_matches_networkx(g, r):
    perm = list(range(g.order))
    r.shuffle(perm)
    h = g.relabel(perm)
    assert graphs_isomorphic(g, h)


@settings(max_examples=300, deadline=None)
@given(graphs(max_order=7), graphs(max_order=7))
def test_isomorphism_decision_matches_networkx(g, h):
    assert graphs_isomorphic(g, h) == nx.is_isomorphic(to_nx(g), to_nx(h))


def test_regular_graph_isomorphism_hard_pairs():
    # Petersen graph against the pentagonal prism, both cubic on ten vertices
    pet = petersen_graph()
    prism = Graph.from_edges(10, [(i, (i + 1) % 5) for i in range(5)] + [(5 + i, 5 + (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)])
    assert not graphs_isomorphic(pet, prism)
    assert graphs_isomorphic(pet, pet.relabel([3, 7, 1, 9, 0, 2, 8, 4, 6, 5]))


def test_metric_examples():
    h = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
    m = metric_V1(h, 3)
    assert m.points == (0, 1) and m.d(0, 1) == 1
    assert len(metric_V1(path_graph(6), 3)) == 0


def point_metric(d) -> FiniteMetric:
    return FiniteMetric(tuple(range(len(d))), np.array(d, dtype=float))


def test_semicontractive_examples():
    one = point_metric([[0]])
    assert find_semicontractive(one, point_metric([[0, 4], [4, 0]])) is not None
    assert find_semicontractive(point_metric([[0, 3], [3, 0]]), point_metric([[0, 5], [5, 0]])) is None
    assert find_semicontractive(point_metric([[0, 5], [5, 0]]), point_metric([[0, 3], [3, 0]])) is not None
    with pytest.raises(SizeBoundExceeded):
        find_semicontractive(point_metric(np.zeros((13, 13))), point_metric(np.zeros((13, 13))))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.randoms(use_true_random=False))
def test_semicontractive_matches_permutations(m, k, r):
    def rand_metric(n):
        g = random_tree(r, n + r.randint(0, 3))
        return distances(g)[:n, :n]

    a, b = rand_metric(m), rand_metric(k)
    f = find_semicontractive(point_metric(a), point_metric(b))
    assert (f is not None) == permutation_semicontractive(a, b)
    if f is not None:
        assert len(set(f)) == m
        assert all(b[f[i], f[j]] <= a[i, j] for i in range(m) for j in range(m))


def test_metric_soundness_sample():
    rng = random.Random(11)
    hits = 0
    for _ in range(60):
        t = random_tree(rng, rng.randint(4, 8))
        d = t.max_degree()
        host = random_graph(rng, rng.randint(6, 16), rng.choice([0.2, 0.35]))
        if find_monomorphism(t, host) is None:
            continue
        hits += 1
        assert find_semicontractive(metric_V1(t, d), metric_V1(host, d)) is not None
    assert hits > 0
