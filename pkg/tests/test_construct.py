from __future__ import annotations

import re
import time

import networkx as nx
import pytest

from conftest import to_nx
from treefree.construct import (
    NON_MONOTONE,
    RECIPES,
    ExtraEdges,
    InconsistentGlue,
    InfeasibleTarget,
    PendantTrees,
    RecipeError,
    RecipeMismatch,
    RetryBudgetExhausted,
    amalgam_copies,
    build_witness,
    default_recipe,
    free_amalgam,
    is_truncation_of,
    raise_degrees,
    regular_girth,
)
from treefree.construct.builders import regular_tree_ball, verify_copy_groups
from treefree.construct.recipes import IB, IIIA, IVC, Monarchy, Stardom
from treefree.embed import is_free
from treefree.fixtures import FIXTURES
from treefree.graph import complete_graph, cycle_graph, girth, path_graph, star_graph

ROLE = re.compile(r"^(spine|filler|global_apex|(interval|gap|apex|attachment_copy)\(-?\d+\))$")


def test_regular_girth_degree_two_is_a_cycle():
    g = regular_girth(2, 5, 7, seed=3)
    assert nx.is_isomorphic(to_nx(g), nx.cycle_graph(g.order)) and g.order >= 7


@pytest.mark.parametrize("degree, g_min, order", [(3, 5, 12), (3, 6, 18), (4, 5, 30)])
def test_regular_girth_meets_targets(degree, g_min, order):
    g = regular_girth(degree, g_min, order, seed=1)
    assert set(g.degrees) == {degree} and g.order >= order
    assert girth(g) >= g_min


def test_regular_girth_errors():
    with pytest.raises(ValueError):
        regular_girth(1, 5, 10)
    with pytest.raises(RetryBudgetExhausted):
        # no cubic graph of girth 7 on fewer than 24 vertices
        regular_girth(3, 7, 10, retries=3)


def test_free_amalgam_examples():
    # two triangles glued on an edge give K4 minus an edge
    g = free_amalgam(complete_graph(3), complete_graph(3), {0: 0, 1: 1})
    assert g.order == 4 and g.size == 5
    with pytest.raises(InconsistentGlue):
        free_amalgam(path_graph(3), complete_graph(3), {0: 0, 1: 2})
    with pytest.raises(InconsistentGlue):
        free_amalgam(path_graph(3), path_graph(2), {0: 1, 1: 1})


def test_amalgam_copies_of_a_pendant_edge_make_a_star():
    g, maps = amalgam_copies(path_graph(2), [0], 3)
    assert nx.is_isomorphic(to_nx(g), to_nx(star_graph([1, 1, 1])))
    assert len(maps) == 3 and all(m[0] == 0 for m in maps)


def test_raise_degrees_with_pendant_trees():
    g = raise_degrees(path_graph(3), {0: 3, 1: 3, 2: 3}, PendantTrees(arity=2, depth=1))
    assert all(g.degrees[v] >= 3 for v in range(3)) and g.is_tree()


def test_raise_degrees_k13_example():
    # two leaves of a claw can be joined; a third edge at each would need a multi-edge
    g = raise_degrees(star_graph([1, 1, 1]), {1: 2, 2: 2}, ExtraEdges(girth_floor=3))
    assert g.has_edge(1, 2) and g.size == 4
    with pytest.raises(InfeasibleTarget):
        raise_degrees(star_graph([1, 1, 1]), {1: 3, 2: 3}, ExtraEdges(girth_floor=3))


def test_regular_tree_ball():
    ball, depth = regular_tree_ball(3, 2)
    assert ball.order == 1 + 3 + 6 and ball.is_tree() and max(depth) == 2


# -- recipes ----------------------------------------------------------------


def test_recipe_parameter_errors():
    with pytest.raises(RecipeError):
        default_recipe("nope")
    t = FIXTURES["Stardom"]()
    with pytest.raises(RecipeError):
        build_witness(t, Stardom(eps=(0, 2)), 4 * t.order)
    with pytest.raises(RecipeError):
        build_witness(t, Stardom(), 4 * t.order - 1)
    with pytest.raises(RecipeError):
        build_witness(FIXTURES["Monarchy"](), Monarchy(girth=2), 24)
    ib = FIXTURES["IB"]()
    with pytest.raises(RecipeError):
        build_witness(ib, IB(p=(1,)), 4 * ib.order)
    ivc = FIXTURES["IVC"]()
    with pytest.raises(RecipeError):
        build_witness(ivc, IVC(radius=0), 4 * ivc.order)


def test_recipe_case_mismatch():
    with pytest.raises(RecipeMismatch):
        build_witness(FIXTURES["IIIA"](), default_recipe("IA"), 40)


def test_every_variant_has_a_recipe_and_fixture():
    assert set(RECIPES) == set(FIXTURES) and len(RECIPES) == 17


@pytest.fixture(scope="module")
def witnesses():
    out = {}
    for name in sorted(FIXTURES):
        t = FIXTURES[name]()
        out[name] = (t, build_witness(t, default_recipe(name), 4 * t.order, 0))
    return out


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_witness_bookkeeping(witnesses, name):
    t, w = witnesses[name]
    g = w.graph
    assert len(w.roles) == len(w.keys) == g.order
    assert len(set(w.keys)) == g.order
    assert all(ROLE.match(r) for r in w.roles), sorted(set(w.roles))
    assert w.core <= frozenset(range(g.order)) and w.boundary.isdisjoint(w.core)
    assert verify_copy_groups(g, w.copy_groups)
    assert all(w.roles[v] == "spine" or w.roles[v].startswith(("interval", "gap")) for v in w.spine)
    for i, seg in enumerate(w.intervals):
        # a whole regular spine serving as one interval keeps its spine role
        assert all(w.roles[v] in (f"interval({i})", "spine") for v in seg)
    for i, b in enumerate(w.apexes):
        assert w.roles[b] == f"apex({i})" and set(w.intervals[i]) <= g.adj[b]
    if name != "IVC":
        assert w.margin == t.order


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_witness_is_free_at_4n(witnesses, name):
    t, w = witnesses[name]
    start = time.perf_counter()
    assert is_free(w.graph, t, copy_groups=[list(f) for f in w.copy_groups])
    assert time.perf_counter() - start < 60


@pytest.mark.parametrize("name", sorted(FIXTURES))
def test_witness_is_deterministic(witnesses, name):
    t, w = witnesses[name]
    again = build_witness(t, default_recipe(name), 4 * t.order, 0)
    assert again.graph == w.graph and again.roles == w.roles and again.core == w.core


@pytest.mark.parametrize("name", sorted(set(FIXTURES) - NON_MONOTONE))
def test_truncations_are_nested(witnesses, name):
    t, w = witnesses[name]
    big = build_witness(t, default_recipe(name), 4 * t.order + 7, 0)
    assert is_truncation_of(w, big)
    assert not is_truncation_of(big, w)


def test_stardom_all_zero_order():
    t = FIXTURES["Stardom"]()
    for L in (28, 33):
        w = build_witness(t, Stardom(eps=(0,)), L)
        assert w.graph.order == (L + 1) + 2 * L
        assert w.info["eps"] == [0] * L


def test_stardom_one_links_are_wide():
    t = FIXTURES["Stardom"]()
    w = build_witness(t, Stardom(eps=(1,)), 28)
    a = w.spine
    assert all(w.graph.has_edge(a[i], a[i + 1]) for i in range(28))
    assert w.graph.order == 29 + 28 * t.order


def test_iiia_structure(witnesses):
    t, w = witnesses["IIIA"]
    assert all(len(seg) == 3 for seg in w.intervals[:-1])
    assert all(len(gap) in (1, 2) for gap in w.gaps[:-1])
    assert len(w.spine) == 4 * t.order
    # every spine vertex sits on the path, apexes see exactly one interval
    sp = set(w.spine)
    for b in w.apexes:
        assert len(w.graph.adj[b] & sp) == len(w.intervals[w.apexes.index(b)])
    w2 = build_witness(t, IIIA(q=(2,)), 4 * t.order)
    assert w2.info["q"] == [2] * len(w2.info["q"])


def test_iiid_special_apexes_have_enough_degree(witnesses):
    t, w = witnesses["IIID"]
    assert w.info["special"]
    S = w.info["S"]
    assert S and all(b - a in (2, 3) for a, b in zip(S, S[1:]))
    for i in S:
        assert w.graph.degrees[w.apexes[i]] >= t.order + len(w.intervals[i])


def test_ivc_interval_placement(witnesses):
    t, w = witnesses["IVC"]
    ell = w.info["ell"]
    assert w.margin == max(nx.eccentricity(to_nx(t)).values()) + 1
    ball, _ = w.graph.induced(w.spine)
    spine_index = {v: i for i, v in enumerate(w.spine)}
    dist = [ball.multi_bfs([spine_index[v] for v in seg]) for seg in w.intervals]
    for i, seg in enumerate(w.intervals):
        for j, d in enumerate(dist):
            if i != j:
                assert all(d[spine_index[v]] > ell for v in seg)
    assert w.info["covered_twice"] >= 0
    assert all(len(seg) <= 6 * ell for seg in w.intervals)


def test_ivc_start_depth_changes_layout():
    t = FIXTURES["IVC"]()
    a = build_witness(t, IVC(start_depth=0), 4 * t.order)
    b = build_witness(t, IVC(start_depth=1), 4 * t.order)
    assert a.intervals != b.intervals


def test_witness_graph_is_simple(witnesses):
    for name, (_, w) in witnesses.items():
        g = to_nx(w.graph)
        assert g.number_of_edges() == w.graph.size, name
        assert nx.number_of_selfloops(g) == 0


def test_monarchy_witness_is_regular_with_girth(witnesses):
    t, w = witnesses["Monarchy"]
    assert set(w.graph.degrees) == {t.max_degree() - 1}
    assert girth(w.graph) >= 5


def test_freeness_check_sees_the_tree():
    # sanity: the freeness check does find the tree when it is present
    t = FIXTURES["Stardom"]()
    host = t.add_edges([(0, t.order)], new_vertices=1)
    assert not is_free(host, t)
    assert is_free(cycle_graph(50), t)
