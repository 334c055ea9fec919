from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from treefree.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges)
    return h


def from_nx(h: nx.Graph) -> Graph:
    idx = {v: i for i, v in enumerate(sorted(h.nodes))}
    return Graph.from_edges(len(idx), ((idx[u], idx[v]) for u, v in h.edges))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p])


def random_connected(rng: random.Random, n: int, p: float) -> Graph:
    """A random spanning tree plus independent extra edges."""
    edges = {(min(v, u), max(v, u)) for v in range(1, n) for u in [rng.randrange(v)]}
    edges |= {(u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p}
    return Graph.from_edges(n, edges)


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])


@st.composite
def graphs(draw, max_order: int = 9, min_order: int = 0) -> Graph:
    n = draw(st.integers(min_order, max_order))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, keep in zip(pairs, mask) if keep])


@st.composite
def connected_graphs(draw, max_order: int = 9, min_order: int = 1) -> Graph:
    n = draw(st.integers(min_order, max_order))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    edges = {(p, v) for v, p in zip(range(1, n), parents)}
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges |= {e for e, keep in zip(pairs, mask) if keep and draw(st.booleans())}
    return Graph.from_edges(n, edges)


@st.composite
def trees(draw, max_order: int = 12, min_order: int = 1) -> Graph:
    n = draw(st.integers(min_order, max_order))
    return Graph.from_edges(n, [(draw(st.integers(0, v - 1)), v) for v in range(1, n)])


@st.composite
def permutations_of(draw, g: Graph) -> Graph:
    perm = draw(st.permutations(range(g.order)))
    return g.relabel(list(perm))


def all_connected_graphs(max_order: int):
    """One graph per isomorphism class, from the networkx atlas (orders up to 7)."""
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_order and nx.is_connected(h):
            yield from_nx(h)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


# -- acceptance report ------------------------------------------------------

# criterion number -> part name -> (passed, detail)
ACCEPTANCE: dict[int, dict[str, tuple[bool, str]]] = {}


def record(criterion: int, part: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(criterion, {})[part] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[k]
        ok = all(p for p, _ in parts.values())
        failed = [name for name, (p, _) in parts.items() if not p]
        if len(parts) == 1:
            detail = next(iter(parts.values()))[1]
        else:
            detail = f"{len(parts) - len(failed)}/{len(parts)} parts" + (f"; failing: {', '.join(failed)}" if failed else "")
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
