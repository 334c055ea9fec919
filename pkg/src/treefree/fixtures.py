"""Small critical trees, one designated fixture per construction variant."""

from __future__ import annotations

from .graph import Graph, star_graph


def _tree(edges: list[tuple[int, int]]) -> Graph:
    n = 1 + max(max(e) for e in edges)
    return Graph.from_edges(n, edges)


def _with_leaves(core_edges: list[tuple[int, int]], n_core: int, leaves: dict[int, int]) -> Graph:
    edges = list(core_edges)
    nxt = n_core
    for v, k in sorted(leaves.items()):
        for _ in range(k):
            edges.append((v, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges)


def monarchy() -> Graph:
    """S(2,1,1,1): unique vertex of degree 4."""
    return star_graph([2, 1, 1, 1])


def stardom() -> Graph:
    return star_graph([2, 2, 2])


def proto() -> Graph:
    """Two adjacent vertices of degree 5, each carrying four leaves."""
    return _with_leaves([(0, 1)], 2, {0: 4, 1: 4})


def case_IA() -> Graph:
    # v0=0 - 1 - 2 - v1=3, three leaves at each end
    return _with_leaves([(0, 1), (1, 2), (2, 3)], 4, {0: 3, 3: 3})


def case_IB() -> Graph:
    return _with_leaves([(0, 1), (1, 2), (2, 3)], 4, {0: 2, 3: 2})


def case_IC() -> Graph:
    return _with_leaves([(0, 1), (1, 2)], 3, {0: 2, 2: 2})


def case_IIA() -> Graph:
    return proto()


def case_IIB() -> Graph:
    return _with_leaves([(0, 1)], 2, {0: 3, 1: 3})


def case_IIIA() -> Graph:
    """The H-tree."""
    return _with_leaves([(0, 1)], 2, {0: 2, 1: 2})


def case_IIIB() -> Graph:
    # v1=0 - v0=1 - v2=2 ; v1 and v2 carry two leaves, v0 one
    return _with_leaves([(0, 1), (1, 2)], 3, {0: 2, 1: 1, 2: 2})


def case_IIIC() -> Graph:
    # v1'=0 - v1=1 - 2 - 3 - v0=4 - v0'=5
    return _with_leaves([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], 6, {0: 2, 1: 1, 4: 1, 5: 2})


def case_IIID() -> Graph:
    # v1'=0 - v1=1 - 2 - v0=3 - v0'=4: four branch vertices, one degree-2 vertex between
    return _with_leaves([(0, 1), (1, 2), (2, 3), (3, 4)], 5, {0: 2, 1: 1, 3: 1, 4: 2})


def case_IVA() -> Graph:
    # v*=0 with arms 0-1-leaf, 0-2-leaf and v1=3 carrying two leaves
    return _with_leaves([(0, 1), (0, 2), (0, 3)], 4, {1: 1, 2: 1, 3: 2})


def case_IVB() -> Graph:
    return _with_leaves([(0, 1), (0, 2), (0, 3)], 4, {1: 2, 2: 2, 3: 2})


def case_IVC() -> Graph:
    # v*=0; 0-1-v0=2 ; 0-v1=3 ; 0-4-5
    return _with_leaves([(0, 1), (1, 2), (0, 3), (0, 4), (4, 5)], 6, {2: 3, 3: 3})


def case_IVD() -> Graph:
    return _with_leaves([(0, 1), (0, 2), (0, 3)], 4, {1: 3, 2: 3, 3: 3})


def case_IVD_prime() -> Graph:
    # v*=0; 0-v0=1 ; 0-v1=2 ; 0-3-v2=4
    return _with_leaves([(0, 1), (0, 2), (0, 3), (3, 4)], 5, {1: 3, 2: 3, 4: 3})


FIXTURES = {
    "Monarchy": monarchy,
    "Stardom": stardom,
    "Proto": proto,
    "IA": case_IA,
    "IB": case_IB,
    "IC": case_IC,
    "IIA": case_IIA,
    "IIB": case_IIB,
    "IIIA": case_IIIA,
    "IIIB": case_IIIB,
    "IIIC": case_IIIC,
    "IIID": case_IIID,
    "IVA": case_IVA,
    "IVB": case_IVB,
    "IVC": case_IVC,
    "IVD": case_IVD,
    "IVDprime": case_IVD_prime,
}


def fixture(name: str) -> Graph:
    return FIXTURES[name]()
