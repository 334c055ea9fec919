"""Tree profiles, the case taxonomy of critical trees, the universality verdict,
and exhaustive enumeration of free trees.

Every case predicate below is a literal reading of the case list: each one is
evaluated over all candidate vertex choices in increasing id order, and the
first case (in the fixed priority order) that admits a choice wins.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

from .graph import Graph, ShapeKind, TreeShape, tree_shape


class NotATree(ValueError):
    pass


class NotCritical(ValueError):
    pass


class CaseLabel(enum.Enum):
    PATH = "Path"
    NEAR_PATH = "NearPath"
    MONARCHY = "Monarchy"
    STARDOM = "Stardom"
    IA = "IA"
    IB = "IB"
    IC = "IC"
    IIA = "IIA"
    IIB = "IIB"
    IIIA = "IIIA"
    IIIB = "IIIB"
    IIIC = "IIIC"
    IIID = "IIID"
    IVA = "IVA"
    IVB = "IVB"
    IVC = "IVC"
    IVD = "IVD"
    IVD_PRIME = "IVDprime"

    @classmethod
    def parse(cls, text: str) -> CaseLabel:
        for lab in cls:
            if lab.value.lower() == text.lower() or lab.name.lower() == text.lower():
                return lab
        raise ValueError(f"unknown case label {text!r}")


# -- tree helpers -----------------------------------------------------------


class TreeView:
    """Cached distance and component queries on a tree."""

    def __init__(self, t: Graph):
        self.t = t
        self.deg = t.degrees
        self._dist: dict[int, dict[int, int]] = {}
        self._comp: dict[int, dict[int, int]] = {}

    def dist(self, u: int, v: int) -> int:
        if u not in self._dist:
            self._dist[u] = self.t.bfs(u)
        return self._dist[u][v]

    def comp_id(self, v: int) -> dict[int, int]:
        """For each vertex other than ``v``, the neighbor of ``v`` through which it is reached."""
        if v not in self._comp:
            label: dict[int, int] = {}
            for w in self.t.adj[v]:
                label[w] = w
                stack = [w]
                while stack:
                    x = stack.pop()
                    for y in self.t.adj[x]:
                        if y != v and y not in label:
                            label[y] = w
                            stack.append(y)
            self._comp[v] = label
        return self._comp[v]

    def same_comp(self, v: int, a: int, b: int) -> bool:
        """Whether ``a`` and ``b`` lie in the same ``v``-component (neither equal to ``v``)."""
        c = self.comp_id(v)
        return a != v and b != v and c[a] == c[b]

    def component(self, v: int, a: int) -> set[int]:
        c = self.comp_id(v)
        return {x for x, r in c.items() if r == c[a]}

    def components(self, v: int) -> list[set[int]]:
        c = self.comp_id(v)
        return [{x for x, r in c.items() if r == w} for w in sorted(self.t.adj[v])]

    def on_path(self, x: int, a: int, b: int) -> bool:
        return self.dist(a, x) + self.dist(x, b) == self.dist(a, b)


def prune_leaves(t: Graph) -> tuple[Graph, list[int]]:
    """T' : delete every leaf. Returns the pruned tree and old ids."""
    return t.induced(v for v in range(t.order) if t.degrees[v] >= 2)


def externals(tv: TreeView, vset: list[int]) -> list[int]:
    """Members of ``vset`` with at most one component (after deletion) meeting ``vset``."""
    out = []
    for v in vset:
        c = tv.comp_id(v)
        if len({c[u] for u in vset if u != v}) <= 1:
            out.append(v)
    return out


# -- profile ----------------------------------------------------------------


@dataclass(frozen=True)
class TreeProfile:
    d: int
    degree_d_vertices: tuple[int, ...]
    branch_vertices: tuple[int, ...]
    externals: tuple[int, ...]
    pruned_shape: TreeShape
    v_star: int | None
    v1: int | None = None
    v0: int | None = None
    ell: int | None = None
    roles: dict[str, int] = field(default_factory=dict)


def _base_profile(t: Graph) -> tuple[TreeProfile, TreeView, Graph, list[int]]:
    if not t.is_tree():
        raise NotATree("input is not a tree")
    d = t.max_degree()
    if d < 3:
        raise NotATree("tree has maximum degree below 3")
    tv = TreeView(t)
    vd = [v for v in range(t.order) if tv.deg[v] == d]
    br = [v for v in range(t.order) if tv.deg[v] >= 3]
    pruned, old = prune_leaves(t)
    ps = tree_shape(pruned)
    vstar = old[ps.center] if ps.variant is ShapeKind.NEAR_PATH else None
    prof = TreeProfile(d, tuple(vd), tuple(br), tuple(externals(tv, vd)), ps, vstar)
    return prof, tv, pruned, old


# -- case predicates --------------------------------------------------------
# Each yields role dictionaries in increasing order of the chosen vertices.

Roles = dict[str, int]


def _center_ok_outside(p: TreeProfile, tv: TreeView, v0: int, v1: int) -> bool:
    """T' is a path, or a near-path whose center is not in the v0-component of v1."""
    kind = p.pruned_shape.variant
    if kind is ShapeKind.PATH:
        return True
    if kind is ShapeKind.NEAR_PATH:
        c = p.v_star
        return not (c != v0 and tv.same_comp(v0, c, v1))
    return False


def _pairs_unique_in_component(p: TreeProfile, tv: TreeView) -> Iterator[tuple[int, int, int]]:
    """(v1, v0, ell): v0 of degree d with a v0-component whose only degree-d vertex is v1."""
    vd = p.degree_d_vertices
    for v1 in vd:
        for v0 in vd:
            if v0 == v1:
                continue
            if all(not tv.same_comp(v0, u, v1) for u in vd if u not in (v0, v1)):
                yield v1, v0, tv.dist(v0, v1)


def _case_I_II(pred_d: Callable[[int], bool], pred_ell: Callable[[int], bool], center_rule: str):
    def check(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
        if not pred_d(p.d):
            return
        for v1, v0, ell in _pairs_unique_in_component(p, tv):
            if not pred_ell(ell):
                continue
            if center_rule == "outside":
                ok = _center_ok_outside(p, tv, v0, v1)
            else:
                kind = p.pruned_shape.variant
                ok = kind is ShapeKind.PATH or (kind is ShapeKind.NEAR_PATH and p.v_star != v1)
            if ok:
                yield {"v0": v0, "v1": v1, "ell": ell}
    return check


def _case_IIIA(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
    br = p.branch_vertices
    if p.pruned_shape.variant is not ShapeKind.PATH or len(br) != 2:
        return
    a, b = br
    if tv.deg[a] == 3 and tv.deg[b] == 3 and tv.t.has_edge(a, b):
        yield {"v0": a, "v1": b, "ell": 1}


def _has_leaf_neighbor(tv: TreeView, v: int) -> bool:
    return any(tv.deg[w] == 1 for w in tv.t.adj[v])


def _case_IIIB(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
    if p.d != 3:
        return
    br = set(p.branch_vertices)
    ext = set(p.externals)
    for v1 in sorted(ext):
        if not _has_leaf_neighbor(tv, v1):
            continue
        for v0 in sorted(tv.t.adj[v1] & br):
            for v2 in sorted((tv.t.adj[v0] & br) - {v1}):
                third = [c for c in tv.components(v0) if v1 not in c and v2 not in c]
                if any(not (c & br) for c in third):
                    yield {"v0": v0, "v1": v1, "v2": v2, "ell": 1}


def _case_IIICD(want: Callable[[int], bool]):
    def check(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
        if p.d != 3:
            return
        br = set(p.branch_vertices)
        ext = p.externals
        kind = p.pruned_shape.variant
        for v1p in ext:
            if not _has_leaf_neighbor(tv, v1p):
                continue
            for v1 in sorted(tv.t.adj[v1p] & br):
                others = [u for u in br if u not in (v1, v1p)]
                if not others:
                    continue
                near = min(tv.dist(v1, u) for u in others)
                for v0 in sorted(u for u in others if tv.dist(v1, u) == near):
                    if tv.same_comp(v1, v0, v1p):
                        continue
                    ell = near
                    if not want(ell):
                        continue
                    if kind is ShapeKind.PATH:
                        ok = all(tv.t.adj[x] & br for x in ext)
                    elif kind is ShapeKind.NEAR_PATH:
                        ok = _center_ok_outside(p, tv, v0, v1)
                    else:
                        ok = False
                    if ok:
                        yield {"v0": v0, "v1": v1, "v1p": v1p, "ell": ell}
    return check


def _near(p: TreeProfile) -> bool:
    return p.pruned_shape.variant is ShapeKind.NEAR_PATH


def _case_IVA(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
    if not _near(p) or p.d != 3 or len(p.branch_vertices) != 2:
        return
    vs = p.v_star
    others = [u for u in p.branch_vertices if u != vs]
    if vs in p.branch_vertices and len(others) == 1 and tv.t.has_edge(vs, others[0]):
        yield {"v_star": vs, "v1": others[0]}


def _case_IVB(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
    if not _near(p) or p.d != 3 or len(p.branch_vertices) != 4:
        return
    vs = p.v_star
    others = sorted(u for u in p.branch_vertices if u != vs)
    if vs in p.branch_vertices and len(others) == 3 and all(tv.t.has_edge(vs, u) for u in others):
        # v3 is one adjacent to two leaves
        twos = [u for u in others if sum(tv.deg[w] == 1 for w in tv.t.adj[u]) >= 2]
        if twos:
            v3 = twos[0]
            v1, v2 = [u for u in others if u != v3]
            yield {"v_star": vs, "v1": v1, "v2": v2, "v3": v3}


def _case_IVC(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
    vd = p.degree_d_vertices
    if not _near(p) or p.d < 4 or len(vd) != 2:
        return
    vs = p.v_star
    v0, v1 = vd
    if vs not in vd and not tv.same_comp(vs, v0, v1):
        yield {"v_star": vs, "v0": v0, "v1": v1, "ell": tv.dist(v0, v1)}


def _case_IVD(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
    vd = p.degree_d_vertices
    if not _near(p) or p.d < 4 or len(vd) != 3:
        return
    vs = p.v_star
    if all(tv.t.has_edge(vs, u) for u in vd):
        yield {"v_star": vs, "v0": vd[0], "v1": vd[1], "v2": vd[2]}


def _case_IVDp(p: TreeProfile, tv: TreeView) -> Iterator[Roles]:
    vd = p.degree_d_vertices
    if not _near(p) or p.d < 4 or len(vd) != 3:
        return
    vs = p.v_star
    if vs in vd:
        return
    if len({tv.comp_id(vs)[u] for u in vd}) == 3:
        yield {"v_star": vs, "v0": vd[0], "v1": vd[1], "v2": vd[2]}


CASES: list[tuple[CaseLabel, Callable[[TreeProfile, TreeView], Iterator[Roles]]]] = [
    (CaseLabel.IA, _case_I_II(lambda d: d >= 4, lambda e: e >= 3, "outside")),
    (CaseLabel.IB, _case_I_II(lambda d: d == 3, lambda e: e >= 3, "outside")),
    (CaseLabel.IC, _case_I_II(lambda d: d >= 3, lambda e: e == 2, "not_v1")),
    (CaseLabel.IIA, _case_I_II(lambda d: d >= 5, lambda e: e == 1, "outside")),
    (CaseLabel.IIB, _case_I_II(lambda d: d == 4, lambda e: e == 1, "outside")),
    (CaseLabel.IIIA, _case_IIIA),
    (CaseLabel.IIIB, _case_IIIB),
    (CaseLabel.IIIC, _case_IIICD(lambda e: e >= 3)),
    (CaseLabel.IIID, _case_IIICD(lambda e: e == 2)),
    (CaseLabel.IVA, _case_IVA),
    (CaseLabel.IVB, _case_IVB),
    (CaseLabel.IVC, _case_IVC),
    (CaseLabel.IVD, _case_IVD),
    (CaseLabel.IVD_PRIME, _case_IVDp),
]

CASE_PREDICATES = dict(CASES)


@dataclass(frozen=True)
class Classification:
    label: CaseLabel
    shape: TreeShape
    profile: TreeProfile | None = None

    @property
    def roles(self) -> dict[str, int]:
        return self.profile.roles if self.profile else {}


def is_critical_tree(t: Graph) -> bool:
    if not t.is_tree():
        raise NotATree("input is not a tree")
    if tree_shape(t).is_path_like:
        return False
    return tree_shape(prune_leaves(t)[0]).is_path_like


def classify(t: Graph) -> Classification:
    shape = tree_shape(t)
    if shape.variant is ShapeKind.NON_TREE:
        raise NotATree("input is not a tree")
    if shape.variant is ShapeKind.PATH:
        return Classification(CaseLabel.PATH, shape)
    if shape.variant is ShapeKind.NEAR_PATH:
        return Classification(CaseLabel.NEAR_PATH, shape)
    if not is_critical_tree(t):
        raise NotCritical("tree is neither path-like nor critical; prune it first")
    prof, tv, _, _ = _base_profile(t)
    if len(prof.degree_d_vertices) == 1:
        v = prof.degree_d_vertices[0]
        if prof.d >= 4:
            return Classification(CaseLabel.MONARCHY, shape, _with_roles(prof, {"v1": v}))
        if len(prof.branch_vertices) == 1:
            return Classification(CaseLabel.STARDOM, shape, _with_roles(prof, {"v1": v}))
    for label, pred in CASES:
        for roles in pred(prof, tv):
            return Classification(label, shape, _with_roles(prof, roles))
    raise AssertionError("critical tree matched no case")


def _with_roles(p: TreeProfile, roles: Roles) -> TreeProfile:
    return TreeProfile(
        p.d, p.degree_d_vertices, p.branch_vertices, p.externals, p.pruned_shape, p.v_star,
        roles.get("v1"), roles.get("v0"), roles.get("ell"),
        {k: v for k, v in roles.items() if k != "ell"},
    )


def case_label(t: Graph) -> CaseLabel:
    return classify(t).label


def tree_profile(t: Graph) -> TreeProfile:
    """Profile with v0, v1, ell taken from the matched case when the tree is critical.

    Otherwise v1 is the least external vertex and v0 the nearest other vertex of
    maximal degree (or the nearest branch vertex when no such vertex exists).
    """
    prof, tv, _, _ = _base_profile(t)
    if is_critical_tree(t):
        c = classify(t)
        if c.profile is not None:
            return c.profile
    v1 = prof.externals[0] if prof.externals else prof.degree_d_vertices[0]
    pool = [u for u in prof.degree_d_vertices if u != v1] or [u for u in prof.branch_vertices if u != v1]
    if not pool:
        return _with_roles(prof, {"v1": v1})
    v0 = min(pool, key=lambda u: (tv.dist(v1, u), u))
    return _with_roles(prof, {"v1": v1, "v0": v0, "ell": tv.dist(v0, v1)})


class Verdict(enum.Enum):
    EXISTS = "Exists"
    NOT_EXISTS = "NotExists"


def universality_verdict(t: Graph) -> Verdict:
    shape = tree_shape(t)
    if shape.variant is ShapeKind.NON_TREE:
        raise NotATree("input is not a tree")
    return Verdict.EXISTS if shape.is_path_like else Verdict.NOT_EXISTS


def critical_reduction(t: Graph) -> tuple[Graph, int]:
    """Strip leaves until the tree is path-like or critical; returns the tree and step count."""
    steps = 0
    while not tree_shape(t).is_path_like and not is_critical_tree(t):
        t = prune_leaves(t)[0]
        steps += 1
    return t, steps


# -- canonical codes and enumeration ----------------------------------------


def tree_centers(t: Graph) -> list[int]:
    n = t.order
    if n <= 2:
        return list(range(n))
    deg = list(t.degrees)
    layer = [v for v in range(n) if deg[v] <= 1]
    remaining = n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def rooted_code(t: Graph, root: int) -> str:
    parent = {root: -1}
    order = [root]
    for v in order:
        for w in t.adj[v]:
            if w not in parent:
                parent[w] = v
                order.append(w)
    codes: dict[int, list[str]] = {v: [] for v in order}
    out = {}
    for v in reversed(order):
        out[v] = "(" + "".join(sorted(codes[v])) + ")"
        if parent[v] >= 0:
            codes[parent[v]].append(out[v])
    return out[root]


def canonical_code(t: Graph) -> str:
    if not t.is_tree():
        raise NotATree("input is not a tree")
    return min(rooted_code(t, c) for c in tree_centers(t))


def tree_from_code(code: str) -> Graph:
    """Rebuild a tree from a rooted parenthesis code, numbering vertices in preorder."""
    edges = []
    stack: list[int] = []
    nxt = 0
    for ch in code:
        if ch == "(":
            if stack:
                edges.append((stack[-1], nxt))
            stack.append(nxt)
            nxt += 1
        else:
            stack.pop()
    return Graph.from_edges(nxt, edges)


@lru_cache(maxsize=None)
def _trees_codes(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("()",)
    seen: dict[str, None] = {}
    for code in _trees_codes(n - 1):
        t = tree_from_code(code)
        for v in range(t.order):
            g = t.add_edges([(v, t.order)], new_vertices=1)
            seen.setdefault(canonical_code(g), None)
    return tuple(sorted(seen))


def enumerate_trees(n: int) -> Iterator[Graph]:
    """One tree per isomorphism class on ``n`` vertices, in canonical-code order."""
    if n < 1:
        raise ValueError("n must be positive")
    for code in _trees_codes(n):
        yield tree_from_code(code)


@dataclass
class CensusReport:
    order: int
    total_trees: int
    per_label: dict[str, int]
    unlabeled: list[str]
    critical: int = 0


def label_any_tree(t: Graph) -> CaseLabel:
    """Label a tree, first reducing it to a critical tree when needed."""
    red, _ = critical_reduction(t)
    return case_label(red)


def census(n: int, *, bound: int = 14) -> CensusReport:
    if n > bound:
        raise ValueError(f"census order {n} exceeds bound {bound}")
    per: dict[str, int] = {}
    unlabeled = []
    total = crit = 0
    for t in enumerate_trees(n):
        total += 1
        crit += is_critical_tree(t)
        try:
            lab = label_any_tree(t).value
        except AssertionError:
            unlabeled.append(canonical_code(t))
            continue
        per[lab] = per.get(lab, 0) + 1
    return CensusReport(n, total, dict(sorted(per.items())), unlabeled, crit)
