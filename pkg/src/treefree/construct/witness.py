"""Finite truncations of the witness constructions, one builder per case.

Every builder lays out a spine (a path, a regular graph of large girth, or a
ball in a regular tree), decorates it with apexes and attachment graphs cut
out of the constraint tree, and records roles, copy families and the
truncation boundary. Infinite objects are replaced by finite surrogates:
``k = |V(T)|`` copies, ``k`` extra neighbors, and rays of length ``k``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from ..blocks import block_decomposition
from ..classify import TreeView, classify, externals
from ..graph import Graph, diameter
from . import recipes as R
from .builders import (
    Builder,
    ExtraEdges,
    InfeasibleTarget,
    RetryBudgetExhausted,
    raise_degrees,
    regular_girth_auto,
    regular_tree_ball,
)


class RecipeMismatch(R.RecipeError):
    pass


@dataclass(frozen=True)
class Witness:
    graph: Graph
    roles: tuple[str, ...]
    core: frozenset[int]
    params: R.CaseRecipe
    seed: int
    length: int
    margin: int
    keys: tuple[tuple, ...] = ()
    boundary: frozenset[int] = frozenset()
    fill: frozenset[int] = frozenset()
    copy_groups: tuple[tuple[tuple[int, ...], ...], ...] = ()
    spine: tuple[int, ...] = ()
    intervals: tuple[tuple[int, ...], ...] = ()
    gaps: tuple[tuple[int, ...], ...] = ()
    apexes: tuple[int, ...] = ()
    info: dict = field(default_factory=dict, compare=False, hash=False)

    @property
    def variant(self) -> str:
        return self.params.variant

    def role_map(self) -> dict[int, str]:
        return dict(enumerate(self.roles))

    def id_of(self, key: tuple) -> int:
        return self.keys.index(key)

    def core_spine(self) -> list[int]:
        return [v for v in self.spine if v in self.core]


# -- context and shared pieces ----------------------------------------------


@dataclass
class _Ctx:
    t: Graph
    tv: TreeView
    d: int
    n: int
    roles: dict[str, int]
    ell: int | None
    L: int
    seed: int
    b: Builder = field(default_factory=Builder)
    spine: list[int] = field(default_factory=list)
    intervals: list[list[int]] = field(default_factory=list)
    gaps: list[list[int]] = field(default_factory=list)
    apexes: list[int] = field(default_factory=list)
    info: dict = field(default_factory=dict)
    margin: int | None = None

    def rng(self, name: str) -> random.Random:
        return random.Random(f"{self.seed}:{name}")


def _stream(given: tuple[int, ...] | None, allowed: Iterable[int], seed: int, name: str) -> Iterator[int]:
    """Given values repeated cyclically, or a seeded random choice per position."""
    if given is not None:
        return itertools.cycle(given)
    rng = random.Random(f"{seed}:{name}")
    pool = sorted(set(allowed))
    return (rng.choice(pool) for _ in itertools.count())


def _piece(t: Graph, verts: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    sub, old = t.induced(sorted(verts))
    return sub, {o: i for i, o in enumerate(old)}


def _branch(c: _Ctx) -> list[int]:
    return [v for v in range(c.t.order) if c.tv.deg[v] >= 3]


def _attach(
    c: _Ctx,
    idx: int,
    host: int,
    base: Graph,
    root: int,
    fixed: Iterable[int],
    copies: int,
    pend: Iterable[int] = (),
    tag: str = "H",
) -> list[int]:
    """Free amalgam of ``copies`` copies of ``base`` over ``fixed``, glued at ``host`` via ``root``.

    Vertices in ``pend`` receive ``k`` fresh neighbors (in every copy when not fixed).
    Returns the ids of all created vertices.
    """
    b = c.b
    prefix = (tag, idx)
    role = f"attachment_copy({idx})"
    start = len(b.keys)
    fixed = set(fixed) | {root}
    m0 = {root: host}
    for x in sorted(fixed - {root}):
        m0[x] = b.add(prefix + ("f", x), role)
    maps = []
    for j in range(copies):
        m = dict(m0)
        for x in range(base.order):
            if x not in m:
                m[x] = b.add(prefix + ("c", j, x), role)
        for x, y in base.edges:
            b.edge(m[x], m[y])
        maps.append(m)
    if copies >= 2 and base.order > len(fixed):
        b.groups.append([prefix + ("c", j) for j in range(copies)])
    for x in sorted(set(pend)):
        if x in fixed:
            b.pendants(m0[x], c.n, prefix + ("f", x), role)
        else:
            for j, m in enumerate(maps):
                b.pendants(m[x], c.n, prefix + ("c", j, x), role)
    return list(range(start, len(b.keys)))


def _raise_trees(c: _Ctx, verts: Iterable[int], target: int) -> None:
    """Bring vertices up to ``target`` with (target)-regular trees: depth 1, or rays when the arity is 1."""
    arity = target - 1
    if arity < 1:
        return
    depth = 1 if arity >= 2 else c.n
    deg = c.b.degrees()
    for v in sorted(set(verts)):
        need = target - deg[v]
        if need > 0:
            c.b.tree(v, need, arity, depth, c.b.keys[v] + ("t",), "filler", fill=arity >= 2)


def _raise_spine_edges(c: _Ctx, verts: list[int], target: int, girth_floor: int) -> None:
    """Chords between the given spine vertices up to degree ``target``, keeping the girth.

    A chorded spine has no ends, so the path ends stop counting as truncation boundary.
    """
    g = c.b.graph()
    tgt = {v: target for v in verts if g.degrees[v] < target}
    if not tgt:
        return
    if sum(target - g.degrees[v] for v in tgt) % 2:
        tgt[max(tgt)] -= 1
    out = raise_degrees(g, tgt, ExtraEdges(girth_floor, frozenset(verts)), seed=c.seed)
    for u, v in out.edges - g.edges:
        c.b.edge(u, v)
    c.b.boundary.difference_update({c.spine[0], c.spine[-1]})
    c.info["girth_floor"] = girth_floor


def _lay_path(c: _Ctx, p_stream: Iterator[int], q_stream: Iterator[int]) -> None:
    """Path of ``L`` vertices cut into alternating intervals and gaps."""
    b = c.b
    pos, i, prev = 0, 0, None
    ps, qs = [], []
    while pos < c.L:
        p = next(p_stream)
        if p < 1:
            raise R.RecipeError("interval lengths must be positive")
        seg = []
        for _ in range(p):
            if pos >= c.L:
                break
            v = b.add(("s", pos), f"interval({i})")
            if prev is not None:
                b.edge(prev, v)
            prev = v
            seg.append(v)
            pos += 1
        c.intervals.append(seg)
        ps.append(p)
        q = next(q_stream)
        gap = []
        for _ in range(q):
            if pos >= c.L:
                break
            v = b.add(("s", pos), f"gap({i})")
            b.edge(prev, v)
            prev = v
            gap.append(v)
            pos += 1
        c.gaps.append(gap)
        qs.append(q)
        i += 1
    c.spine = [b[("s", k)] for k in range(c.L)]
    b.boundary.update({c.spine[0], c.spine[-1]})
    c.info["p"] = ps
    c.info["q"] = qs


def _add_apexes(c: _Ctx) -> None:
    for i, seg in enumerate(c.intervals):
        bi = c.b.add(("b", i), f"apex({i})")
        for v in seg:
            c.b.edge(bi, v)
        c.apexes.append(bi)


def _regular_spine(c: _Ctx, degree: int, girth_min: int) -> Graph:
    p = regular_girth_auto(degree, girth_min, c.L, c.seed)
    for x in range(p.order):
        c.b.add(("s", x), "spine")
    for x, y in p.edges:
        c.b.edge(c.b[("s", x)], c.b[("s", y)])
    c.spine = [c.b[("s", x)] for x in range(p.order)]
    c.info["girth"] = girth_min
    return p


def _doubled_H(c: _Ctx, v0: int, v1: int) -> tuple[Graph, int, set[int]]:
    """``T`` minus the ``v0``-component containing ``v1``, with its maximal-degree vertices."""
    comp = c.tv.component(v0, v1)
    base, m = _piece(c.t, set(range(c.t.order)) - comp)
    v1set = {m[x] for x in m if c.tv.deg[x] == c.d}
    return base, m[v0], v1set


# -- per-case builders ------------------------------------------------------


def _monarchy(c: _Ctx, r: R.Monarchy) -> None:
    v = c.roles["v1"]
    ecc = max(c.t.bfs(v).values())
    _regular_spine(c, c.d - 1, r.girth or max(5, 2 * ecc + 1))


def _stardom(c: _Ctx, r: R.Stardom) -> None:
    b = c.b
    eps = _stream(r.eps, (0, 1), c.seed, "eps")
    a = [b.add(("a", i), "spine") for i in range(c.L + 1)]
    used = []
    for i in range(c.L):
        e = next(eps)
        used.append(e)
        role = f"attachment_copy({i})"
        width = 2 if e == 0 else c.n
        hs = [b.add(("h", i, j), role) for j in range(width)]
        for h in hs:
            b.edge(a[i], h)
            b.edge(a[i + 1], h)
        if e == 0:
            b.edge(hs[0], hs[1])
        else:
            b.edge(a[i], a[i + 1])
        if width >= 2:
            b.groups.append([("h", i, j) for j in range(width)])
    c.spine = a
    c.intervals = [[a[i], a[i + 1]] for i in range(c.L)]
    b.boundary.update({a[0], a[-1]})
    c.info["eps"] = used


def _proto(c: _Ctx, r: R.Proto) -> None:
    if c.d < 4:
        raise RecipeMismatch("the proto construction needs maximal degree at least 4")
    vd = [v for v in range(c.t.order) if c.tv.deg[v] == c.d]
    if len(vd) < 2:
        raise RecipeMismatch("the proto construction needs two vertices of maximal degree")
    ext = externals(c.tv, vd)
    leafy = [v for v in ext if any(c.tv.deg[w] == 1 for w in c.t.adj[v])]
    v1 = (leafy or ext)[0]
    other = next(u for u in vd if u != v1)
    comp = c.tv.component(v1, other)
    base, m = _piece(c.t, comp | {v1})
    girth_min = r.girth or 5
    for s in range(50):
        p = regular_girth_auto(c.d - 2, girth_min, c.L, c.seed + s)
        if len(block_decomposition(p).blocks) == 1:
            break
    else:
        raise RetryBudgetExhausted("no 2-connected spine found")
    for x in range(p.order):
        c.b.add(("s", x), "spine")
    for x, y in p.edges:
        c.b.edge(c.b[("s", x)], c.b[("s", y)])
    c.spine = [c.b[("s", x)] for x in range(p.order)]
    for x, u in enumerate(c.spine):
        _attach(c, x, u, base, m[v1], (), 1)
    _raise_trees(c, range(len(c.b.keys)), c.d - 1)
    c.info.update(girth=girth_min, v1=v1)


def _IA(c: _Ctx, r: R.IA) -> None:
    v0, v1 = c.roles["v0"], c.roles["v1"]
    _regular_spine(c, c.d - 1, r.girth or 5)
    b0 = c.b.add(("b", 0), "apex(0)")
    for u in c.spine:
        c.b.edge(b0, u)
    c.apexes.append(b0)
    c.intervals = [list(c.spine)]
    comp = c.tv.component(v0, v1)
    base, m = _piece(c.t, set(range(c.t.order)) - comp)
    _attach(c, 0, b0, base, m[v0], (), 1)


def _doubled_on_apexes(c: _Ctx) -> list[int]:
    base, root, v1set = _doubled_H(c, c.roles["v0"], c.roles["v1"])
    made = []
    for i, bi in enumerate(c.apexes):
        made += _attach(c, i, bi, base, root, v1set, 2, v1set)
    return made


def _IB(c: _Ctx, r: R.IB) -> None:
    ell = c.ell
    gap = r.gap or ell
    _lay_path(c, _stream(r.p, (3 * ell - 3, 6 * ell), c.seed, "p"), itertools.repeat(gap))
    _add_apexes(c)
    _doubled_on_apexes(c)


def _IC(c: _Ctx, r: R.IC) -> None:
    _lay_path(c, _stream(r.p, (2, 3), c.seed, "p"), itertools.repeat(2))
    _add_apexes(c)
    made = _doubled_on_apexes(c)
    if c.d > 3:
        gap_vertices = [v for gap in c.gaps for v in gap]
        _raise_spine_edges(c, gap_vertices, c.d - 1, r.girth or 5)
    _raise_trees(c, made, c.d - 1)


def _IIA(c: _Ctx, r: R.IIA) -> None:
    _lay_path(c, itertools.repeat(1), itertools.repeat(0))
    _add_apexes(c)
    _doubled_on_apexes(c)
    _raise_spine_edges(c, c.spine, c.d - 1, r.girth or 5)


def _IIB(c: _Ctx, r: R.IIB) -> None:
    spacing = r.spacing or 10 * c.n
    bits = _stream(r.bits, (0, 1), c.seed, "bits")

    def lengths() -> Iterator[int]:
        for i in itertools.count():
            yield (2 if next(bits) else 1) if i % spacing == 0 else 1

    _lay_path(c, lengths(), itertools.repeat(0))
    _add_apexes(c)
    _doubled_on_apexes(c)
    c.info["spacing"] = spacing


def _IIIA(c: _Ctx, r: R.IIIA) -> None:
    _lay_path(c, itertools.repeat(3), _stream(r.q, (1, 2), c.seed, "q"))
    _add_apexes(c)


def _IIIB(c: _Ctx, r: R.IIIB) -> None:
    v0, v2 = c.roles["v0"], c.roles["v2"]
    comp = c.tv.component(v0, v2)
    base, m = _piece(c.t, comp)
    fixed = {m[x] for x in comp if c.tv.deg[x] >= 3}
    _lay_path(c, _stream(r.p, (2, 3), c.seed, "p"), itertools.repeat(1))
    _add_apexes(c)
    for i, bi in enumerate(c.apexes):
        _attach(c, i, bi, base, m[v2], fixed, c.n)


def _global_attachment(c: _Ctx) -> None:
    """Global apex joined to every apex, carrying copies of the far side of ``T`` at ``v2``."""
    v0, v1 = c.roles["v0"], c.roles["v1"]
    path = c.t.shortest_path(v1, v0)
    v2 = path[2]
    comp = c.tv.component(v2, v1)
    base, m = _piece(c.t, set(range(c.t.order)) - comp)
    route = path[2:]
    fixed = {m[x] for x in m if c.tv.deg[x] >= 3} | {m[x] for x in route}
    pend = {m[x] for x in route[1:-1]}
    g = c.b.add(("g",), "global_apex")
    for bi in c.apexes:
        c.b.edge(g, bi)
    _attach(c, -1, g, base, m[v2], fixed, c.n, pend)
    c.info.update(global_apex=g, v2=v2)


def _IIIC(c: _Ctx, r: R.IIIC | R.IIID) -> None:
    _lay_path(c, itertools.repeat(3), _stream(r.q, (1, 2), c.seed, "q"))
    _add_apexes(c)
    _global_attachment(c)


def _iiid_special(c: _Ctx) -> bool:
    """Four branch vertices in two adjacent pairs, the pairs one degree-2 vertex apart."""
    br = _branch(c)
    if len(br) != 4 or c.d != 3:
        return False
    pairs = [(u, v) for u, v in itertools.combinations(br, 2) if c.t.has_edge(u, v)]
    if len(pairs) != 2 or set(pairs[0]) & set(pairs[1]):
        return False
    return min(c.tv.dist(u, v) for u in pairs[0] for v in pairs[1]) == 2


def _IIID(c: _Ctx, r: R.IIID) -> None:
    if not _iiid_special(c):
        c.info["special"] = False
        _IIIC(c, r)
        return
    c.info["special"] = True
    b = c.b
    _lay_path(c, itertools.repeat(2), itertools.repeat(1))
    _add_apexes(c)
    gaps = _stream(r.gaps, (2, 3), c.seed, "gaps")
    s = [next(gaps) - 2]
    while s[-1] < len(c.apexes):
        s.append(s[-1] + next(gaps))
    S = [i for i in s if i < len(c.apexes)]
    for i, bi in enumerate(c.apexes):
        role = f"attachment_copy({i})"
        ci = b.add(("c", i), role)
        cp = b.add(("cp", i), role)
        b.edge(bi, ci)
        b.edge(ci, cp)
        for tag, v in (("c", ci), ("cp", cp)):
            for j in range(c.n):
                b.ray(v, c.n, (tag, i, "ray", j))
            b.groups.append([(tag, i, "ray", j) for j in range(c.n)])
    for i in S:
        b.pendants(c.apexes[i], c.n, ("b", i), f"attachment_copy({i})")
    c.info["S"] = S


def _IVA(c: _Ctx, r: R.IVA) -> None:
    _lay_path(c, itertools.repeat(4), _stream(r.q, (1, 2), c.seed, "q"))
    _add_apexes(c)


def _IVB(c: _Ctx, r: R.IVB) -> None:
    _lay_path(c, itertools.repeat(6), _stream(r.q, (0, 1), c.seed, "q"))
    _add_apexes(c)
    for gap in c.gaps:
        for v in gap:
            c.b.pendants(v, c.n, c.b.keys[v], "filler")


def _place_tree_intervals(
    c: _Ctx, ball: Graph, depth: list[int], plens: Iterator[int], seed: int, start_depth: int | None
) -> list[list[int]]:
    """Greedy interval placement on a regular-tree ball: the first interval starts at depth
    ``start_depth`` (drawn from the seed when None), each later one at distance exactly
    ``ell + 1`` from the chosen ones, and each grows away from them.

    Intervals at distance exactly ``ell`` would let the two degree-d vertices of the tree
    sit in two different intervals, so the spacing is one more than ``ell``.
    """
    sep = c.ell + 1
    n = ball.order
    rng = random.Random(f"{seed}:ivc")
    inf = float("inf")
    dist = [inf] * n
    owner = [-1] * n
    out: list[list[int]] = []

    def settle(seg: list[int]) -> None:
        for v in seg:
            owner[v] = len(out)
        frontier = list(seg)
        for v in seg:
            dist[v] = 0
        r = 0
        while frontier:
            r += 1
            nxt = []
            for v in frontier:
                for w in ball.adj[v]:
                    if dist[w] > r:
                        dist[w] = r
                        nxt.append(w)
            frontier = nxt
        out.append(seg)

    if start_depth is None:
        start_depth = rng.randrange(max(depth) + 1)
    start = min(v for v in range(n) if depth[v] == min(start_depth, max(depth)))
    while start is not None:
        seg = [start]
        cur = start
        plen = next(plens)
        while len(seg) < plen:
            opts = [w for w in ball.adj[cur] if w not in seg and owner[w] < 0 and dist[w] >= sep]
            if not opts:
                break
            best = max((dist[w], depth[w]) for w in opts)
            cur = rng.choice(sorted(w for w in opts if (dist[w], depth[w]) == best))
            seg.append(cur)
        settle(seg)
        cands = [v for v in range(n) if owner[v] < 0 and dist[v] == sep]
        if not cands:
            start = None
        else:
            low = min(depth[v] for v in cands)
            start = rng.choice(sorted(v for v in cands if depth[v] == low))
    return out


def _audit_tree_intervals(ball: Graph, segs: list[list[int]], ell: int, core: set[int]) -> int:
    """Check spacing (> ell) and cover (every core vertex within ell-1 of an interval).

    Returns how many non-interval core vertices are within ell-1 of two or more intervals.
    """
    near: list[dict[int, float]] = [{} for _ in range(ball.order)]
    for i, seg in enumerate(segs):
        d = ball.multi_bfs(seg)
        for v in range(ball.order):
            if d[v] <= ell:
                near[v][i] = d[v]
    for i, seg in enumerate(segs):
        if any(j != i for v in seg for j in near[v]):
            raise InfeasibleTarget("two intervals lie within ell of each other")
    twice = 0
    for v in core:
        within = [i for i, dv in near[v].items() if dv <= ell - 1]
        if not within:
            raise InfeasibleTarget(f"spine vertex {v} is not within ell-1 of any interval")
        twice += len(within) >= 2
    return twice


def _IVC(c: _Ctx, r: R.IVC) -> None:
    ell = c.ell
    plens = _stream(r.p, (3 * ell - 3, 6 * ell), c.seed, "p")
    margin = c.margin
    radius = r.radius
    if radius is None:
        radius = 1
        while regular_tree_ball(c.d - 1, radius)[0].order < c.L:
            radius += 1
        radius = max(radius, margin + 1)
    ball, depth = regular_tree_ball(c.d - 1, radius)
    b = c.b
    for x in range(ball.order):
        b.add(("s", x), "spine")
    for x, y in ball.edges:
        b.edge(x, y)
    c.spine = list(range(ball.order))
    b.boundary.update(x for x in range(ball.order) if depth[x] == radius)
    seed = r.placement_seed if r.placement_seed is not None else c.seed
    segs = _place_tree_intervals(c, ball, depth, plens, seed, r.start_depth)
    core = {x for x in range(ball.order) if depth[x] <= radius - margin}
    twice = _audit_tree_intervals(ball, segs, ell, core)
    for i, seg in enumerate(segs):
        for v in seg:
            b.roles[v] = f"interval({i})"
    c.intervals = segs
    _add_apexes(c)
    for bi in c.apexes:
        b.tree(bi, c.n, c.d - 2, 2, b.keys[bi] + ("t",), "filler", fill=True)
    c.info.update(radius=radius, p=[len(seg) for seg in segs], covered_twice=twice)


def _ivd_attachment(c: _Ctx, prime: bool) -> tuple[Graph, int, set[int], set[int]]:
    vs = c.roles["v_star"]
    vd = sorted(v for v in range(c.t.order) if c.tv.deg[v] == c.d)
    adjacent = [u for u in vd if c.t.has_edge(vs, u)]
    v0 = adjacent[0] if prime and adjacent else c.roles["v0"]
    others = [u for u in vd if u != v0]
    verts = {vs}
    for u in others:
        verts |= c.tv.component(vs, u)
    base, m = _piece(c.t, verts)
    fixed = {m[vs]} | {m[u] for u in others if not prime or c.t.has_edge(vs, u)}
    pend = {m[vs]} | {m[u] for u in others}
    c.info["v0"] = v0
    return base, m[vs], fixed, pend


def _IVD(c: _Ctx, r: R.IVD | R.IVDprime, prime: bool = False) -> None:
    base, root, fixed, pend = _ivd_attachment(c, prime)
    _lay_path(c, _stream(r.p, (1, 2), c.seed, "p"), itertools.repeat(0))
    _add_apexes(c)
    for i, bi in enumerate(c.apexes):
        _attach(c, i, bi, base, root, fixed, 2, pend)
    _raise_spine_edges(c, c.spine, c.d - 1, r.girth or 5)
    ends = {c.spine[0], c.spine[-1]} & c.b.boundary
    _raise_trees(c, (v for v in range(len(c.b.keys)) if v not in ends), c.d - 1)


def _IVDprime(c: _Ctx, r: R.IVDprime) -> None:
    _IVD(c, r, prime=True)


_BUILDERS = {
    "Monarchy": _monarchy,
    "Stardom": _stardom,
    "Proto": _proto,
    "IA": _IA,
    "IB": _IB,
    "IC": _IC,
    "IIA": _IIA,
    "IIB": _IIB,
    "IIIA": _IIIA,
    "IIIB": _IIIB,
    "IIIC": _IIIC,
    "IIID": _IIID,
    "IVA": _IVA,
    "IVB": _IVB,
    "IVC": _IVC,
    "IVD": _IVD,
    "IVDprime": _IVDprime,
}

# cases whose spine is generated at random as a whole, so truncations are not nested
NON_MONOTONE = frozenset({"Monarchy", "Proto", "IA", "IIA", "IVC", "IVD", "IVDprime"})


def _roles_for(t: Graph, recipe: R.CaseRecipe) -> dict[str, int]:
    cl = classify(t)
    if recipe.variant == "Proto":
        return dict(cl.roles)
    if cl.label.value != recipe.variant:
        raise RecipeMismatch(f"tree is in case {cl.label.value}, recipe is {recipe.variant}")
    out = dict(cl.roles)
    if cl.profile is not None:
        if cl.profile.ell is not None:
            out["ell"] = cl.profile.ell
        if cl.profile.v_star is not None:
            out.setdefault("v_star", cl.profile.v_star)
    return out


def build_witness(
    t: Graph,
    recipe: R.CaseRecipe,
    L: int,
    seed: int = 0,
    *,
    margin: int | None = None,
) -> Witness:
    """Finite truncation of the construction for ``recipe`` on the critical tree ``t``."""
    if recipe.variant not in _BUILDERS:
        raise R.RecipeError(f"unknown recipe variant {recipe.variant!r}")
    n = t.order
    if L < 4 * n:
        raise R.RecipeError(f"truncation length must be at least 4|V(T)| = {4 * n}")
    roles = _roles_for(t, recipe)
    ell = roles.pop("ell", None)
    if recipe.variant == "IVC" and ell is None:
        ell = TreeView(t).dist(roles["v0"], roles["v1"])
    recipe.check(ell)
    tv = TreeView(t)
    if margin is None:
        margin = diameter(t) + 1 if recipe.variant == "IVC" else n
    c = _Ctx(t, tv, t.max_degree(), n, roles, ell, L, seed, margin=margin)
    _BUILDERS[recipe.variant](c, recipe)
    return _finish(c, recipe, margin)


def _finish(c: _Ctx, recipe: R.CaseRecipe, margin: int) -> Witness:
    b = c.b
    g = b.graph()
    if b.boundary:
        # the global apex sees every apex, so distances are measured without it
        hub = {v for v, role in enumerate(b.roles) if role == "global_apex"}
        dist = _distances_avoiding(g, b.boundary, hub)
        core = frozenset(v for v in range(g.order) if dist[v] >= margin)
    else:
        core = frozenset(range(g.order))
    info = dict(c.info)
    info.update({k: v for k, v in c.roles.items()})
    if c.ell is not None:
        info["ell"] = c.ell
    return Witness(
        graph=g,
        roles=tuple(b.roles),
        core=core,
        params=recipe,
        seed=c.seed,
        length=c.L,
        margin=margin,
        keys=tuple(b.keys),
        boundary=frozenset(b.boundary),
        fill=frozenset(b.fill),
        copy_groups=tuple(tuple(fam) for fam in b.copy_groups()),
        spine=tuple(c.spine),
        intervals=tuple(tuple(s) for s in c.intervals),
        gaps=tuple(tuple(s) for s in c.gaps),
        apexes=tuple(c.apexes),
        info=info,
    )


def _distances_avoiding(g: Graph, sources: Iterable[int], avoid: set[int]) -> list[float]:
    if not avoid:
        return g.multi_bfs(sources)
    keep = [v for v in range(g.order) if v not in avoid]
    sub, old = g.induced(keep)
    new = {o: i for i, o in enumerate(old)}
    d = sub.multi_bfs(new[v] for v in sources if v in new)
    out = [float("inf")] * g.order
    for i, o in enumerate(old):
        out[o] = d[i]
    return out


def is_truncation_of(small: Witness, big: Witness) -> bool:
    """Whether ``small`` sits inside ``big`` key by key (vertices, roles and edges)."""
    where = {k: i for i, k in enumerate(big.keys)}
    m = []
    for k in small.keys:
        if k not in where:
            return False
        m.append(where[k])
    return all(big.graph.has_edge(m[u], m[v]) for u, v in small.graph.edges)
