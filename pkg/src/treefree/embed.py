"""Exhaustive search: subgraph monomorphism, isomorphism, semicontractive metric maps.

The monomorphism engine is a backtracking search tuned for tree-like patterns in
sparse hosts. Pattern vertices are ordered so that branch vertices are placed
first, each drawn from a ball around an already placed branch vertex, and the
connecting paths are filled afterwards. Leaves are assigned last by bipartite
matching, which removes the factorial blowup from interchangeable leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .graph import Graph


class InconsistentAnchors(ValueError):
    pass


class SizeBoundExceeded(ValueError):
    pass


Embedding = dict[int, int]


class _Balls:
    """Lazily computed truncated BFS balls in the host."""

    def __init__(self, host: Graph, radius: int):
        self.host = host
        self.radius = radius
        self._cache: dict[int, dict[int, int]] = {}

    def __call__(self, v: int) -> dict[int, int]:
        ball = self._cache.get(v)
        if ball is None:
            ball = self.host.bfs(v, self.radius)
            self._cache[v] = ball
        return ball


def _pattern_dist(pattern: Graph) -> list[dict[int, int]]:
    return [pattern.bfs(v) for v in range(pattern.order)]


def _search_order(
    pattern: Graph,
    pdist: list[dict[int, int]],
    anchored: Sequence[int],
    deferred: set[int],
) -> list[int]:
    deg = pattern.degrees
    order: list[int] = list(anchored)
    placed = set(order)
    todo = [v for v in range(pattern.order) if v not in placed and v not in deferred]
    keys = {v for v in todo if deg[v] >= 3}

    def closeness(v: int) -> int:
        ds = [pdist[v][u] for u in placed if u in pdist[v]]
        return min(ds) if ds else 10**9

    while len(order) < pattern.order - len(deferred):
        remaining_keys = [v for v in keys if v not in placed]
        near_keys = [v for v in remaining_keys if closeness(v) < 10**9]
        if near_keys:
            nxt = min(near_keys, key=lambda v: (closeness(v), -deg[v], v))
        else:
            # fill vertices connected to the placed set before opening a new component
            frontier = [v for v in todo if v not in placed and any(w in placed for w in pattern.adj[v])]
            if frontier:
                nxt = min(
                    frontier,
                    key=lambda v: (-sum(w in placed for w in pattern.adj[v]), -deg[v], v),
                )
            elif remaining_keys:
                nxt = min(remaining_keys, key=lambda v: (-deg[v], v))
            else:
                nxt = min((v for v in todo if v not in placed), key=lambda v: (-deg[v], v))
        order.append(nxt)
        placed.add(nxt)
    return order


def _match_leaves(
    leaves: list[int],
    parent_img: list[int],
    host: Graph,
    used: set[int],
) -> list[int] | None:
    """Kuhn's augmenting-path matching of deferred leaves to free host neighbors."""
    cand = [sorted(w for w in host.adj[a] if w not in used) for a in parent_img]
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        for h in cand[i]:
            if h in seen:
                continue
            seen.add(h)
            if h not in owner or augment(owner[h], seen):
                owner[h] = i
                return True
        return False

    for i in range(len(leaves)):
        if not augment(i, set()):
            return None
    out = [0] * len(leaves)
    for h, i in owner.items():
        out[i] = h
    return out


def find_monomorphism(
    pattern: Graph,
    host: Graph,
    anchors: Mapping[int, int] | None = None,
    *,
    induced: bool = False,
    copy_groups: Sequence[Sequence[Sequence[int]]] | None = None,
) -> Embedding | None:
    """Injective edge-preserving map pattern -> host extending ``anchors``, or None.

    ``copy_groups`` optionally lists families of host vertex tuples that are
    interchangeable by host automorphisms fixing everything outside the family.
    Only the first untouched copy of a family is tried, which is sound for any
    such family (including nested ones) and prunes symmetric branches.
    """
    anchors = dict(anchors or {})
    _check_anchors(pattern, host, anchors, induced)
    n = pattern.order
    if n == 0:
        return {}
    if n > host.order:
        return None
    pdeg = pattern.degrees
    hdeg = host.degrees
    if not induced:
        ps = sorted(pdeg, reverse=True)
        hs = sorted(hdeg, reverse=True)
        if any(a > b for a, b in zip(ps, hs)):
            return None
        if pattern.size > host.size:
            return None

    pdist = _pattern_dist(pattern)
    deferred: set[int] = set()
    if not induced:
        for v in range(n):
            if pdeg[v] == 1 and v not in anchors:
                (w,) = pattern.adj[v]
                if pdeg[w] >= 2:
                    deferred.add(v)
    order = _search_order(pattern, pdist, sorted(anchors), deferred)
    pos = {v: i for i, v in enumerate(order)}
    landmarks = {v for v in order if pdeg[v] >= 3 or v in anchors}
    radius = max((d for row in pdist for d in row.values()), default=0)
    balls = _Balls(host, radius)

    # per position: earlier neighbors, earlier non-neighbors (induced), distance checks
    back_nb: list[list[int]] = []
    back_non: list[list[int]] = []
    checks: list[list[tuple[int, int]]] = []
    for i, v in enumerate(order):
        earlier = order[:i]
        back_nb.append([u for u in earlier if u in pattern.adj[v]])
        back_non.append([u for u in earlier if u not in pattern.adj[v]] if induced else [])
        cs = [(u, pdist[v][u]) for u in earlier if u in landmarks and u in pdist[v] and pdist[v][u] >= 2]
        cs.sort(key=lambda t: t[1])
        checks.append(cs)
    # unmapped neighbor count right after placing position i
    later_nb = [sum(1 for w in pattern.adj[v] if w not in pos or pos[w] > i) for i, v in enumerate(order)]

    groups = [list(fam) for fam in copy_groups or ()]
    touched: list[list[int]] = [[0] * len(fam) for fam in groups]

    leaves = sorted(deferred)
    leaf_parent = [next(iter(pattern.adj[v])) for v in leaves]

    f: dict[int, int] = {}
    used: set[int] = set()

    membership: dict[int, list[tuple[int, int]]] = {}
    if groups:
        for gi, fam in enumerate(groups):
            for ci, c in enumerate(fam):
                for h in c:
                    membership.setdefault(h, []).append((gi, ci))

    def symmetric_skip(h: int) -> bool:
        for gi, ci in membership.get(h, ()):
            if touched[gi][ci] == 0 and any(touched[gi][cj] == 0 for cj in range(ci)):
                return True
        return False

    def occupy_fast(h: int, delta: int) -> None:
        for gi, ci in membership.get(h, ()):
            touched[gi][ci] += delta

    def candidates(i: int) -> list[int]:
        v = order[i]
        if v in anchors:
            return [anchors[v]]
        if back_nb[i]:
            u = min(back_nb[i], key=lambda u: hdeg[f[u]])
            return sorted(host.adj[f[u]])
        if checks[i]:
            u, d = checks[i][0]
            return sorted(balls(f[u]))
        return [h for h in range(host.order) if hdeg[h] >= pdeg[v]]

    def feasible(i: int, h: int) -> bool:
        v = order[i]
        if h in used or hdeg[h] < pdeg[v]:
            return False
        adj_h = host.adj[h]
        for u in back_nb[i]:
            if f[u] not in adj_h:
                return False
        for u in back_non[i]:
            if f[u] in adj_h:
                return False
        for u, d in checks[i]:
            if balls(f[u]).get(h, d + 1) > d:
                return False
        need = later_nb[i]
        if need:
            free = 0
            for w in adj_h:
                if w not in used:
                    free += 1
                    if free >= need:
                        break
            if free < need:
                return False
        if membership and v not in anchors and symmetric_skip(h):
            return False
        return True

    def rec(i: int) -> bool:
        if i == len(order):
            if not leaves:
                return True
            got = _match_leaves(leaves, [f[p] for p in leaf_parent], host, used)
            if got is None:
                return False
            for v, h in zip(leaves, got):
                f[v] = h
            return True
        v = order[i]
        for h in candidates(i):
            if not feasible(i, h):
                continue
            f[v] = h
            used.add(h)
            occupy_fast(h, 1)
            if rec(i + 1):
                return True
            occupy_fast(h, -1)
            used.discard(h)
            del f[v]
        return False

    if rec(0):
        return dict(sorted(f.items()))
    return None


def image_sets(pattern: Graph, host: Graph, anchors: Mapping[int, int]) -> set[frozenset[int]]:
    """Vertex sets of all monomorphic images extending ``anchors`` (plain exhaustive search)."""
    order = sorted(anchors)
    rest = [v for v in range(pattern.order) if v not in anchors]
    while rest:
        nxt = next((v for v in rest if any(w in order for w in pattern.adj[v])), rest[0])
        order.append(nxt)
        rest.remove(nxt)
    found: set[frozenset[int]] = set()
    f: dict[int, int] = {}

    def rec(i: int) -> None:
        if i == len(order):
            found.add(frozenset(f.values()))
            return
        v = order[i]
        placed_nb = [u for u in pattern.adj[v] if u in f]
        if v in anchors:
            cands = [anchors[v]]
        elif placed_nb:
            cands = sorted(host.adj[f[placed_nb[0]]])
        else:
            cands = range(host.order)
        for h in cands:
            if h in f.values():
                continue
            if all(host.has_edge(h, f[u]) for u in pattern.adj[v] if u in f):
                f[v] = h
                rec(i + 1)
                del f[v]

    rec(0)
    return found


def _check_anchors(pattern: Graph, host: Graph, anchors: Mapping[int, int], induced: bool) -> None:
    imgs = list(anchors.values())
    if len(set(imgs)) != len(imgs):
        raise InconsistentAnchors("anchor map is not injective")
    for p, h in anchors.items():
        if not (0 <= p < pattern.order and 0 <= h < host.order):
            raise InconsistentAnchors(f"anchor {p}->{h} out of range")
    items = list(anchors.items())
    for a in range(len(items)):
        for b in range(a + 1, len(items)):
            (p, h), (q, g) = items[a], items[b]
            pe, he = pattern.has_edge(p, q), host.has_edge(h, g)
            if pe and not he:
                raise InconsistentAnchors(f"pattern edge {p}-{q} maps to non-edge {h}-{g}")
            if induced and he and not pe:
                raise InconsistentAnchors(f"non-edge {p}-{q} maps to edge {h}-{g}")


def is_free(host: Graph, pattern: Graph, *, induced: bool = False, copy_groups=None) -> bool:
    return find_monomorphism(pattern, host, induced=induced, copy_groups=copy_groups) is None


# -- isomorphism ------------------------------------------------------------


def _refine(adj: Sequence[frozenset[int]], colors: list[int]) -> list[int]:
    """Colour refinement to a stable partition, with canonical colour names."""
    n = len(colors)
    ncls = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)]
        names = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [names[s] for s in sigs]
        if len(names) == ncls:
            return new
        colors, ncls = new, len(names)


def graphs_isomorphic(
    g: Graph,
    h: Graph,
    *,
    bound: int = 64,
    colors_g: Sequence[int] | None = None,
    colors_h: Sequence[int] | None = None,
) -> bool:
    """Exact isomorphism test (optionally colour-preserving) by refinement + individualization."""
    if max(g.order, h.order) > bound:
        raise SizeBoundExceeded(f"order exceeds isomorphism bound {bound}")
    if g.order != h.order or g.size != h.size:
        return False
    if sorted(g.degrees) != sorted(h.degrees):
        return False
    n = g.order
    cg = list(colors_g) if colors_g is not None else [0] * n
    ch = list(colors_h) if colors_h is not None else [0] * n
    if sorted(cg) != sorted(ch):
        return False
    adj = list(g.adj) + [frozenset(w + n for w in s) for s in h.adj]
    return _iso_search(adj, n, cg + ch)


def _iso_search(adj: list[frozenset[int]], n: int, colors: list[int]) -> bool:
    colors = _refine(adj, colors)
    left, right = colors[:n], colors[n:]
    if sorted(left) != sorted(right):
        return False
    counts: dict[int, int] = {}
    for c in left:
        counts[c] = counts.get(c, 0) + 1
    if all(k == 1 for k in counts.values()):
        # discrete and equitable: the induced bijection is an isomorphism
        where = {c: v for v, c in enumerate(right)}
        perm = [where[c] + n for c in left]
        return all(
            {perm[w] for w in adj[v]} == set(adj[perm[v]]) for v in range(n)
        )
    target = min((c for c, k in counts.items() if k > 1), key=lambda c: (counts[c], c))
    x = left.index(target)
    fresh = max(colors) + 1
    for y in range(n, 2 * n):
        if colors[y] != target:
            continue
        trial = list(colors)
        trial[x] = fresh
        trial[y] = fresh
        if _iso_search(adj, n, trial):
            return True
    return False


# -- finite metrics ---------------------------------------------------------


@dataclass(frozen=True)
class FiniteMetric:
    points: tuple[int, ...]
    dist: np.ndarray

    def __len__(self) -> int:
        return len(self.points)

    def d(self, i: int, j: int) -> float:
        return float(self.dist[i, j])


def metric_V1(g: Graph, threshold: int) -> FiniteMetric:
    pts = tuple(v for v in range(g.order) if g.degrees[v] >= threshold)
    if not pts:
        return FiniteMetric((), np.zeros((0, 0)))
    full = np.full((len(pts), len(pts)), np.inf)
    idx = {v: i for i, v in enumerate(pts)}
    for i, v in enumerate(pts):
        for w, dd in g.bfs(v).items():
            j = idx.get(w)
            if j is not None:
                full[i, j] = dd
    return FiniteMetric(pts, full)


def find_semicontractive(a: FiniteMetric, b: FiniteMetric, *, bound: int = 12) -> list[int] | None:
    """Injective f with d_B(f x, f y) <= d_A(x, y), as a list of indices into ``b``."""
    m = len(a)
    if m > bound:
        raise SizeBoundExceeded(f"source metric has {m} points, bound is {bound}")
    if m > len(b):
        return None
    da, db = a.dist, b.dist
    f: list[int] = []
    used = [False] * len(b)

    def rec(i: int) -> bool:
        if i == m:
            return True
        for y in range(len(b)):
            if used[y]:
                continue
            if all(db[f[j], y] <= da[j, i] for j in range(i)):
                f.append(y)
                used[y] = True
                if rec(i + 1):
                    return True
                f.pop()
                used[y] = False
        return False

    return list(f) if rec(0) else None


__all__ = [
    "Embedding",
    "FiniteMetric",
    "InconsistentAnchors",
    "SizeBoundExceeded",
    "find_monomorphism",
    "find_semicontractive",
    "graphs_isomorphic",
    "image_sets",
    "is_free",
    "metric_V1",
]
