"""Shared building blocks: a keyed graph assembler, high-girth regular graphs,
free amalgamation, and degree raising."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..graph import Graph, cycle_graph, girth

Key = tuple


class RetryBudgetExhausted(RuntimeError):
    pass


class InconsistentGlue(ValueError):
    pass


class InfeasibleTarget(ValueError):
    pass


@dataclass
class Builder:
    """Assembles a graph whose vertices carry hierarchical tuple keys.

    Vertices hanging off a copy share that copy's key prefix, which lets
    interchangeable copies be listed for symmetry breaking and lets two
    truncations of one construction be compared key by key.
    """

    ids: dict[Key, int] = field(default_factory=dict)
    keys: list[Key] = field(default_factory=list)
    roles: list[str] = field(default_factory=list)
    edges: set[tuple[int, int]] = field(default_factory=set)
    boundary: set[int] = field(default_factory=set)  # truncation ends of the construction
    fill: set[int] = field(default_factory=set)  # truncation ends of degree-raising trees
    groups: list[list[Key]] = field(default_factory=list)  # lists of copy prefixes

    def add(self, key: Key, role: str) -> int:
        if key in self.ids:
            return self.ids[key]
        v = len(self.keys)
        self.ids[key] = v
        self.keys.append(key)
        self.roles.append(role)
        return v

    def __getitem__(self, key: Key) -> int:
        return self.ids[key]

    def __contains__(self, key: Key) -> bool:
        return key in self.ids

    def edge(self, u: int, v: int) -> None:
        if u == v:
            raise ValueError("self-loop")
        self.edges.add((u, v) if u < v else (v, u))

    def degrees(self) -> list[int]:
        deg = [0] * len(self.keys)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def graft(
        self,
        g: Graph,
        glue: Mapping[int, int],
        prefix: Key,
        role: str,
    ) -> dict[int, int]:
        """Add a copy of ``g``; vertices in ``glue`` are identified with existing ids."""
        m = dict(glue)
        for x in range(g.order):
            if x not in m:
                m[x] = self.add(prefix + (x,), role)
        for x, y in g.edges:
            self.edge(m[x], m[y])
        return m

    def pendants(self, v: int, count: int, prefix: Key, role: str = "filler") -> list[int]:
        out = []
        for j in range(count):
            w = self.add(prefix + ("pend", j), role)
            self.edge(v, w)
            out.append(w)
        if count >= 2:
            self.groups.append([prefix + ("pend", j) for j in range(count)])
        return out

    def ray(self, v: int, length: int, prefix: Key, role: str = "filler") -> list[int]:
        prev, out = v, []
        for j in range(length):
            w = self.add(prefix + (j,), role)
            self.edge(prev, w)
            out.append(w)
            prev = w
        if out:
            self.boundary.add(out[-1])
        return out

    def tree(
        self,
        root: int,
        children: int,
        arity: int,
        depth: int,
        prefix: Key,
        role: str = "filler",
        fill: bool = True,
    ) -> None:
        """Hang ``children`` subtrees at ``root``; inner nodes get ``arity`` children, down to ``depth``.

        Cut-off ends are recorded in ``fill`` (or in ``boundary`` when ``fill`` is false).
        """
        if depth <= 0 or children <= 0:
            return
        kids = []
        for j in range(children):
            w = self.add(prefix + (j,), role)
            self.edge(root, w)
            kids.append(prefix + (j,))
            if depth == 1:
                if arity > 0:
                    (self.fill if fill else self.boundary).add(w)
            else:
                self.tree(w, arity, arity, depth - 1, prefix + (j,), role, fill)
        if children >= 2:
            self.groups.append(kids)

    def copy_groups(self) -> list[list[tuple[int, ...]]]:
        """Expand recorded prefix groups into aligned vertex tuples."""
        out = []
        for prefixes in self.groups:
            members = []
            for pre in prefixes:
                n = len(pre)
                sub = sorted((k[n:] for k in self.keys if k[:n] == pre), key=repr)
                members.append(sub)
            if any(m != members[0] for m in members):
                continue
            fam = [tuple(self.ids[pre + s] for s in members[0]) for pre in prefixes]
            out.append(fam)
        return out

    def graph(self) -> Graph:
        return Graph(len(self.keys), frozenset(self.edges))


def verify_copy_groups(g: Graph, groups: Sequence[Sequence[Sequence[int]]]) -> bool:
    """Check that swapping any two copies of a family is an automorphism of ``g``."""
    for fam in groups:
        base = fam[0]
        for other in fam[1:]:
            perm = list(range(g.order))
            for a, b in zip(base, other):
                perm[a], perm[b] = b, a
            if g.relabel(perm).edges != g.edges:
                return False
    return True


# -- regular graphs of large girth ------------------------------------------


def regular_girth(degree: int, girth_min: int, min_order: int, seed: int = 0, retries: int = 400) -> Graph:
    """Connected ``degree``-regular graph with girth >= ``girth_min`` and order >= ``min_order``.

    Random greedy edge insertion with girth rejection; restarts on dead ends.
    """
    if degree < 2 or girth_min < 3:
        raise ValueError("need degree >= 2 and girth >= 3")
    if degree == 2:
        return cycle_graph(max(girth_min, min_order, 3))
    n = max(min_order, degree + 1)
    if (n * degree) % 2:
        n += 1
    rng = random.Random(seed)
    for _ in range(retries):
        g = _greedy_regular(n, degree, girth_min, rng)
        if g is not None and g.is_connected():
            return g
    raise RetryBudgetExhausted(
        f"no {degree}-regular graph of girth >= {girth_min} on {n} vertices after {retries} tries"
    )


def _greedy_regular(n: int, d: int, g: int, rng: random.Random) -> Graph | None:
    adj: list[set[int]] = [set() for _ in range(n)]

    def far(u: int) -> set[int]:
        # vertices within distance g-2 of u cannot be joined to u
        seen = {u: 0}
        dq = deque([u])
        while dq:
            x = dq.popleft()
            if seen[x] >= g - 2:
                continue
            for y in adj[x]:
                if y not in seen:
                    seen[y] = seen[x] + 1
                    dq.append(y)
        return set(seen)

    open_ = set(range(n))
    while open_:
        low = min(len(adj[v]) for v in open_)
        u = rng.choice(sorted(v for v in open_ if len(adj[v]) == low))
        near = far(u)
        cands = sorted(v for v in open_ if v not in near)
        if not cands:
            return None
        w = rng.choice(cands)
        adj[u].add(w)
        adj[w].add(u)
        for x in (u, w):
            if len(adj[x]) == d:
                open_.discard(x)
    return Graph.from_edges(n, ((u, v) for u in range(n) for v in adj[u] if u < v))


def regular_girth_auto(degree: int, girth_min: int, min_order: int, seed: int = 0) -> Graph:
    """As :func:`regular_girth`, growing the order until generation succeeds."""
    n = min_order
    for _ in range(40):
        try:
            return regular_girth(degree, girth_min, n, seed, retries=60)
        except RetryBudgetExhausted:
            n = int(n * 1.25) + 2
    raise RetryBudgetExhausted("order growth budget exhausted")


# -- amalgamation and degree raising ----------------------------------------


def free_amalgam(g: Graph, h: Graph, glue: Mapping[int, int]) -> Graph:
    """Disjoint union of ``g`` and ``h`` with each glued vertex of ``h`` identified with its image in ``g``."""
    imgs = list(glue.values())
    if len(set(imgs)) != len(imgs):
        raise InconsistentGlue("glue map is not injective")
    for x, y in h.edges:
        if x in glue and y in glue and not g.has_edge(glue[x], glue[y]):
            raise InconsistentGlue(f"edge {x}-{y} of the second graph has no image edge")
    m = dict(glue)
    nxt = g.order
    for x in range(h.order):
        if x not in m:
            m[x] = nxt
            nxt += 1
    return Graph.from_edges(nxt, list(g.edges) + [(m[x], m[y]) for x, y in h.edges])


def amalgam_copies(g: Graph, fixed: Iterable[int], copies: int) -> tuple[Graph, list[dict[int, int]]]:
    """Free amalgam of ``copies`` copies of ``g`` over ``fixed``; returns the graph and each copy's map."""
    fixed = set(fixed)
    out = g
    maps = [{x: x for x in range(g.order)}]
    for _ in range(copies - 1):
        before = out.order
        out = free_amalgam(out, g, {x: x for x in fixed})
        m, nxt = {}, before
        for x in range(g.order):
            if x in fixed:
                m[x] = x
            else:
                m[x] = nxt
                nxt += 1
        maps.append(m)
    return out, maps


@dataclass(frozen=True)
class PendantTrees:
    arity: int
    depth: int


@dataclass(frozen=True)
class ExtraEdges:
    girth_floor: int
    eligible: frozenset[int] | None = None


def raise_degrees(
    g: Graph,
    targets: Mapping[int, int],
    mode: PendantTrees | ExtraEdges,
    seed: int = 0,
    retries: int = 200,
) -> Graph:
    """Bring every targeted vertex up to its target degree."""
    if isinstance(mode, PendantTrees):
        b = Builder()
        for v in range(g.order):
            b.add(("g", v), "base")
        for u, v in g.edges:
            b.edge(u, v)
        for v, t in sorted(targets.items()):
            need = t - g.degrees[v]
            if need > 0:
                b.tree(v, need, mode.arity, mode.depth, ("t", v))
        return b.graph()
    return _raise_by_edges(g, targets, mode, seed, retries)


def _raise_by_edges(g: Graph, targets: Mapping[int, int], mode: ExtraEdges, seed: int, retries: int) -> Graph:
    rng = random.Random(seed)
    elig = set(targets) if mode.eligible is None else set(mode.eligible) & set(targets)
    for _ in range(retries):
        adj = [set(s) for s in g.adj]
        need = {v: targets[v] - len(adj[v]) for v in elig if targets[v] > len(adj[v])}
        if any(v not in elig for v, t in targets.items() if t > g.degrees[v]):
            raise InfeasibleTarget("targeted vertex is not eligible for extra edges")
        ok = True
        while need:
            u = min(need, key=lambda v: (-need[v], rng.random()))
            near = _ball(adj, u, mode.girth_floor - 2)
            cands = sorted(v for v in need if v not in near)
            if not cands:
                ok = False
                break
            w = rng.choice(cands)
            adj[u].add(w)
            adj[w].add(u)
            for x in (u, w):
                need[x] -= 1
                if need[x] == 0:
                    del need[x]
        if ok:
            out = Graph.from_edges(g.order, ((u, v) for u in range(g.order) for v in adj[u] if u < v))
            sub, _ = out.induced(elig)
            gg = girth(sub)
            if gg is None or gg >= mode.girth_floor:
                return out
    raise InfeasibleTarget("could not reach targets within girth floor")


def _ball(adj: Sequence[set[int]], u: int, r: int) -> set[int]:
    seen = {u: 0}
    dq = deque([u])
    while dq:
        x = dq.popleft()
        if seen[x] >= r:
            continue
        for y in adj[x]:
            if y not in seen:
                seen[y] = seen[x] + 1
                dq.append(y)
    return set(seen)


def regular_tree_ball(arity_degree: int, radius: int) -> tuple[Graph, list[int]]:
    """Ball of given radius in the ``arity_degree``-regular tree; returns graph and depths."""
    edges, depth = [], [0]
    frontier = [0]
    nxt = 1
    for r in range(radius):
        new = []
        for v in frontier:
            kids = arity_degree if v == 0 else arity_degree - 1
            for _ in range(kids):
                edges.append((v, nxt))
                depth.append(r + 1)
                new.append(nxt)
                nxt += 1
        frontier = new
    return Graph.from_edges(nxt, edges), depth

