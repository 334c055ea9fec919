"""Finite simple undirected graphs, edge-list IO, and elementary structure tests."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import numpy as np


class ParseError(ValueError):
    """Base class for edge-list parse failures."""


class MalformedHeader(ParseError):
    pass


class MalformedEdgeLine(ParseError):
    pass


class EdgeCountMismatch(ParseError):
    pass


class VertexOutOfRange(ParseError):
    pass


class DuplicateEdge(ParseError):
    pass


class SelfLoop(ParseError):
    pass


def _norm(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0..order-1``.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``.
    """

    order: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if self.order < 0:
            raise ValueError("negative order")
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < v < self.order):
                raise ValueError(f"edge ({u}, {v}) not normalized or out of range")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            es.add(_norm(u, v))
        return cls(order, frozenset(es))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.order)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.adj)

    @property
    def size(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def leaves(self) -> list[int]:
        return [v for v in range(self.order) if self.degrees[v] == 1]

    def add_edges(self, extra: Iterable[tuple[int, int]], new_vertices: int = 0) -> Graph:
        es = set(self.edges)
        for u, v in extra:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            es.add(_norm(u, v))
        return Graph(self.order + new_vertices, frozenset(es))

    def induced(self, keep: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``keep``, relabelled in increasing order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old)}
        es = [
            (new_of[u], new_of[v])
            for u, v in self.edges
            if u in new_of and v in new_of
        ]
        return Graph.from_edges(len(old), es), old

    def relabel(self, perm: Mapping[int, int] | list[int]) -> Graph:
        """Apply a bijection old id -> new id."""
        return Graph.from_edges(self.order, ((perm[u], perm[v]) for u, v in self.edges))

    def components(self) -> list[list[int]]:
        seen = [False] * self.order
        out = []
        for s in range(self.order):
            if seen[s]:
                continue
            seen[s] = True
            comp = [s]
            stack = [s]
            while stack:
                u = stack.pop()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.order > 0 and len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.is_connected() and self.size == self.order - 1

    def bfs(self, source: int, radius: int | None = None) -> dict[int, int]:
        """Hop distances from ``source``, optionally truncated at ``radius``."""
        dist = {source: 0}
        frontier = deque([source])
        while frontier:
            u = frontier.popleft()
            du = dist[u]
            if radius is not None and du >= radius:
                continue
            for w in self.adj[u]:
                if w not in dist:
                    dist[w] = du + 1
                    frontier.append(w)
        return dist

    def multi_bfs(self, sources: Iterable[int]) -> list[float]:
        """Distance from the nearest of ``sources`` to every vertex."""
        dist: list[float] = [float("inf")] * self.order
        frontier = deque()
        for s in sources:
            if dist[s]:
                dist[s] = 0
                frontier.append(s)
        while frontier:
            u = frontier.popleft()
            for w in self.adj[u]:
                if dist[w] == float("inf"):
                    dist[w] = dist[u] + 1
                    frontier.append(w)
        return dist

    def shortest_path(self, s: int, t: int) -> list[int] | None:
        parent = {s: None}
        frontier = deque([s])
        while frontier:
            u = frontier.popleft()
            if u == t:
                break
            for w in sorted(self.adj[u]):
                if w not in parent:
                    parent[w] = u
                    frontier.append(w)
        if t not in parent:
            return None
        path = [t]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        return path[::-1]


# -- constructors -----------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def star_graph(arms: Iterable[int]) -> Graph:
    """The spider S(d_1, ..., d_k): paths of the given lengths joined at vertex 0."""
    edges = []
    nxt = 1
    for length in arms:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph.from_edges(nxt, edges)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for g in graphs:
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        offset += g.order
    return Graph.from_edges(offset, edges)


# -- edge-list IO -----------------------------------------------------------


def parse_edge_list(data: bytes | str) -> Graph:
    text = data.decode("ascii") if isinstance(data, bytes) else data
    lines = [ln for ln in text.split("\n") if not ln.startswith("#")]
    while lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MalformedHeader("missing header line")
    header = lines[0].split(" ")
    if len(header) != 2 or not all(tok.isdigit() for tok in header):
        raise MalformedHeader(f"bad header {lines[0]!r}")
    n, m = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != m:
        raise EdgeCountMismatch(f"header declares {m} edges, found {len(body)} lines")
    seen: set[tuple[int, int]] = set()
    for lineno, ln in enumerate(body, start=2):
        toks = ln.split(" ")
        if len(toks) != 2 or not all(tok.isdigit() for tok in toks):
            raise MalformedEdgeLine(f"line {lineno}: {ln!r}")
        u, v = int(toks[0]), int(toks[1])
        if u >= n or v >= n:
            raise VertexOutOfRange(f"line {lineno}: vertex id >= {n}")
        if u == v:
            raise SelfLoop(f"line {lineno}: self-loop at {u}")
        e = _norm(u, v)
        if e in seen:
            raise DuplicateEdge(f"line {lineno}: duplicate edge {e}")
        seen.add(e)
    return Graph(n, frozenset(seen))


def emit_edge_list(g: Graph) -> bytes:
    out = [f"{g.order} {g.size}"]
    out.extend(f"{u} {v}" for u, v in g.sorted_edges())
    return ("\n".join(out) + "\n").encode("ascii")


_ROLE_COLORS = {
    "spine": "red",
    "interval": "orange",
    "gap": "gold",
    "apex": "blue",
    "global_apex": "purple",
    "attachment_copy": "gray70",
    "filler": "gray90",
}


def emit_dot(g: Graph, roles: Mapping[int, str] | None = None) -> bytes:
    lines = ["graph G {", "  node [shape=circle, style=filled, fillcolor=white];"]
    for v in range(g.order):
        if roles and v in roles:
            role = roles[v]
            color = _ROLE_COLORS.get(role.split("(")[0], "white")
            lines.append(f'  {v} [label="{v}\\n{role}", fillcolor={color}];')
        else:
            lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in g.sorted_edges())
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("ascii")


# -- structure tests --------------------------------------------------------


class ShapeKind(enum.Enum):
    PATH = "Path"
    NEAR_PATH = "NearPath"
    TREE_OTHER = "TreeOther"
    NON_TREE = "NonTree"


@dataclass(frozen=True)
class TreeShape:
    variant: ShapeKind
    center: int | None = None

    @property
    def is_path_like(self) -> bool:
        return self.variant in (ShapeKind.PATH, ShapeKind.NEAR_PATH)


def tree_shape(g: Graph) -> TreeShape:
    if not g.is_tree():
        return TreeShape(ShapeKind.NON_TREE)
    deg = g.degrees
    if max(deg, default=0) <= 2:
        return TreeShape(ShapeKind.PATH)
    branch = [v for v in range(g.order) if deg[v] >= 3]
    if len(branch) == 1 and deg[branch[0]] == 3:
        c = branch[0]
        if any(deg[w] == 1 for w in g.adj[c]):
            return TreeShape(ShapeKind.NEAR_PATH, c)
    return TreeShape(ShapeKind.TREE_OTHER)


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or ``None`` for forests."""
    best: int | None = None
    for root in range(g.order):
        dist = {root: 0}
        parent = {root: -1}
        frontier = deque([root])
        while frontier:
            u = frontier.popleft()
            if best is not None and 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    frontier.append(w)
                elif parent[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def distances(g: Graph) -> np.ndarray:
    """All-pairs hop distances; ``inf`` between components."""
    out = np.full((g.order, g.order), np.inf)
    for s in range(g.order):
        for t, d in g.bfs(s).items():
            out[s, t] = d
    return out


def diameter(g: Graph) -> int:
    return max((max(g.bfs(s).values()) for s in range(g.order)), default=0)
