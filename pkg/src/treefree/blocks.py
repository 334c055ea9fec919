"""Block decomposition, block-cut trees, pointed blocks and attached leaves."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .embed import find_monomorphism, graphs_isomorphic
from .graph import Graph


class BlockPreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class BlockDecomposition:
    graph: Graph
    blocks: tuple[frozenset[tuple[int, int]], ...]
    cut_vertices: frozenset[int]

    @cached_property
    def block_vertices(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(v for e in b for v in e) for b in self.blocks)

    @cached_property
    def cut_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.cut_vertices))

    @cached_property
    def block_cut_tree(self) -> Graph:
        """Nodes ``0..b-1`` are blocks, ``b..`` are cut vertices in increasing order."""
        nb = len(self.blocks)
        idx = {c: nb + i for i, c in enumerate(self.cut_list)}
        edges = [
            (bi, idx[v])
            for bi, verts in enumerate(self.block_vertices)
            for v in verts
            if v in idx
        ]
        return Graph.from_edges(nb + len(idx), edges)

    def blocks_containing(self, v: int) -> list[int]:
        return [i for i, vs in enumerate(self.block_vertices) if v in vs]


@dataclass(frozen=True)
class PointedBlock:
    """A block with a distinguished attachment vertex.

    ``source`` optionally records the vertex of an ambient graph for each block vertex.
    """

    block: Graph
    attachment: int
    source: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if not 0 <= self.attachment < self.block.order:
            raise ValueError("attachment outside block")

    @property
    def ambient_attachment(self) -> int | None:
        return None if self.source is None else self.source[self.attachment]

    def colors(self) -> list[int]:
        return [int(v == self.attachment) for v in range(self.block.order)]


def pointed_edge() -> PointedBlock:
    return PointedBlock(Graph.from_edges(2, [(0, 1)]), 0)


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Biconnected components by the iterative Hopcroft-Tarjan edge-stack method."""
    if g.order == 0 or any(d == 0 for d in g.degrees):
        raise BlockPreconditionError("graph has isolated vertices")
    if not g.is_connected():
        raise BlockPreconditionError("graph is disconnected")
    n = g.order
    disc = [-1] * n
    low = [0] * n
    adj = [sorted(s) for s in g.adj]
    blocks: list[frozenset[tuple[int, int]]] = []
    edge_stack: list[tuple[int, int]] = []
    timer = 0
    disc[0] = low[0] = timer
    stack = [(0, -1, 0)]  # (vertex, parent, next neighbor index)
    while stack:
        v, parent, i = stack[-1]
        if i < len(adj[v]):
            stack[-1] = (v, parent, i + 1)
            w = adj[v][i]
            if disc[w] == -1:
                timer += 1
                disc[w] = low[w] = timer
                edge_stack.append((v, w))
                stack.append((w, v, 0))
            elif w != parent and disc[w] < disc[v]:
                edge_stack.append((v, w))
                low[v] = min(low[v], disc[w])
            continue
        stack.pop()
        if parent >= 0:
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                comp = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.add((a, b) if a < b else (b, a))
                    if (a, b) == (parent, v):
                        break
                blocks.append(frozenset(comp))
    blocks.sort(key=lambda b: (min(min(e) for e in b), sorted(b)))
    count: dict[int, int] = {}
    for b in blocks:
        for v in {x for e in b for x in e}:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c >= 2)
    return BlockDecomposition(g, tuple(blocks), cuts)


def underlying_tree(d: BlockDecomposition) -> Graph:
    return d.block_cut_tree


def _leaf_instances(d: BlockDecomposition) -> list[PointedBlock]:
    """Every leaf block of the block-cut tree, pointed at its cut vertex."""
    if len(d.blocks) < 2:
        raise BlockPreconditionError("graph has a single block")
    out = []
    for bi, verts in enumerate(d.block_vertices):
        cuts = [v for v in verts if v in d.cut_vertices]
        if len(cuts) != 1:
            continue
        sub, old = d.graph.induced(verts)
        out.append(PointedBlock(sub, old.index(cuts[0]), tuple(old)))
    return out


def pointed_isomorphic(p: PointedBlock, q: PointedBlock) -> bool:
    if p.block.order != q.block.order or p.block.size != q.block.size:
        return False
    return graphs_isomorphic(p.block, q.block, colors_g=p.colors(), colors_h=q.colors())


def pointed_embeds(p: PointedBlock, q: PointedBlock) -> bool:
    if p.block.order > q.block.order or p.block.size > q.block.size:
        return False
    return find_monomorphism(p.block, q.block, {p.attachment: q.attachment}) is not None


def _dedup(items: list[PointedBlock]) -> list[PointedBlock]:
    reps: list[PointedBlock] = []
    for it in items:
        if not any(pointed_isomorphic(it, r) for r in reps):
            reps.append(it)
    return reps


def attached_leaves(c: Graph) -> list[PointedBlock]:
    return _dedup(_leaf_instances(block_decomposition(c)))


def minimal_attached_leaves(c: Graph) -> list[PointedBlock]:
    types = attached_leaves(c)
    return [
        t for t in types
        if not any(o is not t and pointed_embeds(o, t) for o in types)
    ]


def pointed_code(p: PointedBlock) -> str:
    """Canonical string for a pointed block (exhaustive over relabellings fixing the attachment)."""
    g = p.block
    others = [v for v in range(g.order) if v != p.attachment]
    best = None
    for perm in itertools.permutations(range(1, g.order)):
        m = {p.attachment: 0, **dict(zip(others, perm))}
        code = tuple(sorted(tuple(sorted((m[u], m[v]))) for u, v in g.edges))
        if best is None or code < best:
            best = code
    return f"{g.order}:" + ",".join(f"{u}-{v}" for u, v in best or ())
