"""Pruning of attached leaves, finite free attachment and core subgraphs, criticality."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .blocks import (
    BlockPreconditionError,
    PointedBlock,
    _leaf_instances,
    block_decomposition,
    minimal_attached_leaves,
    attached_leaves,
    pointed_code,
    pointed_embeds,
    pointed_isomorphic,
)
from .embed import graphs_isomorphic, image_sets
from .graph import Graph, ShapeKind, TreeShape, tree_shape


class NotAnAttachedLeaf(ValueError):
    pass


def _prune_map(c: Graph, leaf: PointedBlock, require_leaf: bool) -> tuple[Graph, list[int]]:
    d = block_decomposition(c)
    inst = _leaf_instances(d)
    if require_leaf and not any(pointed_isomorphic(i, leaf) for i in inst):
        raise NotAnAttachedLeaf("pointed block is not an attached leaf of the graph")
    doomed: set[int] = set()
    for i in inst:
        if pointed_embeds(i, leaf):
            doomed.update(v for k, v in enumerate(i.source) if k != i.attachment)
    return c.induced(v for v in range(c.order) if v not in doomed)


def prune(c: Graph, leaf: PointedBlock) -> Graph:
    """Delete every attached leaf that pointed-embeds into ``leaf``, keeping attachments."""
    return _prune_map(c, leaf, True)[0]


def prune_with_map(c: Graph, leaf: PointedBlock) -> tuple[Graph, list[int]]:
    """As :func:`prune`, also returning the old id of each surviving vertex."""
    return _prune_map(c, leaf, True)


def _iso(g: Graph, h: Graph) -> bool:
    return graphs_isomorphic(g, h, bound=max(g.order, h.order, 1))


def prune_set(cc: Iterable[Graph], leaf: PointedBlock) -> list[Graph]:
    out: list[Graph] = []
    for c in cc:
        if c.order >= 2 and c.is_connected() and len(block_decomposition(c).blocks) >= 2:
            c = _prune_map(c, leaf, False)[0]
        if not any(_iso(c, o) for o in out):
            out.append(c)
    return out


@dataclass(frozen=True)
class Attachment:
    """Result of free attachment together with its interchangeable copy families."""

    graph: Graph
    copy_groups: tuple[tuple[tuple[int, ...], ...], ...]


def free_attach_groups(g: Graph, leaf: PointedBlock, k: int) -> Attachment:
    if k < 1:
        raise ValueError("k must be positive")
    b = leaf.block
    others = [v for v in range(b.order) if v != leaf.attachment]
    edges = list(g.edges)
    nxt = g.order
    groups = []
    for v in range(g.order):
        fam = []
        for _ in range(k):
            m = {leaf.attachment: v}
            for o in others:
                m[o] = nxt
                nxt += 1
            edges.extend((m[x], m[y]) for x, y in b.edges)
            fam.append(tuple(m[o] for o in others))
        groups.append(tuple(fam))
    return Attachment(Graph.from_edges(nxt, edges), tuple(groups))


def free_attach(g: Graph, leaf: PointedBlock, k: int) -> Graph:
    """Attach ``k`` fresh copies of the pointed block at every vertex of ``g``."""
    return free_attach_groups(g, leaf, k).graph


def _disjoint_count_at_least(sets: list[frozenset[int]], k: int) -> bool:
    sets = sorted(sets, key=len)

    def rec(start: int, used: frozenset[int], need: int) -> bool:
        if need == 0:
            return True
        for i in range(start, len(sets)):
            if len(sets) - i < need:
                return False
            s = sets[i]
            if used.isdisjoint(s) and rec(i + 1, used | s, need - 1):
                return True
        return False

    return rec(0, frozenset(), k)


def core_vertices(g: Graph, leaf: PointedBlock, k: int) -> list[int]:
    if k < 1:
        raise ValueError("k must be positive")
    keep = []
    for v in range(g.order):
        if leaf.block.order == 2:
            ok = g.degrees[v] >= k
        else:
            imgs = [s - {v} for s in image_sets(leaf.block, g, {leaf.attachment: v})]
            ok = _disjoint_count_at_least(imgs, k)
        if ok:
            keep.append(v)
    return keep


def core_subgraph(g: Graph, leaf: PointedBlock, k: int) -> Graph:
    """Induced subgraph on vertices carrying ``k`` copies of the pointed block, disjoint off the vertex."""
    return g.induced(core_vertices(g, leaf, k))[0]


# -- criticality ------------------------------------------------------------


def underlying_shape(c: Graph) -> TreeShape:
    """Shape of the block-cut tree of a connected graph (a single vertex counts as a path)."""
    if c.order == 1:
        return TreeShape(ShapeKind.PATH)
    return tree_shape(block_decomposition(c).block_cut_tree)


def is_critical(c: Graph) -> bool:
    if not c.is_connected():
        raise BlockPreconditionError("graph is disconnected")
    if underlying_shape(c).is_path_like:
        return False
    return all(underlying_shape(prune(c, lf)).is_path_like for lf in attached_leaves(c))


def choose_minimal_leaf(c: Graph) -> PointedBlock:
    return min(minimal_attached_leaves(c), key=lambda lf: (lf.block.size, pointed_code(lf)))


@dataclass(frozen=True)
class PruneStep:
    leaf: PointedBlock
    before: Graph
    after: Graph


@dataclass(frozen=True)
class PruneTrace:
    steps: tuple[PruneStep, ...] = field(default_factory=tuple)
    final: Graph = field(default_factory=lambda: Graph(0))
    critical: bool = False


def prune_to_critical(c: Graph) -> PruneTrace:
    if not c.is_connected():
        raise BlockPreconditionError("graph is disconnected")
    steps = []
    while True:
        if underlying_shape(c).is_path_like:
            return PruneTrace(tuple(steps), c, False)
        if is_critical(c):
            return PruneTrace(tuple(steps), c, True)
        leaf = choose_minimal_leaf(c)
        after = prune(c, leaf)
        steps.append(PruneStep(leaf, c, after))
        c = after
