"""Families of pairwise non-isomorphic witnesses for one tree."""

from __future__ import annotations

import dataclasses
from collections import Counter

from ..embed import graphs_isomorphic
from ..graph import Graph
from . import recipes as R
from .witness import NON_MONOTONE, Witness, build_witness

_LAYOUT_KEYS = ("p", "q", "eps", "S")


class FamilyExhausted(RuntimeError):
    pass


EXACT_BOUND = 400
DISTANCE_BOUND = 5000


def _refine(g: Graph, col: list) -> tuple:
    k = len(set(col))
    while True:
        col = [hash((col[v], tuple(sorted(col[w] for w in g.adj[v])))) for v in range(g.order)]
        if len(set(col)) == k:
            return (g.order, g.size, tuple(sorted(col)))
        k = len(set(col))


def _invariant(g: Graph) -> tuple:
    """Sorted stable colours of colour refinement; different invariants certify non-isomorphism."""
    return _refine(g, list(g.degrees))


def _distance_invariant(g: Graph) -> tuple:
    """Colour refinement started from each vertex's BFS layer sizes.

    Separates graphs that differ only in where long chords sit, which plain
    refinement misses on near-regular spines. One BFS per vertex, so it is kept
    as a tie-breaker.
    """
    start = []
    for v in range(g.order):
        layers = Counter(g.bfs(v).values())
        start.append(hash(tuple(layers[i] for i in range(len(layers)))))
    return _refine(g, start)


def _maybe_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact test on small graphs. Large graphs with equal invariants, or a search too deep
    to finish, count as isomorphic, which only drops a candidate."""
    if max(g.order, h.order) > EXACT_BOUND:
        return True
    try:
        return graphs_isomorphic(g, h, bound=EXACT_BOUND)
    except RecursionError:
        return True


class _Member:
    """A kept witness with its invariants, the expensive one computed on demand."""

    def __init__(self, w: Witness):
        self.w = w
        self.inv = _invariant(w.graph)
        self._dist: tuple | None = None

    @property
    def dist(self) -> tuple:
        if self._dist is None:
            self._dist = _distance_invariant(self.w.graph)
        return self._dist

    def same_as(self, other: _Member) -> bool:
        """False only when the two graphs are certainly non-isomorphic."""
        if self.inv != other.inv:
            return False
        g, h = self.w.graph, other.w.graph
        if max(g.order, h.order) <= EXACT_BOUND:
            return _maybe_isomorphic(g, h)
        if max(g.order, h.order) <= DISTANCE_BOUND:
            return self.dist == other.dist
        return True


def _layout(w: Witness) -> tuple | None:
    """The recorded sequence layout, when it determines the witness up to isomorphism."""
    if w.variant in NON_MONOTONE:
        return None
    return tuple(tuple(w.info.get(k, ())) for k in _LAYOUT_KEYS)


def _reversed(layout: tuple) -> tuple:
    return tuple(tuple(reversed(seq)) for seq in layout)


def _reseeded(template: R.CaseRecipe, j: int) -> R.CaseRecipe:
    # placement seeds are the only parameter that is not a sequence
    if isinstance(template, R.IVC) and template.placement_seed is not None:
        return dataclasses.replace(template, placement_seed=template.placement_seed + j)
    return template


def variant_family(
    t: Graph,
    template: R.CaseRecipe,
    count: int,
    seed: int = 0,
    *,
    length: int | None = None,
    max_length: int | None = None,
    tries_per_length: int | None = None,
) -> list[Witness]:
    """``count`` witnesses for ``t`` built from ``template`` with different seeds, pairwise non-isomorphic.

    Unset sequence parameters are drawn from each seed. When a length runs out of
    distinct layouts the truncation length is doubled.
    """
    if count < 2:
        raise ValueError("a family needs at least two members")
    L = length or 4 * t.order
    cap = max_length or 64 * L
    tries = tries_per_length or 6 * count
    out: list[_Member] = []
    grown = 0
    j = 0
    while True:
        for _ in range(tries):
            w = build_witness(t, _reseeded(template, j), L, seed + j)
            j += 1
            lay = _layout(w)
            # equal layouts (read in either direction) give isomorphic witnesses
            if lay is not None and any(_layout(o.w) in (lay, _reversed(lay)) for o in out):
                continue
            m = _Member(w)
            if any(o.same_as(m) for o in out):
                continue
            out.append(m)
            if len(out) == count:
                return [o.w for o in out]
        if isinstance(template, R.IVC) and out:
            # the ball radius, not the length, bounds how many placements exist
            radius = out[-1].w.info["radius"] + 1
            grown += 1
            if grown > 4:
                raise FamilyExhausted(f"only {len(out)} distinct witnesses up to radius {radius - 1}")
            template = dataclasses.replace(template, radius=radius)
        elif 2 * L > cap:
            raise FamilyExhausted(f"only {len(out)} distinct witnesses up to length {L}")
        else:
            L *= 2
        out = []
