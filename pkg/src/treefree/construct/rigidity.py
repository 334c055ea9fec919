"""Finite decoding checks: does one extra edge or pendant vertex create a copy of T?

A probe is local, so the search runs on the ball of radius diam(T) around the
probe in the augmented graph, with the new edge pinned to a pattern edge.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from ..graph import Graph, diameter
from ..embed import find_monomorphism
from .witness import Witness


class ProbeOutsideCore(ValueError):
    pass


class ProbeIsEdge(ValueError):
    pass


@dataclass(frozen=True)
class Pendant:
    v: int


@dataclass(frozen=True)
class Chord:
    u: int
    v: int


Probe = Union[Pendant, Chord]


def _rooted_code(t: Graph, root: int, parent: int) -> str:
    kids = sorted(_rooted_code(t, w, root) for w in t.adj[root] if w != parent)
    return "(" + "".join(kids) + ")"


def edge_classes(t: Graph) -> list[tuple[int, int]]:
    """One directed edge (a, b) of the tree per class of the rooted shape on either side."""
    seen, out = set(), []
    for x, y in sorted(t.edges):
        for a, b in ((x, y), (y, x)):
            code = (_rooted_code(t, a, b), _rooted_code(t, b, a))
            if code not in seen:
                seen.add(code)
                out.append((a, b))
    return out


def _leaf_classes(t: Graph) -> list[tuple[int, int]]:
    """(parent, leaf) pairs, one per class."""
    return [(a, b) for a, b in edge_classes(t) if t.degrees[b] == 1]


def _local(g: Graph, centres: Sequence[int], radius: int) -> tuple[Graph, list[int]]:
    dist = g.multi_bfs(centres)
    keep = [v for v in range(g.order) if dist[v] <= radius]
    return g.induced(keep)


def _local_groups(groups, old: Sequence[int], avoid: set[int]):
    new = {o: i for i, o in enumerate(old)}
    out = []
    for fam in groups:
        flat = [v for copy in fam for v in copy]
        if any(v in avoid for v in flat) or any(v not in new for v in flat):
            continue
        out.append([[new[v] for v in copy] for copy in fam])
    return out


def probe_graph(w: Witness, probe: Probe) -> tuple[Graph, tuple[int, int]]:
    """The witness with the probe added, and the new edge."""
    g = w.graph
    if isinstance(probe, Pendant):
        x = g.order
        return g.add_edges([(probe.v, x)], new_vertices=1), (probe.v, x)
    return g.add_edges([(probe.u, probe.v)]), (probe.u, probe.v)


def _validate(w: Witness, probe: Probe) -> None:
    ends = (probe.v,) if isinstance(probe, Pendant) else (probe.u, probe.v)
    for v in ends:
        if not 0 <= v < w.graph.order:
            raise ValueError(f"probe vertex {v} out of range")
        if v not in w.core:
            raise ProbeOutsideCore(f"probe vertex {v} lies outside the core region")
    if isinstance(probe, Chord):
        if probe.u == probe.v:
            raise ValueError("chord endpoints coincide")
        if w.graph.has_edge(probe.u, probe.v):
            raise ProbeIsEdge(f"{probe.u}-{probe.v} is already an edge")


def find_probe_embedding(w: Witness, t: Graph, probe: Probe) -> dict[int, int] | None:
    """A copy of ``t`` through the new edge of the probe, in witness vertex ids, or None."""
    _validate(w, probe)
    g, (u, v) = probe_graph(w, probe)
    radius = diameter(t)
    local, old = _local(g, [u, v], radius)
    new = {o: i for i, o in enumerate(old)}
    groups = _local_groups(w.copy_groups, old, {u, v})
    if isinstance(probe, Pendant):
        pairs = _leaf_classes(t)
    else:
        pairs = edge_classes(t)
    for a, b in pairs:
        if t.degrees[a] > local.degrees[new[u]] or t.degrees[b] > local.degrees[new[v]]:
            continue
        m = find_monomorphism(t, local, {a: new[u], b: new[v]}, copy_groups=groups)
        if m is not None:
            return {p: old[h] for p, h in m.items()}
    return None


def rigidity_check(w: Witness, t: Graph, probe: Probe) -> bool:
    """True iff adding the probe to the witness creates a copy of ``t``."""
    return find_probe_embedding(w, t, probe) is not None


# -- probe sets -------------------------------------------------------------


def pendant_probes(w: Witness, verts: Iterable[int] | None = None) -> list[Pendant]:
    pool = w.core_spine() if verts is None else verts
    return [Pendant(v) for v in pool if v in w.core]


def chord_probes(w: Witness, verts: Iterable[int], max_dist: int | None = None) -> list[Chord]:
    """Nonadjacent in-core pairs among ``verts``, optionally within ``max_dist`` in the witness."""
    vs = sorted(v for v in set(verts) if v in w.core)
    g = w.graph
    out = []
    for i, u in enumerate(vs):
        dist = g.bfs(u) if max_dist is not None else None
        for v in vs[i + 1 :]:
            if g.has_edge(u, v):
                continue
            if dist is not None and dist.get(v, max_dist + 1) > max_dist:
                continue
            out.append(Chord(u, v))
    return out


def decoding_probes(w: Witness, t: Graph) -> list[Probe]:
    """Pendants at core spine vertices plus the chords each decoding argument rules out."""
    probes: list[Probe] = list(pendant_probes(w))
    case = w.variant
    if case == "Monarchy":
        probes += chord_probes(w, w.spine, max_dist=t.order)
    elif case == "IA":
        probes += chord_probes(w, w.spine)
    elif case == "IB":
        for seg in w.intervals:
            probes += chord_probes(w, seg)
    elif case == "Stardom":
        probes += chord_probes(w, w.spine, max_dist=t.order)
    return probes


@dataclass(frozen=True)
class SweepResult:
    passed: tuple[Probe, ...]
    failed: tuple[Probe, ...]

    @property
    def ok(self) -> bool:
        return not self.failed


def _one(args):
    w, t, probe = args
    return rigidity_check(w, t, probe)


def default_threads() -> int:
    env = os.environ.get("TREEFREE_THREADS")
    return max(1, int(env)) if env else 1


def rigidity_sweep(w: Witness, t: Graph, probes: Sequence[Probe], threads: int | None = None) -> SweepResult:
    """Run every probe; results are in probe order regardless of ``threads``."""
    threads = threads or default_threads()
    if threads > 1 and len(probes) > 1:
        with ProcessPoolExecutor(threads) as ex:
            res = list(ex.map(_one, ((w, t, p) for p in probes), chunksize=max(1, len(probes) // (4 * threads))))
    else:
        res = [rigidity_check(w, t, p) for p in probes]
    passed = tuple(p for p, r in zip(probes, res) if r)
    failed = tuple(p for p, r in zip(probes, res) if not r)
    return SweepResult(passed, failed)
