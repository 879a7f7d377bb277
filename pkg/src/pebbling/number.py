"""Pebbling numbers, Class 0 decisions and the small-graph classification."""

from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Callable, Iterator, Sequence

from .graph import (
    Graph,
    GraphError,
    automorphism_orbits,
    diameter,
    distances,
    enumerate_graphs,
    is_connected,
    is_isomorphic,
    vertex_connectivity,
)
from .solver import Distribution, PebblingSolver

CLASSIFY_GUARD = 6


class DisconnectedGraphError(GraphError):
    pass


@dataclass(frozen=True)
class Class1Witness:
    target: int
    distribution: Distribution

    def to_json(self) -> dict:
        return {"target": self.target, "distribution": list(self.distribution)}


@dataclass
class SearchStats:
    targets_tested: int = 0
    distributions_tested: int = 0
    started: float = field(default_factory=time.perf_counter)

    @property
    def elapsed(self) -> float:
        return time.perf_counter() - self.started


@dataclass
class Class0Result:
    class0: bool
    witness: Class1Witness | None
    stats: SearchStats
    disconnected: bool = False

    def __bool__(self) -> bool:
        return self.class0


def enumerate_distributions(
    n: int,
    total: int,
    zero_at: int | None = None,
    caps: Sequence[int | None] | None = None,
) -> Iterator[Distribution]:
    """All length-n vectors of non-negative integers summing to ``total``.

    Lexicographic order, first coordinate smallest first. ``zero_at`` pins one
    entry to 0; ``caps`` optionally bounds individual entries.
    """
    if total < 0:
        raise ValueError("total must be non-negative")
    if zero_at is not None and not 0 <= zero_at < n:
        raise GraphError(f"zero_at={zero_at} out of range for n={n}")
    limit = [total if (caps is None or caps[i] is None) else min(total, caps[i]) for i in range(n)]
    if zero_at is not None:
        limit[zero_at] = 0
    # room[i]: most pebbles positions i.. can still absorb
    room = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        room[i] = room[i + 1] + limit[i]
    vec = [0] * n

    def rec(i: int, left: int) -> Iterator[Distribution]:
        if i == n - 1:
            if left <= limit[i]:
                vec[i] = left
                yield tuple(vec)
            return
        lo = max(0, left - room[i + 1])
        for c in range(lo, min(left, limit[i]) + 1):
            vec[i] = c
            yield from rec(i + 1, left - c)

    if n == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total)


def target_representatives(g: Graph) -> list[int]:
    """One target per automorphism orbit (the largest label), ascending."""
    return sorted(max(orbit) for orbit in automorphism_orbits(g))


def _candidates(g: Graph, target: int, p: int) -> Iterator[Distribution]:
    """The size-p distributions with no pebble on ``target`` that are not trivially solvable.

    Same order as :func:`enumerate_distributions`; skipped vectors all reach the
    target, so the first failure is unchanged. Skipped: a vertex at distance k
    holding 2**k pebbles, or a target neighbour holding one pebble next to a
    vertex holding two.
    """
    n = g.n
    dist = distances(g, target)
    limit = [p if dist[v] == float("inf") or dist[v] > 30 else min(p, (1 << int(dist[v])) - 1) for v in range(n)]
    limit[target] = 0
    near = [g.has_edge(target, v) for v in range(n)]
    room = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        room[i] = room[i + 1] + limit[i]
    vec = [0] * n

    def blocked(i: int, c: int) -> bool:
        # only looks back at already-assigned vertices; later ones check i
        if c >= 2:
            return any(near[u] and vec[u] == 1 for u in g.adj[i] if u < i)
        if c == 1 and near[i]:
            return any(vec[w] >= 2 for w in g.adj[i] if w < i)
        return False

    def rec(i: int, left: int) -> Iterator[Distribution]:
        if i == n:
            if left == 0:
                yield tuple(vec)
            return
        lo = max(0, left - room[i + 1])
        for c in range(lo, min(left, limit[i]) + 1):
            if blocked(i, c):
                if c >= 2:
                    break
                continue
            vec[i] = c
            yield from rec(i + 1, left - c)
        vec[i] = 0

    return rec(0, p)


def _first_failure(g: Graph, p: int, targets: Sequence[int], stats: SearchStats) -> Class1Witness | None:
    for t in targets:
        stats.targets_tested += 1
        solver = PebblingSolver(g, t)
        for d in _candidates(g, t, p):
            stats.distributions_tested += 1
            if not solver.reachable(d):
                return Class1Witness(t, d)
    return None


def pebbling_number(g: Graph, stats: SearchStats | None = None) -> int:
    """Least p such that every size-p distribution reaches every target."""
    if g.n == 0:
        raise GraphError("pebbling number of the empty graph is undefined")
    if not is_connected(g):
        raise DisconnectedGraphError("pebbling number undefined/infinite for a disconnected graph")
    stats = stats or SearchStats()
    depth = int(diameter(g))
    bound = g.n * ((1 << depth) - 1) + 1
    targets = target_representatives(g)
    p = g.n
    while _first_failure(g, p, targets, stats) is not None:
        p += 1
        if p > bound:
            raise AssertionError(f"search passed the pigeonhole bound {bound}")
    return p


def is_class0(g: Graph, stats: SearchStats | None = None) -> Class0Result:
    """Class 0 iff every size-|V| distribution reaches every target."""
    stats = stats or SearchStats()
    if g.n == 0:
        raise GraphError("empty graph")
    if not is_connected(g):
        # every pebble placed outside the component of vertex 0
        dist = distances(g, 0)
        far = min(v for v in g.vertices() if dist[v] == float("inf"))
        d = tuple(g.n if v == far else 0 for v in g.vertices())
        return Class0Result(False, Class1Witness(0, d), stats, disconnected=True)
    witness = _first_failure(g, g.n, target_representatives(g), stats)
    return Class0Result(witness is None, witness, stats)


def iter_witnesses(g: Graph, targets: Sequence[int] | None = None) -> Iterator[Class1Witness]:
    """Every size-|V| distribution that fails to reach some target (all targets by default)."""
    for t in g.vertices() if targets is None else targets:
        solver = PebblingSolver(g, t)
        for d in _candidates(g, t, g.n):
            if not solver.reachable(d):
                yield Class1Witness(t, d)


@dataclass
class SmallClass:
    graph: Graph
    labeled_count: int
    witness: Class1Witness
    connectivity: int
    diameter: int


def _iso_key(g: Graph) -> tuple:
    deg = [len(a) for a in g.adj]
    return (g.n, g.m, tuple(sorted((deg[v], tuple(sorted(deg[w] for w in g.adj[v]))) for v in g.vertices())))


def classify_small(
    n_max: int,
    allow_large: bool = False,
    progress: Callable[[str], None] | None = None,
) -> list[SmallClass]:
    """Isomorphism classes of 2-connected, diameter-2, Class-1 graphs on 2..n_max vertices.

    Labeled graphs are filtered by diameter and connectivity, grouped up to
    isomorphism, and each class representative is tested once.
    """
    if n_max > CLASSIFY_GUARD and not allow_large:
        raise GraphError(f"classify_small is limited to n_max <= {CLASSIFY_GUARD}")
    found: list[SmallClass] = []
    for n in range(2, n_max + 1):
        buckets: dict[tuple, list[list]] = defaultdict(list)
        scanned = 0
        for g in enumerate_graphs(n, allow_large=allow_large):
            scanned += 1
            if progress and scanned % 8192 == 0:
                progress(f"n={n}: {scanned} labeled graphs scanned")
            if not is_connected(g) or diameter(g) != 2 or vertex_connectivity(g) < 2:
                continue
            bucket = buckets[_iso_key(g)]
            for entry in bucket:
                if is_isomorphic(entry[0], g):
                    entry[1] += 1
                    break
            else:
                bucket.append([g, 1])
        reps = [entry for key in sorted(buckets) for entry in buckets[key]]
        if progress:
            progress(f"n={n}: {scanned} labeled graphs, {len(reps)} candidate classes")
        for g, count in reps:
            result = is_class0(g)
            if not result.class0:
                found.append(SmallClass(g, count, result.witness, vertex_connectivity(g), int(diameter(g))))
    return found


def report(g: Graph, with_number: bool = True) -> dict:
    """JSON-ready summary: f, class, witness and search counters."""
    stats = SearchStats()
    out: dict = {"graph": {"n": g.n, "edges": [list(e) for e in g.sorted_edges()]}}
    c0 = is_class0(g, stats)
    if with_number:
        out["f"] = None if c0.disconnected else pebbling_number(g, stats)
    out["class"] = 0 if c0.class0 else 1
    if c0.witness is not None:
        out["witness"] = c0.witness.to_json()
    if c0.disconnected:
        out["disconnected"] = True
    out["targets_tested"] = stats.targets_tested
    out["distributions_tested"] = stats.distributions_tested
    out["elapsed"] = round(stats.elapsed, 6)
    return out
