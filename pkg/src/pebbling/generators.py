"""Named graphs, the 6-vertex Class-1 examples, path blow-ups and G(n, p) samples."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graph import Graph, GraphError


def named_graph(kind: str, n: int) -> Graph:
    if kind == "complete":
        if n < 1:
            raise GraphError("complete graph needs n >= 1")
        return Graph.from_edges(n, combinations(range(n), 2))
    if kind == "path":
        if n < 1:
            raise GraphError("path needs n >= 1")
        return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
    if kind == "cycle":
        if n < 3:
            raise GraphError("cycle needs n >= 3")
        return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))
    raise GraphError(f"unknown graph kind {kind!r}")


def complete_graph(n: int) -> Graph:
    return named_graph("complete", n)


def path_graph(n: int) -> Graph:
    return named_graph("path", n)


def cycle_graph(n: int) -> Graph:
    return named_graph("cycle", n)


def chh_graph(which: str) -> Graph:
    """The two 2-connected diameter-2 Class-1 graphs on six vertices.

    A 6-cycle x1..x6 (x_i is vertex i-1) with chords x1x3 and x3x5 gives G1;
    G2 additionally has x1x5.
    """
    which = which.upper()
    if which not in ("G1", "G2"):
        raise GraphError(f"unknown graph {which!r}; expected G1 or G2")
    edges = [(i, (i + 1) % 6) for i in range(6)] + [(0, 2), (2, 4)]
    if which == "G2":
        edges.append((0, 4))
    return Graph.from_edges(6, edges)


@dataclass(frozen=True)
class BlowupSpec:
    class_sizes: tuple[int, ...]

    def __post_init__(self):
        if len(self.class_sizes) < 2:
            raise GraphError("a blow-up needs at least two classes")
        if any(s < 1 for s in self.class_sizes):
            raise GraphError("class sizes must be positive")

    def classes(self) -> list[range]:
        out, start = [], 0
        for s in self.class_sizes:
            out.append(range(start, start + s))
            start += s
        return out


def path_blowup(spec: BlowupSpec | tuple[int, ...] | list[int]) -> Graph:
    """Independent classes V_0..V_d, each fully joined to its neighbours in the path."""
    if not isinstance(spec, BlowupSpec):
        spec = BlowupSpec(tuple(spec))
    classes = spec.classes()
    edges = [(a, b) for left, right in zip(classes, classes[1:]) for a in left for b in right]
    return Graph.from_edges(sum(spec.class_sizes), edges)


def gnp_sample(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi G(n, p).

    Uses numpy's PCG64 seeded with ``seed``; one uniform draw per vertex pair in
    lexicographic pair order, edge present iff the draw is below ``p``. The
    same ``(n, p, seed)`` gives the same graph everywhere, and for a fixed seed
    the graphs are nested as ``p`` grows.
    """
    if not 0.0 <= p <= 1.0:
        raise GraphError(f"edge probability {p} outside [0, 1]")
    if n < 0:
        raise GraphError("negative vertex count")
    pairs = list(combinations(range(n), 2))
    draws = np.random.Generator(np.random.PCG64(seed)).random(len(pairs))
    return Graph(n, frozenset(e for e, x in zip(pairs, draws) if x < p))
