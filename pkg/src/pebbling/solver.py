"""Exact pebbling reachability.

A distribution is a tuple of non-negative pebble counts indexed by vertex. A
move takes two pebbles off ``src`` and puts one on the adjacent ``dst``.

The search is a depth-first walk over descendant distributions with three
sound cuts: stop as soon as the target holds a pebble; give up on a state
whose weight ``sum(phi(v) * 2**-dist(v, target))`` is below 1, since no move
raises it; and never re-expand a state already known to fail.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import Graph, GraphError, GraphFormatError, distances

Distribution = tuple[int, ...]


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    src: int
    dst: int

    def to_json(self) -> dict:
        return {"from": self.src, "to": self.dst}

    @classmethod
    def from_json(cls, obj: dict) -> "Move":
        return cls(int(obj["from"]), int(obj["to"]))


@dataclass(frozen=True)
class Weight:
    value: Fraction
    # pebbles sitting in a component that does not contain the target
    stranded: int = 0


@dataclass
class PebbleResult:
    reachable: bool
    certificate: list[Move] | None
    states_expanded: int = 0

    def __bool__(self) -> bool:
        return self.reachable


def as_distribution(g: Graph, d: Iterable[int]) -> Distribution:
    d = tuple(int(x) for x in d)
    if len(d) != g.n:
        raise GraphError(f"distribution has {len(d)} entries, graph has {g.n} vertices")
    if any(x < 0 for x in d):
        raise GraphError("pebble counts must be non-negative")
    return d


def size(d: Sequence[int]) -> int:
    return sum(d)


def apply_move(g: Graph, d: Sequence[int], m: Move) -> Distribution:
    if not (0 <= m.src < g.n and 0 <= m.dst < g.n) or not g.has_edge(m.src, m.dst):
        raise MoveError(f"{m.src}-{m.dst} is not an edge")
    if d[m.src] < 2:
        raise MoveError(f"vertex {m.src} holds {d[m.src]} pebble(s); a move needs 2")
    out = list(d)
    out[m.src] -= 2
    out[m.dst] += 1
    return tuple(out)


def weight(g: Graph, d: Sequence[int], target: int) -> Weight:
    dist = distances(g, target)
    value = Fraction(0)
    stranded = 0
    for v, c in enumerate(d):
        if dist[v] == math.inf:
            stranded += c
        elif c:
            value += Fraction(c, 1 << int(dist[v]))
    return Weight(value, stranded)


def check_certificate(g: Graph, d: Sequence[int], target: int, moves: Sequence[Move]) -> str | None:
    """Replay ``moves``; return None when they are legal and end on the target, else the reason."""
    state = tuple(d)
    for i, m in enumerate(moves):
        try:
            state = apply_move(g, state, m)
        except MoveError as exc:
            return f"move {i} ({m.src}->{m.dst}): {exc}"
    if state[target] < 1:
        return f"final distribution leaves target {target} empty"
    return None


def verify_certificate(g: Graph, d: Sequence[int], target: int, moves: Sequence[Move]) -> bool:
    return check_certificate(g, d, target, moves) is None


class PebblingSolver:
    """Reachability oracle for a fixed (graph, target).

    The failed-state memo persists across :meth:`solve` calls: whether a state
    reaches the target depends on nothing but the state, so sharing it across
    distributions is sound and saves a lot when scanning many of them.
    """

    def __init__(self, g: Graph, target: int):
        if not 0 <= target < g.n:
            raise GraphError(f"target {target} out of range for n={g.n}")
        self.g = g
        self.target = target
        dist = distances(g, target)
        depth = int(max(x for x in dist if x != math.inf))
        self.threshold = 1 << depth
        self.unit = [0 if x == math.inf else 1 << (depth - int(x)) for x in dist]
        # vertices outside the target's component can never contribute
        live = [v for v in g.vertices() if dist[v] != math.inf and v != target]
        self.order = sorted(live, key=lambda v: (dist[v], v))
        self.moves = [tuple(sorted(g.adj[x], key=lambda y: (dist[y], y))) for x in g.vertices()]
        self.failed: set[Distribution] = set()
        self.expanded = 0

    def weight_numerator(self, d: Sequence[int]) -> int:
        return sum(c * u for c, u in zip(d, self.unit))

    def solve(self, d: Sequence[int]) -> PebbleResult:
        d = as_distribution(self.g, d)
        start = self.expanded
        if d[self.target] >= 1:
            return PebbleResult(True, [], 0)
        state = list(d)
        trail: list[tuple[int, int]] = []
        ok = self._search(state, self.weight_numerator(state), trail)
        cert = [Move(x, y) for x, y in trail] if ok else None
        return PebbleResult(ok, cert, self.expanded - start)

    def reachable(self, d: Sequence[int]) -> bool:
        """Like :meth:`solve` without input checks or a certificate."""
        if d[self.target]:
            return True
        state = list(d)
        return self._search(state, self.weight_numerator(state), [])

    def _search(self, state: list[int], w: int, trail: list[tuple[int, int]]) -> bool:
        t = self.target
        if state[t]:
            return True
        if w < self.threshold:
            return False
        key = tuple(state)
        if key in self.failed:
            return False
        self.expanded += 1
        unit = self.unit
        for x in self.order:
            if state[x] < 2:
                continue
            for y in self.moves[x]:
                state[x] -= 2
                state[y] += 1
                trail.append((x, y))
                if self._search(state, w - 2 * unit[x] + unit[y], trail):
                    state[x] += 2
                    state[y] -= 1
                    return True
                trail.pop()
                state[x] += 2
                state[y] -= 1
        self.failed.add(key)
        return False


def can_pebble(g: Graph, d: Sequence[int], target: int) -> PebbleResult:
    """Decide whether ``d`` or one of its descendants puts a pebble on ``target``."""
    result = PebblingSolver(g, target).solve(d)
    if result.reachable:
        assert verify_certificate(g, d, target, result.certificate)
    return result


# ---------------------------------------------------------------------------
# text formats


def parse_distribution(text: str, n: int | None = None) -> Distribution:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if len(lines) != 1:
        raise GraphFormatError(f"expected exactly one line of counts, found {len(lines)}")
    lineno, line = lines[0]
    try:
        counts = tuple(int(x) for x in line.split())
    except ValueError:
        raise GraphFormatError(f"non-integer pebble count in {line!r}", lineno) from None
    if any(c < 0 for c in counts):
        raise GraphFormatError("negative pebble count", lineno)
    if n is not None and len(counts) != n:
        raise GraphFormatError(f"expected {n} counts, found {len(counts)}", lineno)
    return counts


def format_distribution(d: Sequence[int]) -> str:
    return " ".join(str(c) for c in d) + "\n"


def certificate_to_json(moves: Sequence[Move]) -> str:
    return json.dumps([m.to_json() for m in moves])


def certificate_from_json(text: str) -> list[Move]:
    return [Move.from_json(obj) for obj in json.loads(text)]
