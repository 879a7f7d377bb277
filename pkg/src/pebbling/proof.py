"""Separator and path-family machinery behind the connectivity bound for Class 0.

Given a graph, a distribution ``phi`` and a zero ``z0`` that ``phi`` cannot
pebble, the objects built here are:

* the zeros / units / bigs partition of the vertices,
* for each vertex v the blow-up graph: v, the units, every big b != v replaced
  by ``phi(b) // 2`` independent twins, and an apex joined to all twins,
* a minimum v-apex vertex separator in the blow-up with its disjoint-path
  certificate, and its projection back onto the base graph,
* the greedy big-vertex selection and the truncated b-z0 path families.

:func:`audit_counterexample` runs all of it and states, inequality by
inequality, whether it held on the instance. With D the diameter, an
unpebblable ``z0`` forces every vertex to hold fewer than 2**D pebbles, which
drives all of the bounds checked below.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .flow import INF, FlowNetwork
from .graph import (
    Graph,
    GraphError,
    Path,
    diameter,
    is_connected,
    max_disjoint_paths,
    min_vertex_separator,
    vertex_connectivity,
)
from .solver import PebblingSolver, as_distribution


class Verdict(str, enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    PREMISE_NOT_MET = "PREMISE-NOT-MET"


@dataclass(frozen=True)
class ZUBPartition:
    zeros: tuple[int, ...]
    units: tuple[int, ...]
    bigs: tuple[int, ...]
    big_total: int
    # average pebbles per big; None when there are no bigs
    omega: Fraction | None
    size_is_order: bool

    @property
    def m(self) -> int:
        return len(self.bigs)


def zub_partition(g: Graph, d: Sequence[int]) -> ZUBPartition:
    d = as_distribution(g, d)
    zeros = tuple(v for v in g.vertices() if d[v] == 0)
    units = tuple(v for v in g.vertices() if d[v] == 1)
    bigs = tuple(v for v in g.vertices() if d[v] > 1)
    big_total = sum(d[b] for b in bigs)
    omega = Fraction(big_total, len(bigs)) if bigs else None
    size_is_order = sum(d) == g.n
    if size_is_order:
        # every surplus pebble on a big pays for one empty vertex
        assert big_total == len(bigs) + len(zeros)
        if bigs:
            assert len(zeros) == len(bigs) * (omega - 1)
    return ZUBPartition(zeros, units, bigs, big_total, omega, size_is_order)


@dataclass(frozen=True)
class BlowupGraph:
    base_vertex: int
    graph: Graph
    root: int
    apex: int
    # node -> base vertex it stands for (-1 for the apex)
    origin: tuple[int, ...]
    # big b -> nodes of its twin class
    classes: dict[int, tuple[int, ...]]

    def unit_nodes(self) -> list[int]:
        twin = {x for nodes in self.classes.values() for x in nodes}
        return [x for x in range(self.graph.n) if x not in twin and x not in (self.root, self.apex)]

    def big_nodes(self) -> set[int]:
        return {x for nodes in self.classes.values() for x in nodes}


def blowup_graph(g: Graph, d: Sequence[int], v: int) -> BlowupGraph:
    d = as_distribution(g, d)
    origin = [v]
    for u in g.vertices():
        if d[u] == 1 and u != v:
            origin.append(u)
    classes: dict[int, tuple[int, ...]] = {}
    for b in g.vertices():
        if d[b] > 1 and b != v:
            start = len(origin)
            origin += [b] * (d[b] // 2)
            classes[b] = tuple(range(start, len(origin)))
    apex = len(origin)
    edges = [
        (x, y)
        for x in range(apex)
        for y in range(x + 1, apex)
        if g.has_edge(origin[x], origin[y])
    ]
    edges += [(x, apex) for nodes in classes.values() for x in nodes]
    return BlowupGraph(v, Graph.from_edges(apex + 1, edges), 0, apex, tuple(origin) + (-1,), classes)


@dataclass
class SeparatorReport:
    v: int
    blowup: BlowupGraph
    cut: frozenset[int]
    paths: list[Path]
    separator: frozenset[int]
    statement1: bool
    statement3_raw: bool
    statement3: bool
    repaired: bool

    @property
    def cut_size(self) -> int:
        return len(self.cut)

    def to_json(self) -> dict:
        origin = self.blowup.origin
        return {
            "v": self.v,
            "blowup_nodes": self.blowup.graph.n,
            "cut_size": len(self.cut),
            "cut_origins": sorted(origin[x] for x in self.cut),
            "separator": sorted(self.separator),
            "disjoint_paths": [[origin[x] for x in p[:-1]] + ["apex"] for p in self.paths],
            "statement1": self.statement1,
            "statement3": self.statement3,
            "repaired": self.repaired,
        }


def _separates(h: BlowupGraph, cut: frozenset[int], goal: set[int]) -> bool:
    """True iff every root-to-``goal`` path in the blow-up meets ``cut``."""
    seen = {h.root}
    stack = [h.root]
    while stack:
        x = stack.pop()
        if x in goal:
            return False
        for y in h.graph.adj[x]:
            if y not in seen and y not in cut:
                seen.add(y)
                stack.append(y)
    return True


def _classes_whole(h: BlowupGraph, cut: frozenset[int]) -> bool:
    return all(not cut.intersection(nodes) or cut.issuperset(nodes) for nodes in h.classes.values())


def min_separator(g: Graph, d: Sequence[int], v: int) -> SeparatorReport:
    h = blowup_graph(g, d, v)
    if not h.classes:
        cut: frozenset[int] = frozenset()
        paths: list[Path] = []
    else:
        paths, cut = min_vertex_separator(h.graph, h.root, h.apex)
    raw_ok = _classes_whole(h, cut)
    repaired = False
    if not raw_ok:
        # every minimum cut keeps twin classes whole (twins share neighbourhoods),
        # so the other extreme minimum cut must work
        _, alt = min_vertex_separator(h.graph, h.root, h.apex, side="sink")
        if len(alt) != len(cut) or not _classes_whole(h, alt):
            raise AssertionError(f"no class-respecting minimum cut found for v={v}")
        cut, repaired = alt, True
    if not _separates(h, cut, {h.apex}) or len(cut) != len(paths):
        raise AssertionError(f"invalid separator for v={v}")
    statement1 = _separates(h, cut, h.big_nodes())
    origin = h.origin
    unit_nodes = set(h.unit_nodes())
    separator = frozenset(origin[x] for x in cut if x in unit_nodes) | frozenset(
        b for b, nodes in h.classes.items() if cut.issuperset(nodes)
    )
    return SeparatorReport(v, h, cut, paths, separator, statement1, raw_ok, _classes_whole(h, cut), repaired)


@dataclass
class Claim1Family:
    bound: int
    # each path runs from v to a big, interior through units only
    paths: list[Path]


def claim1_bound(g: Graph, d: Sequence[int], v: int) -> Claim1Family:
    """Largest family of v-to-big paths, at most phi(b)//2 ending at each big b.

    Paths may share only v and a common endpoint, and pass through units and
    bigs only. A path running through a big can be cut short there without
    breaking any rule, so routing interiors through units alone loses nothing;
    that makes the problem a plain max-flow.
    """
    d = as_distribution(g, d)
    # node ids: vertex x -> in 2x, out 2x+1; sink 2n
    n = g.n
    sink = 2 * n
    net = FlowNetwork(2 * n + 1)
    for x in g.vertices():
        if x == v:
            continue
        if d[x] == 1:
            net.add_edge(2 * x, 2 * x + 1, 1)
        elif d[x] > 1:
            net.add_edge(2 * x, sink, d[x] // 2)
    for x in g.vertices():
        if x != v and d[x] != 1:
            continue
        for y in g.adj[x]:
            if y != v and d[y] >= 1:
                net.add_edge(2 * x + 1, 2 * y, INF)
    bound = net.max_flow(2 * v + 1, sink)
    paths = []
    for walk in net.decompose(2 * v + 1, sink):
        paths.append(tuple([v] + [node // 2 for node in walk[1:-1] if node % 2 == 0]))
    assert len(paths) == bound
    return Claim1Family(bound, sorted(paths, key=lambda p: (len(p), p)))


@dataclass
class B0Selection:
    order: list[int]
    # (chosen big, bigs removed with it, pebbles on chosen + removed)
    steps: list[tuple[int, tuple[int, ...], int]]
    step_cap: int
    big_total: int

    @property
    def q(self) -> int:
        return len(self.order)

    @property
    def steps_within_cap(self) -> bool:
        return all(w < self.step_cap for _, _, w in self.steps)

    @property
    def count_holds(self) -> bool:
        return self.q * self.step_cap > self.big_total


def _separators(g: Graph, d: Sequence[int], vertices, cache: dict[int, SeparatorReport] | None):
    cache = {} if cache is None else cache
    for v in vertices:
        if v not in cache:
            cache[v] = min_separator(g, d, v)
    return cache


def select_b0(
    g: Graph,
    d: Sequence[int],
    separators: dict[int, SeparatorReport] | None = None,
) -> B0Selection:
    """Greedy: take the smallest remaining big b, drop the bigs in S_b, repeat.

    A later pick is never in the separator of an earlier one. Each step's
    pebble mass is compared to ``2**(D+2)``; if all steps stay under it, the
    number of picks exceeds (pebbles on bigs) / 2**(D+2).
    """
    d = as_distribution(g, d)
    bigs = [b for b in g.vertices() if d[b] > 1]
    if not bigs:
        raise GraphError("no vertex holds two or more pebbles")
    depth = diameter(g)
    if depth == math.inf:
        raise GraphError("disconnected graph")
    seps = _separators(g, d, bigs, separators)
    remaining = set(bigs)
    order, steps = [], []
    while remaining:
        b = min(remaining)
        removed = tuple(sorted(seps[b].separator & remaining - {b}))
        remaining -= {b, *removed}
        order.append(b)
        steps.append((b, removed, d[b] + sum(d[x] for x in removed)))
    return B0Selection(order, steps, 1 << (int(depth) + 2), sum(d[b] for b in bigs))


@dataclass
class RootedPath:
    root: int
    path: Path

    @property
    def terminal(self) -> int:
        return self.path[-1]


@dataclass
class TerminalFamilies:
    z0: int
    hub: frozenset[int]  # union of S_b over the chosen bigs
    paths: list[RootedPath]
    found: dict[int, int]  # root -> disjoint root-z0 paths found
    kept: dict[int, int]  # root -> paths avoiding S_root
    adjacent_roots: list[int]  # roots adjacent to z0 (impossible when z0 is unpebblable)

    def by_terminal(self) -> dict[int, list[RootedPath]]:
        out: dict[int, list[RootedPath]] = {}
        for rp in self.paths:
            out.setdefault(rp.terminal, []).append(rp)
        return out


def terminal_families(
    g: Graph,
    d: Sequence[int],
    b0: Sequence[int],
    z0: int,
    separators: dict[int, SeparatorReport] | None = None,
) -> TerminalFamilies:
    d = as_distribution(g, d)
    if d[z0] != 0:
        raise GraphError(f"z0={z0} holds pebbles")
    seps = _separators(g, d, b0, separators)
    hub = frozenset().union(*(seps[b].separator for b in b0)) if b0 else frozenset()
    stop = hub | {x for x in g.vertices() if d[x] == 0}
    paths, found, kept, adjacent = [], {}, {}, []
    for b in b0:
        if g.has_edge(b, z0):
            adjacent.append(b)
        family = max_disjoint_paths(g, b, z0)
        found[b] = len(family)
        survivors = [p for p in family if not seps[b].separator.intersection(p)]
        kept[b] = len(survivors)
        for p in survivors:
            cut_at = next(i for i in range(1, len(p)) if p[i] in stop)
            paths.append(RootedPath(b, p[: cut_at + 1]))
    return TerminalFamilies(z0, hub, paths, found, kept, adjacent)


def disjointness_violations(families: TerminalFamilies) -> list[tuple[RootedPath, RootedPath]]:
    """Pairs with distinct roots and a shared terminal that also share another vertex."""
    bad = []
    for group in families.by_terminal().values():
        for i, a in enumerate(group):
            for b in group[i + 1:]:
                if a.root != b.root and set(a.path) & set(b.path) != {a.terminal}:
                    bad.append((a, b))
    return bad


@dataclass
class ClaimVerdict:
    claim: str
    premise_met: bool
    verdict: Verdict
    quantities: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "premise_met": self.premise_met,
            "verdict": self.verdict.value,
            "quantities": self.quantities,
            "witnesses": self.witnesses,
        }


@dataclass
class Audit:
    graph: Graph
    distribution: tuple[int, ...]
    z0: int
    z0_reachable: bool
    diameter: float
    claims: list[ClaimVerdict]
    separators: dict[int, SeparatorReport] = field(default_factory=dict)
    note: str = ""

    def claim(self, name: str) -> ClaimVerdict:
        return next(c for c in self.claims if c.claim == name)

    def verdicts(self) -> dict[str, str]:
        return {c.claim: c.verdict.value for c in self.claims}

    def to_json(self) -> dict:
        return {
            "graph": {"n": self.graph.n, "edges": [list(e) for e in self.graph.sorted_edges()]},
            "distribution": list(self.distribution),
            "z0": self.z0,
            "z0_reachable": self.z0_reachable,
            "diameter": None if self.diameter == math.inf else int(self.diameter),
            "note": self.note,
            "claims": [c.to_json() for c in self.claims],
            "separators": [self.separators[v].to_json() for v in sorted(self.separators)],
        }


def _verdict(premise: bool, ok: bool) -> Verdict:
    if not ok:
        return Verdict.FAILS
    return Verdict.HOLDS if premise else Verdict.PREMISE_NOT_MET


def audit_counterexample(g: Graph, d: Sequence[int], z0: int) -> Audit:
    """Run the whole separator pipeline on (g, d, z0) and grade every inequality.

    Stops early with a note when z0 is reachable or g is disconnected, since
    nothing downstream is meaningful then.
    """
    d = as_distribution(g, d)
    if not 0 <= z0 < g.n:
        raise GraphError(f"z0={z0} out of range")
    if d[z0] != 0:
        raise GraphError(f"z0={z0} is not a zero of the distribution")
    if not is_connected(g):
        return Audit(g, d, z0, False, math.inf, [], note="premise fails: graph disconnected")
    depth = int(diameter(g))
    reach_cap = 1 << depth
    if PebblingSolver(g, z0).reachable(d):
        return Audit(g, d, z0, True, depth, [], note="premise fails: z0 reachable")

    claims: list[ClaimVerdict] = []
    part = zub_partition(g, d)
    claims.append(
        ClaimVerdict(
            "partition",
            part.size_is_order,
            Verdict.HOLDS if part.size_is_order else Verdict.PREMISE_NOT_MET,
            {
                "zeros": len(part.zeros),
                "units": len(part.units),
                "bigs": part.m,
                "big_total": part.big_total,
                "omega": str(part.omega) if part.omega is not None else None,
                "size": sum(d),
            },
        )
    )

    seps = _separators(g, d, g.vertices(), None)
    fams = {v: claim1_bound(g, d, v) for v in g.vertices()}
    bad1 = [v for v in g.vertices() if fams[v].bound >= reach_cap]
    claims.append(
        ClaimVerdict(
            "claim1",
            True,
            _verdict(True, not bad1),
            {"cap": reach_cap, "bounds": {v: fams[v].bound for v in g.vertices()}},
            [{"v": v, "paths": [list(p) for p in fams[v].paths]} for v in bad1],
        )
    )

    bad2 = [
        v
        for v in g.vertices()
        if seps[v].cut_size >= reach_cap or not seps[v].statement1 or not seps[v].statement3
    ]
    claims.append(
        ClaimVerdict(
            "claim2",
            True,
            _verdict(True, not bad2),
            {
                "cap": reach_cap,
                "cut_sizes": {v: seps[v].cut_size for v in g.vertices()},
                "repaired": [v for v in g.vertices() if seps[v].repaired],
            },
            [seps[v].to_json() for v in bad2],
        )
    )

    mass_cap = 1 << (depth + 2)
    mass = {v: d[v] + sum(d[b] for b in seps[v].separator) for v in g.vertices()}
    bad3 = [v for v in g.vertices() if mass[v] >= mass_cap]
    claims.append(
        ClaimVerdict(
            "claim3",
            True,
            _verdict(True, not bad3),
            {"cap": mass_cap, "mass": mass},
            [{"v": v, "separator": sorted(seps[v].separator)} for v in bad3],
        )
    )

    if not part.bigs:
        claims.append(ClaimVerdict("claim4", False, Verdict.PREMISE_NOT_MET, {"bigs": 0}))
        claims.append(ClaimVerdict("claim5", False, Verdict.PREMISE_NOT_MET))
        return Audit(g, d, z0, False, depth, claims, seps, note="no bigs")

    sel = select_b0(g, d, seps)
    ordered_ok = all(
        sel.order[j] not in seps[sel.order[i]].separator
        for i in range(sel.q)
        for j in range(i + 1, sel.q)
    )
    premise4 = sel.steps_within_cap
    claims.append(
        ClaimVerdict(
            "claim4",
            premise4,
            _verdict(premise4, ordered_ok and (sel.count_holds or not premise4)),
            {
                "q": sel.q,
                "order": sel.order,
                "step_masses": [w for _, _, w in sel.steps],
                "step_cap": sel.step_cap,
                "big_total": sel.big_total,
                "q_times_cap": sel.q * sel.step_cap,
            },
        )
    )

    tf = terminal_families(g, d, sel.order, z0, seps)
    bad5 = disjointness_violations(tf)
    stops = set(tf.hub) | set(part.zeros)
    terminals_ok = all(rp.terminal in stops for rp in tf.paths)
    claims.append(
        ClaimVerdict(
            "claim5",
            not tf.adjacent_roots,
            _verdict(not tf.adjacent_roots, not bad5 and terminals_ok),
            {
                "family_size": len(tf.paths),
                "found": tf.found,
                "kept": tf.kept,
                "hub": sorted(tf.hub),
                "adjacent_roots": tf.adjacent_roots,
            },
            [{"a": list(a.path), "b": list(b.path)} for a, b in bad5],
        )
    )

    groups = tf.by_terminal()
    worst = max((len({rp.root for rp in grp}) for grp in groups.values()), default=0)
    claims.append(
        ClaimVerdict(
            "terminal_multiplicity",
            True,
            _verdict(True, worst < reach_cap),
            {"max_roots_per_terminal": worst, "cap": reach_cap},
        )
    )

    kappa = vertex_connectivity(g)
    needed = 1 << (2 * depth + 3)
    stop_count = len(stops)
    premise_final = kappa >= needed
    ratio_exceeds = len(tf.paths) > (reach_cap - 1) * stop_count
    # under the premise the ratio would exceed the threshold and force a contradiction
    claims.append(
        ClaimVerdict(
            "final_count",
            premise_final,
            _verdict(premise_final, not premise_final),
            {
                "connectivity": kappa,
                "required_connectivity": needed,
                "family_size": len(tf.paths),
                "stop_set_size": stop_count,
                "ratio": str(Fraction(len(tf.paths), stop_count)) if stop_count else None,
                "threshold": reach_cap - 1,
                "ratio_exceeds_threshold": ratio_exceeds,
            },
        )
    )
    return Audit(g, d, z0, False, depth, claims, seps)
