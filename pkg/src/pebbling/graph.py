"""Immutable simple graphs and the exact primitives the rest of the package needs.

Vertices are the integers ``0..n-1``. Everything here is deterministic: adjacency
lists are sorted and enumeration runs in a fixed order, so certificates and
test expectations are reproducible.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .flow import INF, FlowNetwork

Edge = tuple[int, int]
Path = tuple[int, ...]

ENUMERATION_GUARD = 6


class GraphError(ValueError):
    pass


class GraphFormatError(GraphError):
    """Malformed edge-list input; ``line`` is 1-based."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge]
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("negative vertex count")
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            if not (0 <= u < v < self.n):
                raise GraphError(f"bad edge {(u, v)} for n={self.n}")
            nbrs[u].append(v)
            nbrs[v].append(u)
        object.__setattr__(self, "adj", tuple(tuple(sorted(a)) for a in nbrs))
        object.__setattr__(self, "masks", tuple(sum(1 << w for w in a) for a in nbrs))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        seen: set[Edge] = set()
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {(u, v)} out of range for n={n}")
            e = _norm(u, v)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and (self.masks[u] >> v) & 1 == 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def with_edge(self, u: int, v: int) -> "Graph":
        if u == v or self.has_edge(u, v):
            raise GraphError(f"cannot add edge {(u, v)}")
        return Graph(self.n, self.edges | {_norm(u, v)})

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n == other.n and self.edges <= other.edges

    def check_path(self, path: Path) -> bool:
        """True iff ``path`` is a simple path of this graph."""
        if len(set(path)) != len(path):
            return False
        return all(self.has_edge(a, b) for a, b in zip(path, path[1:]))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")


def distances(g: Graph, v: int) -> list[float]:
    """BFS hop counts from ``v``; unreachable vertices get ``math.inf``."""
    _check_vertex(g, v)
    dist: list[float] = [math.inf] * g.n
    dist[v] = 0
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] == math.inf:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def all_distances(g: Graph) -> list[list[float]]:
    return [distances(g, v) for v in g.vertices()]


def diameter(g: Graph) -> float:
    if g.n == 0:
        raise GraphError("diameter of the empty graph is undefined")
    return max(max(row) for row in all_distances(g))


def is_connected(g: Graph) -> bool:
    return g.n > 0 and math.inf not in distances(g, 0)


def _split_network(g: Graph, s: int, t: int, forbidden: frozenset[int]) -> FlowNetwork:
    # vertex x -> in-node 2x, out-node 2x+1
    net = FlowNetwork(2 * g.n)
    for x in g.vertices():
        if x in forbidden:
            continue
        net.add_edge(2 * x, 2 * x + 1, INF if x in (s, t) else 1)
    for u, v in g.sorted_edges():
        if u in forbidden or v in forbidden:
            continue
        direct = {u, v} == {s, t}
        net.add_edge(2 * u + 1, 2 * v, 1 if direct else INF)
        net.add_edge(2 * v + 1, 2 * u, 1 if direct else INF)
    return net


def _paths_from_flow(net: FlowNetwork, s: int, t: int) -> list[Path]:
    paths = []
    for walk in net.decompose(2 * s + 1, 2 * t):
        # keep in-nodes (and s); walk alternates out -> in -> out ...
        verts = [s] + [node // 2 for node in walk[1:] if node % 2 == 0]
        paths.append(tuple(verts))
    paths.sort(key=lambda p: (len(p), p))
    return paths


def max_disjoint_paths(
    g: Graph, s: int, t: int, forbidden: Iterable[int] = ()
) -> list[Path]:
    """Maximum family of internally vertex-disjoint s-t paths avoiding ``forbidden``.

    Computed as a unit-capacity max-flow on the vertex-split digraph. If s and t
    are adjacent the direct edge contributes one path of length 1.
    """
    _check_vertex(g, s)
    _check_vertex(g, t)
    forbidden = frozenset(forbidden)
    if s == t:
        raise GraphError("endpoints must differ")
    if s in forbidden or t in forbidden:
        raise GraphError("endpoints may not be forbidden")
    net = _split_network(g, s, t, forbidden)
    net.max_flow(2 * s + 1, 2 * t)
    paths = _paths_from_flow(net, s, t)
    for p in paths:
        if not g.check_path(p) or forbidden.intersection(p):
            raise AssertionError(f"flow produced an invalid path {p}")
    return paths


def min_vertex_separator(
    g: Graph, s: int, t: int, forbidden: Iterable[int] = (), side: str = "source"
) -> tuple[list[Path], frozenset[int]]:
    """Minimum s-t vertex separator for non-adjacent s, t, with its Menger certificate.

    Returns ``(paths, cut)`` with ``len(paths) == len(cut)``; every path meets the
    cut in exactly one vertex. ``side`` picks the cut closest to s ("source") or
    closest to t ("sink") when several minimum cuts exist.
    """
    _check_vertex(g, s)
    _check_vertex(g, t)
    if s == t or g.has_edge(s, t):
        raise GraphError(f"{s} and {t} are adjacent or equal; no vertex separator exists")
    forbidden = frozenset(forbidden)
    net = _split_network(g, s, t, forbidden)
    net.max_flow(2 * s + 1, 2 * t)
    if side == "source":
        reach = net.residual_reachable(2 * s + 1)
        cut = frozenset(
            x for x in g.vertices() if x not in forbidden and 2 * x in reach and 2 * x + 1 not in reach
        )
    elif side == "sink":
        back = net.residual_coreachable(2 * t)
        cut = frozenset(
            x for x in g.vertices() if x not in forbidden and 2 * x + 1 in back and 2 * x not in back
        )
    else:
        raise ValueError(f"side must be 'source' or 'sink', not {side!r}")
    paths = _paths_from_flow(net, s, t)
    if len(paths) != len(cut):
        raise AssertionError("max-flow/min-cut mismatch")
    return paths, cut


def vertex_connectivity(g: Graph) -> int:
    """Menger connectivity; K_n has connectivity n-1 by convention."""
    if g.n < 2:
        raise GraphError("connectivity needs at least two vertices")
    if not is_connected(g):
        return 0
    best = g.n - 1
    for s, t in combinations(g.vertices(), 2):
        if best == 0:
            break
        if g.has_edge(s, t):
            continue
        net = _split_network(g, s, t, frozenset())
        best = min(best, net.max_flow(2 * s + 1, 2 * t, limit=best))
    return best


def _invariant_ok(g1: Graph, g2: Graph) -> bool:
    return g1.n == g2.n and g1.m == g2.m and sorted(map(len, g1.adj)) == sorted(map(len, g2.adj))


def isomorphisms(g1: Graph, g2: Graph, fixed: dict[int, int] | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every bijection ``perm`` with ``{perm[u], perm[v]}`` an edge of g2 iff ``{u, v}`` is one of g1.

    Plain backtracking with degree pruning; meant for small graphs.
    """
    if not _invariant_ok(g1, g2):
        return
    n = g1.n
    deg1 = [len(a) for a in g1.adj]
    deg2 = [len(a) for a in g2.adj]
    # assign high-degree, well-connected vertices first
    order = sorted(range(n), key=lambda v: (-deg1[v], v))
    perm = [-1] * n
    used = [False] * n
    fixed = fixed or {}

    def extend(i: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(perm)
            return
        u = order[i]
        candidates = [fixed[u]] if u in fixed else range(n)
        for w in candidates:
            if used[w] or deg2[w] != deg1[u]:
                continue
            ok = True
            for x in order[:i]:
                if g1.has_edge(u, x) != g2.has_edge(w, perm[x]):
                    ok = False
                    break
            if not ok:
                continue
            perm[u] = w
            used[w] = True
            yield from extend(i + 1)
            used[w] = False
            perm[u] = -1

    yield from extend(0)


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    return next(isomorphisms(g1, g2), None) is not None


def automorphism_orbits(g: Graph) -> list[list[int]]:
    """Vertex orbits of Aut(g), each sorted, listed by smallest member.

    Asks for one automorphism per candidate pair instead of listing the group,
    which keeps highly symmetric graphs (K_n) cheap.
    """
    orbit_of = list(range(g.n))
    for u in g.vertices():
        if orbit_of[u] != u:
            continue
        for w in range(u + 1, g.n):
            if orbit_of[w] != w:
                continue
            if next(isomorphisms(g, g, fixed={u: w}), None) is not None:
                orbit_of[w] = u
    orbits: dict[int, list[int]] = {}
    for v, rep in enumerate(orbit_of):
        orbits.setdefault(rep, []).append(v)
    return [orbits[k] for k in sorted(orbits)]


def enumerate_graphs(n: int, allow_large: bool = False) -> Iterator[Graph]:
    """Every labeled simple graph on n vertices; edge subsets in binary-counter order."""
    if n < 0:
        raise GraphError("negative vertex count")
    if n > ENUMERATION_GUARD and not allow_large:
        raise GraphError(f"refusing to enumerate 2^{n * (n - 1) // 2} graphs; pass allow_large=True")
    pairs = list(combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        yield Graph(n, frozenset(e for i, e in enumerate(pairs) if (mask >> i) & 1))


# ---------------------------------------------------------------------------
# edge-list text format


def parse_edge_list(text: str) -> Graph:
    header = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise GraphFormatError(f"expected integers, got {line!r}", lineno) from None
        if len(nums) != 2:
            raise GraphFormatError(f"expected two integers, got {len(nums)}", lineno)
        if header is None:
            n, m = nums
            if n < 0 or m < 0:
                raise GraphFormatError("negative header value", lineno)
            header = (n, m)
            continue
        u, v = nums
        n = header[0]
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"vertex out of range 0..{n - 1}", lineno)
        if u == v:
            raise GraphFormatError(f"self-loop at {u}", lineno)
        e = _norm(u, v)
        if e in seen:
            raise GraphFormatError(f"duplicate edge {u} {v}", lineno)
        seen.add(e)
        edges.append(e)
    if header is None:
        raise GraphFormatError("missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(f"header declares {header[1]} edges, found {len(edges)}")
    return Graph(header[0], frozenset(edges))


def format_edge_list(g: Graph, comment: str | None = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines.append(f"{g.n} {g.m}")
    lines += [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def read_edge_list(path) -> Graph:
    with open(path) as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path, comment: str | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_edge_list(g, comment))
