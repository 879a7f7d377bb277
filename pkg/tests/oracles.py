"""Brute-force reference implementations.

Nothing here imports the package's solver, flow or search code; graphs are
plain ``(n, edge set)`` pairs so the checks stay independent of the code they
check.
"""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from itertools import combinations, permutations


def adjacency(n, edges):
    adj = {v: set() for v in range(n)}
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def bfs_dist(n, edges, src, removed=frozenset()):
    adj = adjacency(n, edges)
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for w in adj[u]:
            if w not in dist and w not in removed:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def connected_after_removal(n, edges, removed):
    rest = [v for v in range(n) if v not in removed]
    if len(rest) <= 1:
        return False
    return len(bfs_dist(n, edges, rest[0], frozenset(removed))) == len(rest)


def brute_connectivity(n, edges):
    """Smallest vertex set whose removal disconnects or leaves one vertex."""
    for k in range(n):
        for cut in combinations(range(n), k):
            if not connected_after_removal(n, edges, set(cut)):
                return k
    return n - 1


def brute_min_cut(n, edges, s, t, forbidden=frozenset()):
    """Size of the smallest vertex set (avoiding s, t) separating s from t."""
    others = [v for v in range(n) if v not in (s, t) and v not in forbidden]
    for k in range(len(others) + 1):
        for cut in combinations(others, k):
            if t not in bfs_dist(n, edges, s, frozenset(cut) | frozenset(forbidden)):
                return k
    raise ValueError("s and t adjacent")


def reachable_states(n, edges, start):
    """Every descendant of ``start`` (including itself), by exhaustive BFS."""
    adj = adjacency(n, edges)
    start = tuple(start)
    seen = {start}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for x in range(n):
            if s[x] >= 2:
                for y in adj[x]:
                    nxt = list(s)
                    nxt[x] -= 2
                    nxt[y] += 1
                    nxt = tuple(nxt)
                    if nxt not in seen:
                        seen.add(nxt)
                        queue.append(nxt)
    return seen


def oracle_reachable(n, edges, dist, target):
    return any(s[target] >= 1 for s in reachable_states(n, edges, dist))


def compositions(total, parts):
    """Every tuple of ``parts`` non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def oracle_pebbling_number(n, edges):
    """Least p with every size-p distribution reaching every target (connected graphs)."""
    p = 1
    while True:
        ok = True
        for d in compositions(p, n):
            states = reachable_states(n, edges, d)
            covered = {v for s in states for v in range(n) if s[v] >= 1}
            if len(covered) < n:
                ok = False
                break
        if ok:
            return p
        p += 1


def oracle_weight(n, edges, dist, target):
    d = bfs_dist(n, edges, target)
    return sum((Fraction(c, 2 ** d[v]) for v, c in enumerate(dist) if v in d), Fraction(0))


def all_simple_paths(n, edges, src, ok_end, ok_interior):
    adj = adjacency(n, edges)
    out = []

    def walk(path):
        u = path[-1]
        for w in sorted(adj[u]):
            if w in path:
                continue
            if ok_end(w):
                out.append(tuple(path + [w]))
            if ok_interior(w):
                walk(path + [w])

    walk([src])
    return out


def brute_claim1(n, edges, phi, v):
    """Largest family of v-to-big paths obeying the capacity/disjointness/interior rules.

    A family may repeat a single-edge path v-b: copies share only v and b.
    """
    bigs = {b for b in range(n) if phi[b] >= 2 and b != v}
    interior_ok = {x for x in range(n) if phi[x] >= 1 and x != v}
    paths = all_simple_paths(n, edges, v, lambda w: w in bigs, lambda w: w in interior_ok)
    best = 0

    def compatible(p, chosen):
        for q in chosen:
            common = set(p) & set(q)
            allowed = {v} | ({p[-1]} if p[-1] == q[-1] else set())
            if not common <= allowed:
                return False
        return True

    def search(i, chosen, load):
        nonlocal best
        best = max(best, len(chosen))
        for j in range(i, len(paths)):
            p = paths[j]
            end = p[-1]
            if load.get(end, 0) >= phi[end] // 2 or not compatible(p, chosen):
                continue
            load[end] = load.get(end, 0) + 1
            search(j if len(p) == 2 else j + 1, chosen + [p], load)
            load[end] -= 1

    search(0, [], {})
    return best


def is_iso_bruteforce(n1, e1, n2, e2):
    if n1 != n2 or len(e1) != len(e2):
        return False
    target = {frozenset(e) for e in e2}
    return any({frozenset((p[u], p[v])) for u, v in e1} == target for p in permutations(range(n1)))


def gnp_connected_probability(n, p):
    """Exact Pr(G(n, p) connected) via the standard component-of-vertex-1 recurrence."""
    from math import comb

    q = 1 - p
    conn = [0.0, 1.0]
    for m in range(2, n + 1):
        disconnected = sum(comb(m - 1, k - 1) * conn[k] * q ** (k * (m - k)) for k in range(1, m))
        conn.append(1 - disconnected)
    return conn[n]
