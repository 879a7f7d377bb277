"""Small integer max-flow used for Menger-style path and cut computations.

Edmonds-Karp on an adjacency-list residual network. Graphs handled here have at
most a few hundred nodes, so clarity wins over asymptotics.
"""

from __future__ import annotations

from collections import deque

INF = 1 << 30


class FlowNetwork:
    def __init__(self, size: int):
        self.size = size
        self.head: list[list[int]] = [[] for _ in range(size)]
        # parallel arrays indexed by arc id; arc ^ 1 is the reverse arc
        self.to: list[int] = []
        self.cap: list[int] = []
        self.orig: list[int] = []

    def add_edge(self, u: int, v: int, cap: int) -> int:
        arc = len(self.to)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.orig += [cap, 0]
        self.head[u].append(arc)
        self.head[v].append(arc + 1)
        return arc

    def flow_on(self, arc: int) -> int:
        return self.orig[arc] - self.cap[arc]

    def max_flow(self, s: int, t: int, limit: int = INF) -> int:
        total = 0
        while total < limit:
            parent = [-1] * self.size
            parent[s] = -2
            queue = deque([s])
            while queue and parent[t] == -1:
                u = queue.popleft()
                for arc in self.head[u]:
                    v = self.to[arc]
                    if self.cap[arc] > 0 and parent[v] == -1:
                        parent[v] = arc
                        queue.append(v)
            if parent[t] == -1:
                break
            push = limit - total
            v = t
            while v != s:
                arc = parent[v]
                push = min(push, self.cap[arc])
                v = self.to[arc ^ 1]
            v = t
            while v != s:
                arc = parent[v]
                self.cap[arc] -= push
                self.cap[arc ^ 1] += push
                v = self.to[arc ^ 1]
            total += push
        return total

    def residual_reachable(self, s: int) -> set[int]:
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for arc in self.head[u]:
                v = self.to[arc]
                if self.cap[arc] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    def residual_coreachable(self, t: int) -> set[int]:
        """Nodes with a residual path to ``t``."""
        seen = {t}
        stack = [t]
        while stack:
            y = stack.pop()
            for arc in self.head[y]:
                x = self.to[arc]
                if self.cap[arc ^ 1] > 0 and x not in seen:
                    seen.add(x)
                    stack.append(x)
        return seen

    def decompose(self, s: int, t: int) -> list[list[int]]:
        """Split the current flow into unit s-t walks (node lists).

        Flow cycles met during a walk are cancelled, so every returned walk is
        a simple path in the network.
        """
        flow = {arc: self.flow_on(arc) for arc in range(0, len(self.to), 2) if self.flow_on(arc) > 0}
        out: dict[int, list[int]] = {}
        for arc in flow:
            out.setdefault(self.to[arc ^ 1], []).append(arc)
        paths = []
        while True:
            arcs = [a for a in out.get(s, ()) if flow[a] > 0]
            if not arcs:
                break
            node_seq = [s]
            arc_seq: list[int] = []
            pos = {s: 0}
            u = s
            while u != t:
                arc = next(a for a in out[u] if flow[a] > 0)
                v = self.to[arc]
                if v in pos:
                    # cancel the cycle v -> ... -> u -> v
                    start = pos[v]
                    for a in arc_seq[start:] + [arc]:
                        flow[a] -= 1
                    for w in node_seq[start + 1:]:
                        del pos[w]
                    node_seq = node_seq[: start + 1]
                    arc_seq = arc_seq[:start]
                    u = v
                    continue
                arc_seq.append(arc)
                node_seq.append(v)
                pos[v] = len(node_seq) - 1
                u = v
            for a in arc_seq:
                flow[a] -= 1
            paths.append(node_seq)
        return paths
