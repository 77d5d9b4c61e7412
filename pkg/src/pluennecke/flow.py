"""Integer maximum flow (Dinic) with residual reachability for cut recovery."""

from __future__ import annotations

from collections import deque


class FlowNetwork:
    def __init__(self, n: int):
        self.n = n
        # each arc: [head, residual capacity, index of reverse arc]
        self.adj: list[list[list[int]]] = [[] for _ in range(n)]

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append([v, cap, len(self.adj[v])])
        self.adj[v].append([u, 0, len(self.adj[u]) - 1])

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.n
        level[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, cap, _ in self.adj[u]:
                if cap > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    queue.append(v)
        return level if level[t] >= 0 else None

    def max_flow(self, s: int, t: int) -> int:
        total = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return total
            cursor = [0] * self.n
            while True:
                pushed = self._augment(s, t, level, cursor)
                if not pushed:
                    break
                total += pushed

    def _augment(self, s: int, t: int, level: list[int], cursor: list[int]) -> int:
        # iterative DFS on the level graph; returns the bottleneck pushed
        stack = [s]
        arcs: list[list[int]] = []
        while stack:
            u = stack[-1]
            if u == t:
                push = min(a[1] for a in arcs)
                for a in arcs:
                    a[1] -= push
                    self.adj[a[0]][a[2]][1] += push
                return push
            edges = self.adj[u]
            while cursor[u] < len(edges):
                a = edges[cursor[u]]
                if a[1] > 0 and level[a[0]] == level[u] + 1:
                    break
                cursor[u] += 1
            if cursor[u] == len(edges):
                level[u] = -1
                stack.pop()
                if arcs:
                    arcs.pop()
                    cursor[stack[-1]] += 1
                continue
            a = edges[cursor[u]]
            arcs.append(a)
            stack.append(a[0])
        return 0

    def residual_reachable(self, s: int) -> list[bool]:
        seen = [False] * self.n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v, cap, _ in self.adj[u]:
                if cap > 0 and not seen[v]:
                    seen[v] = True
                    queue.append(v)
        return seen

    def residual_coreachable(self, t: int) -> list[bool]:
        """Vertices that can still push flow into ``t``."""
        seen = [False] * self.n
        seen[t] = True
        queue = deque([t])
        while queue:
            v = queue.popleft()
            for u, _, rev in self.adj[v]:
                if not seen[u] and self.adj[u][rev][1] > 0:
                    seen[u] = True
                    queue.append(u)
        return seen
