"""Successive-shortest-path min-cost flow, exact over Fractions.

Networks here are tiny (one node per graph edge plus one per district), so
Bellman-Ford on the residual graph is plenty.
"""
from __future__ import annotations

from .exceptions import Infeasible


class FlowNetwork:
    def __init__(self, n_nodes: int):
        self.n = n_nodes
        # residual arcs: to, cap, cost, rev index
        self.adj = [[] for _ in range(n_nodes)]
        self._arcs = []

    def add_arc(self, u: int, v: int, cap, cost) -> int:
        """Add arc ``u -> v``; returns a handle for :meth:`flow_on`."""
        self.adj[u].append([v, cap, cost, len(self.adj[v])])
        self.adj[v].append([u, cap * 0, -cost, len(self.adj[u]) - 1])
        self._arcs.append((u, len(self.adj[u]) - 1, cap))
        return len(self._arcs) - 1

    def flow_on(self, handle: int):
        u, pos, cap = self._arcs[handle]
        return cap - self.adj[u][pos][1]

    def _shortest_path(self, s: int):
        dist = [None] * self.n
        prev = [None] * self.n
        dist[s] = 0
        for _ in range(self.n):
            changed = False
            for u in range(self.n):
                if dist[u] is None:
                    continue
                for idx, (v, cap, cost, _) in enumerate(self.adj[u]):
                    if cap > 0 and (dist[v] is None or dist[u] + cost < dist[v]):
                        dist[v] = dist[u] + cost
                        prev[v] = (u, idx)
                        changed = True
            if not changed:
                break
        return dist, prev

    def min_cost_flow(self, s: int, t: int, amount):
        """Push ``amount`` units from ``s`` to ``t`` at minimum cost; returns the cost."""
        total_cost = 0
        remaining = amount
        while remaining > 0:
            dist, prev = self._shortest_path(s)
            if dist[t] is None:
                raise Infeasible("flow network cannot carry the required amount")
            push = remaining
            v = t
            while v != s:
                u, idx = prev[v]
                push = min(push, self.adj[u][idx][1])
                v = u
            v = t
            while v != s:
                u, idx = prev[v]
                arc = self.adj[u][idx]
                arc[1] -= push
                self.adj[v][arc[3]][1] += push
                v = u
            remaining -= push
            total_cost += push * dist[t]
        return total_cost
