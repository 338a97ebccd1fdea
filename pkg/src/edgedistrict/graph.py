"""Undirected weighted multigraphs, shortest paths and the edge-to-vertex metric.

Edges are identified by their position in the input list, so parallel edges
are distinct objects.  Weights and distances are kept as
:class:`fractions.Fraction` unless the graph is built with ``exact=False``.
"""
from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from .exceptions import DisconnectedGraph, InvalidInstance

Number = Union[Fraction, float]


def as_number(value, exact: bool = True) -> Number:
    """Coerce ints, floats, Fractions and ``"a/b"`` strings to the working type."""
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if exact:
        if isinstance(value, float):
            # decimal reading, so 0.1 becomes 1/10 rather than its binary expansion
            return Fraction(repr(value))
        return Fraction(value)
    if isinstance(value, str):
        return float(Fraction(value))
    return float(value)


def is_zero(value: Number, tol: float = 1e-9) -> bool:
    if isinstance(value, Fraction):
        return value == 0
    return abs(value) <= tol


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph on vertices ``0..vertex_count-1``.

    ``edges`` holds ``(u, v, b)`` triples; ``b`` must be positive.
    """

    vertex_count: int
    edges: tuple = ()
    exact: bool = True
    labels: tuple | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise InvalidInstance("vertex_count must be nonnegative")
        clean = []
        for idx, edge in enumerate(self.edges):
            if len(edge) == 2:
                u, v, b = edge[0], edge[1], 1
            else:
                u, v, b = edge
            u, v = int(u), int(v)
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise InvalidInstance(f"edge {idx} has an endpoint out of range")
            if u == v:
                raise InvalidInstance(f"edge {idx} is a self-loop")
            b = as_number(b, self.exact)
            if b <= 0:
                raise InvalidInstance(f"edge {idx} has nonpositive weight")
            clean.append((u, v, b))
        object.__setattr__(self, "edges", tuple(clean))
        if self.labels is not None:
            if len(self.labels) != self.vertex_count:
                raise InvalidInstance("one label per vertex required")
            object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        u, v, _ = self.edges[e]
        return u, v

    def weight(self, e: int) -> Number:
        return self.edges[e][2]

    @cached_property
    def total_weight(self) -> Number:
        zero = Fraction(0) if self.exact else 0.0
        return sum((b for _, _, b in self.edges), zero)

    @cached_property
    def is_unweighted(self) -> bool:
        return all(b == 1 for _, _, b in self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists the indices of edges touching ``v`` (the set delta(v))."""
        inc = [[] for _ in range(self.vertex_count)]
        for idx, (u, v, _) in enumerate(self.edges):
            inc[u].append(idx)
            inc[v].append(idx)
        return tuple(tuple(x) for x in inc)

    def neighbors(self, v: int) -> Iterable[tuple[int, int]]:
        """Yield ``(edge index, other endpoint)`` pairs around ``v``."""
        for idx in self.incidence[v]:
            a, b, _ = self.edges[idx]
            yield idx, (b if a == v else a)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def is_connected(self) -> bool:
        if self.vertex_count <= 1:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            v = queue.popleft()
            for _, w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.vertex_count

    def with_unit_weights(self) -> "Graph":
        return Graph(self.vertex_count, tuple((u, v, 1) for u, v, _ in self.edges),
                     exact=self.exact, labels=self.labels)


@dataclass(frozen=True)
class DistanceTable:
    """All-pairs shortest path lengths plus the edge-distance offset ``alpha``."""

    dist: tuple
    alpha: Number

    def __call__(self, i: int, j: int) -> Number:
        return self.dist[i][j]

    def __len__(self):
        return len(self.dist)


def _dijkstra(graph: Graph, source: int) -> list:
    inf = None
    best = [inf] * graph.vertex_count
    zero = Fraction(0) if graph.exact else 0.0
    best[source] = zero
    heap = [(zero, source)]
    done = [False] * graph.vertex_count
    while heap:
        d, v = heapq.heappop(heap)
        if done[v]:
            continue
        done[v] = True
        for idx, w in graph.neighbors(v):
            nd = d + graph.edges[idx][2]
            if best[w] is None or nd < best[w]:
                best[w] = nd
                heapq.heappush(heap, (nd, w))
    return best


def shortest_paths(graph: Graph, alpha=0) -> DistanceTable:
    """Label-setting all-pairs shortest paths.

    Raises
    ------
    DisconnectedGraph
        If some pair of vertices is unreachable.
    """
    alpha = as_number(alpha, graph.exact)
    if not 0 <= alpha <= 1:
        raise InvalidInstance("alpha must lie in [0, 1]")
    rows = []
    for s in range(graph.vertex_count):
        row = _dijkstra(graph, s)
        if any(d is None for d in row):
            raise DisconnectedGraph(f"vertex {row.index(None)} unreachable from {s}")
        rows.append(tuple(row))
    return DistanceTable(tuple(rows), alpha)


def edge_vertex_distance(table: DistanceTable, graph: Graph, v: int, e: int) -> Number:
    """Distance from vertex ``v`` to edge ``e``: nearer endpoint plus ``alpha * b_e``."""
    if not 0 <= v < graph.vertex_count:
        raise IndexError(f"vertex {v} out of range")
    j, k, b = graph.edges[e]
    return min(table.dist[v][j], table.dist[v][k]) + table.alpha * b


def edge_distance_matrix(table: DistanceTable, graph: Graph) -> tuple:
    """``m[v][e]`` for every vertex and edge; rows are tuples."""
    return tuple(
        tuple(edge_vertex_distance(table, graph, v, e) for e in range(graph.edge_count))
        for v in range(graph.vertex_count)
    )


def incident_vertices(graph: Graph, D: Iterable[int]) -> set[int]:
    out = set()
    for e in D:
        u, v, _ = graph.edges[e]
        out.add(u)
        out.add(v)
    return out


def boundary_edges(graph: Graph, D: Iterable[int]) -> set[int]:
    """Edges outside ``D`` that touch a vertex incident to ``D``."""
    D = set(D)
    verts = incident_vertices(graph, D)
    out = set()
    for v in verts:
        out.update(graph.incidence[v])
    return out - D


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def connected_components(graph: Graph, D: Iterable[int]) -> list[list[int]]:
    """Split the edge set ``D`` into maximal connected pieces.

    Each piece is sorted, and pieces are ordered by their smallest edge index.
    """
    D = sorted(set(D))
    uf = _UnionFind(graph.vertex_count)
    for e in D:
        u, v, _ = graph.edges[e]
        uf.union(u, v)
    groups: dict[int, list[int]] = {}
    for e in D:
        groups.setdefault(uf.find(graph.edges[e][0]), []).append(e)
    return sorted(groups.values(), key=lambda comp: comp[0])


def graph_from_pairs(vertex_count: int, pairs: Sequence, exact: bool = True) -> Graph:
    """Shorthand for unit-weight graphs given as ``(u, v)`` pairs."""
    return Graph(vertex_count, tuple((u, v, 1) for u, v in pairs), exact=exact)
