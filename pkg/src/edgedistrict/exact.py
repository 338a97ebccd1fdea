"""Exhaustive branch-and-bound for any meaningful variant at desk scale.

Edges are branched in a fixed order (depth-first over the graph by default)
and every pruning rule is sound, so the search is complete for any order:

* balance: a district may not exceed ``phi_u``, and the unassigned weight
  must still be able to lift every district to ``phi_l``;
* contiguity: each district's edges must stay in the component of its center
  within the graph made of that district's edges plus all unassigned edges
  (a lazily checked relaxation of the cut family); leaves get the full check;
* objective: running cost plus, for every unassigned edge, its distance to
  the nearest center is a lower bound;
* symmetry: districts sharing a center are interchangeable, so a fresh one
  is opened only if every lower-indexed twin is already in use.

Under N the center tuple is enumerated as a multiset (shared centers are
allowed).  Under N without O, contiguity alone constrains centers, so each
district simply takes the smallest vertex it touches.
"""
from __future__ import annotations

from itertools import combinations, combinations_with_replacement
from typing import Optional, Sequence

from .exceptions import Infeasible, LimitExceeded, MalformedInstance
from .graph import Graph, _UnionFind
from .model import Assignment, Instance, contiguity_witness, validate

DEFAULT_MAX_EDGES = 14
DEFAULT_MAX_DISTRICTS = 4


def adjacency_edge_order(graph: Graph, root: int = 0) -> list[int]:
    """Edges in depth-first discovery order from ``root``; stragglers appended by index."""
    order, seen_e = [], set()
    if graph.vertex_count:
        seen_v = {root}
        stack = [root]
        while stack:
            v = stack[-1]
            for e, w in graph.neighbors(v):
                if e in seen_e:
                    continue
                seen_e.add(e)
                order.append(e)
                if w not in seen_v:
                    seen_v.add(w)
                    stack.append(w)
                    break
            else:
                stack.pop()
    order.extend(e for e in range(graph.edge_count) if e not in seen_e)
    return order


class _Search:
    def __init__(self, instance: Instance, order: Sequence[int]):
        self.inst = instance
        g = instance.graph
        self.g = g
        self.order = list(order)
        self.m = g.edge_count
        self.p = instance.p
        self.use_b = "B" in instance.variant
        self.use_c = "C" in instance.variant
        self.use_o = "O" in instance.variant
        zero = 0 if instance.exact else 0.0
        self.zero = zero
        if self.use_b:
            self.lo, self.hi = instance.bounds()
        w = [g.weight(e) for e in self.order]
        self.w = w
        self.rem_weight = [sum(w[k:], zero) for k in range(self.m + 1)]
        self.dm = instance.edge_distances if self.use_o else None
        self.best_obj = None
        self.best = None

    # -- per center tuple -------------------------------------------------
    def run(self, centers: Optional[tuple]) -> bool:
        """Search with the given centers (``None``: derived from the districts).

        Returns True if the caller may stop (feasibility-only success).
        """
        self.centers = centers
        p = self.p
        if centers is None:
            self.twin = [0] * p
        else:
            first = {}
            self.twin = [first.setdefault(c, i) for i, c in enumerate(centers)]
        if self.use_o:
            nearest = [min(self.dm[c][e] for c in centers) for e in self.order]
            self.lb = [sum(nearest[k:], self.zero) for k in range(self.m + 1)]
            self.cost = [[self.dm[c][e] for e in self.order] for c in centers]
        self.labels = [-1] * self.m          # indexed by position in order
        self.loads = [self.zero] * p
        self.count = [0] * p
        self.members = [[] for _ in range(p)]  # positions
        return self._dfs(0, self.zero)

    def _district_order(self, k: int) -> list[int]:
        if self.use_o:
            return sorted(range(self.p), key=lambda i: (self.cost[i][k], i))
        return list(range(self.p))

    def _reachable(self, k: int) -> bool:
        # positions >= k+1 are unassigned after placing position k
        g, order = self.g, self.order
        for i in range(self.p):
            if not self.count[i]:
                continue
            uf = _UnionFind(g.vertex_count)
            for pos in self.members[i]:
                u, v, _ = g.edges[order[pos]]
                uf.union(u, v)
            for pos in range(k + 1, self.m):
                u, v, _ = g.edges[order[pos]]
                uf.union(u, v)
            if self.centers is not None:
                anchor = uf.find(self.centers[i])
            else:
                anchor = uf.find(g.edges[order[self.members[i][0]]][0])
            for pos in self.members[i]:
                if uf.find(g.edges[order[pos]][0]) != anchor:
                    return False
        return True

    def _dfs(self, k: int, obj) -> bool:
        if k == self.m:
            return self._leaf(obj)
        e_weight = self.w[k]
        for i in self._district_order(k):
            if not self.count[i] and any(
                    self.twin[j] == self.twin[i] and not self.count[j] for j in range(i)):
                continue
            if self.use_b and self.loads[i] + e_weight > self.hi:
                continue
            new_obj = obj
            if self.use_o:
                new_obj = obj + self.cost[i][k]
                if self.best_obj is not None and new_obj + self.lb[k + 1] >= self.best_obj:
                    continue
            self.labels[k] = i
            self.loads[i] += e_weight
            self.count[i] += 1
            self.members[i].append(k)
            ok = True
            if self.use_b:
                shortfall = sum((max(self.zero, self.lo - ld) for ld in self.loads), self.zero)
                ok = shortfall <= self.rem_weight[k + 1]
            if ok and self.use_c:
                ok = self._reachable(k)
            stop = ok and self._dfs(k + 1, new_obj)
            self.members[i].pop()
            self.count[i] -= 1
            self.loads[i] -= e_weight
            self.labels[k] = -1
            if stop:
                return True
        return False

    def _leaf(self, obj) -> bool:
        g = self.g
        labels = [0] * self.m
        for pos, i in enumerate(self.labels):
            labels[self.order[pos]] = i
        if self.use_b and any(ld < self.lo for ld in self.loads):
            return False
        centers = self.centers
        if centers is None:
            centers = []
            for i in range(self.p):
                touched = [v for pos in self.members[i] for v in g.endpoints(self.order[pos])]
                centers.append(min(touched) if touched else 0)
            centers = tuple(centers)
        if self.use_c:
            for i in range(self.p):
                edges = [e for e in range(self.m) if labels[e] == i]
                if contiguity_witness(g, edges, centers[i]) is not None:
                    return False
        if self.best_obj is None or (self.use_o and obj < self.best_obj):
            self.best_obj = obj
            self.best = (labels, centers)
        return not self.use_o


def _center_tuples(instance: Instance):
    """Candidate center tuples, cheapest objective lower bound first."""
    g = instance.graph
    if "N" not in instance.variant:
        return [instance.centers]
    if "O" not in instance.variant:
        return [None]
    dm = instance.edge_distances
    scored = []
    for combo in combinations_with_replacement(range(g.vertex_count), instance.p):
        lb = sum((min(dm[c][e] for c in combo) for e in range(g.edge_count)), 0)
        scored.append((lb, combo))
    scored.sort()
    return scored


def solve_exact(instance: Instance, max_edges: Optional[int] = DEFAULT_MAX_EDGES,
                max_districts: Optional[int] = DEFAULT_MAX_DISTRICTS,
                edge_order: str = "adjacency") -> Assignment:
    """Optimal (or, without O, any feasible) integral assignment by exhaustive search.

    Parameters
    ----------
    instance : Instance
    max_edges, max_districts : int or None
        Size limits; ``None`` disables a limit.
    edge_order : {"adjacency", "index"}
        Branching order.  Pruning is sound for both, so both are complete;
        adjacency order prunes contiguity violations much earlier.

    Raises
    ------
    Infeasible
        No assignment satisfies the variant.
    LimitExceeded
        The instance is above the configured limits.
    """
    g = instance.graph
    if max_edges is not None and g.edge_count > max_edges:
        raise LimitExceeded(f"|E|={g.edge_count} exceeds the exact-search limit {max_edges}")
    if max_districts is not None and instance.p > max_districts:
        raise LimitExceeded(f"p={instance.p} exceeds the exact-search limit {max_districts}")
    if edge_order == "adjacency":
        root = instance.centers[0] if instance.centers else 0
        order = adjacency_edge_order(g, root)
    elif edge_order == "index":
        order = list(range(g.edge_count))
    else:
        raise ValueError(f"unknown edge_order {edge_order!r}")

    # distances only matter with an objective, but a disconnected graph is
    # still rejected up front for a uniform contract
    instance.distances
    search = _Search(instance, order)
    candidates = _center_tuples(instance)
    for cand in candidates:
        if "N" in instance.variant and "O" in instance.variant:
            lb, centers = cand
            if search.best_obj is not None and lb >= search.best_obj:
                break
        else:
            centers = cand
        if search.run(centers):
            break
    if search.best is None:
        raise Infeasible("no assignment satisfies the active constraints")
    labels, centers = search.best
    result = Assignment.from_labels(labels, centers, exact=instance.exact)
    report = validate(instance, result)
    if report:  # pragma: no cover - guards the search itself
        raise RuntimeError(f"exact search produced an invalid assignment: {report.violations}")
    return result


def is_feasible(instance: Instance, **kwargs) -> bool:
    try:
        solve_exact(instance, **kwargs)
    except Infeasible:
        return False
    return True


def min_vertex_cover(graph: Graph, max_vertices: int = 20) -> int:
    """Size of a minimum vertex cover, by enumerating subsets of growing size."""
    if graph.vertex_count > max_vertices:
        raise LimitExceeded(f"|V|={graph.vertex_count} exceeds {max_vertices}")
    pairs = {(min(u, v), max(u, v)) for u, v, _ in graph.edges}
    if not pairs:
        return 0
    touched = sorted({v for pair in pairs for v in pair})
    for size in range(1, len(touched) + 1):
        for cover in combinations(touched, size):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in pairs):
                return size
    return len(touched)  # pragma: no cover


def solve_3partition(values: Sequence[int], strict: bool = True, max_triples: int = 5):
    """Split ``values`` into triples of equal sum, or return ``None``.

    With ``strict`` the input must be in normal form: ``len % 3 == 0``, the
    target ``T = sum / m`` integral and ``T/4 < s < T/2`` for every value.
    Without it only the length and integrality of ``T`` are required.

    Returns
    -------
    list of tuple or None
        Sorted triples, in sorted order.
    """
    values = [int(s) for s in values]
    n = len(values)
    if n == 0 or n % 3:
        raise MalformedInstance("need a positive multiple of 3 values")
    m = n // 3
    if m > max_triples:
        raise LimitExceeded(f"m={m} exceeds {max_triples}")
    total = sum(values)
    if total % m:
        if strict:
            raise MalformedInstance("sum is not divisible by m")
        return None
    target = total // m
    if strict and any(not (4 * s > target and 2 * s < target) for s in values):
        raise MalformedInstance(f"values must lie strictly between T/4 and T/2 (T={target})")
    if any(s <= 0 for s in values):
        raise MalformedInstance("values must be positive")

    items = sorted(values, reverse=True)
    bins = [[] for _ in range(m)]
    sums = [0] * m

    def place(k: int) -> bool:
        if k == n:
            return all(s == target for s in sums) and all(len(b) == 3 for b in bins)
        tried = set()
        for b in range(m):
            state = (sums[b], len(bins[b]))
            if state in tried or len(bins[b]) == 3 or sums[b] + items[k] > target:
                continue
            tried.add(state)
            bins[b].append(items[k])
            sums[b] += items[k]
            if place(k + 1):
                return True
            sums[b] -= items[k]
            bins[b].pop()
        return False

    if not place(0):
        return None
    return sorted(tuple(sorted(b)) for b in bins)
