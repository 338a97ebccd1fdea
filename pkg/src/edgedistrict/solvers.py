"""Polynomial-time constructions for the tractable variants.

* :func:`greedy_assign` - nearest fixed center, smallest district index on ties.
  Optimal for IOW and automatically contiguous, so it also solves CIOW.
* :func:`solve_fractional_assignment` + :func:`round_fractional` - the
  relaxation of the balanced unweighted problem (BIO) is a transportation
  problem; its optimum is rounded by alternating +/-eps moves on the
  bipartite graph of fractional allocations.
* :func:`solve_trivial` - every edge to the first district (CINW).
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from ._flow import FlowNetwork
from .exceptions import (
    Infeasible,
    InvalidInstance,
    NonIntegralBounds,
    NotOptimalInput,
    UnsupportedVariant,
    WeightedInstance,
)
from .graph import is_zero
from .model import Assignment, Instance

log = logging.getLogger(__name__)

FLOAT_TOL = 1e-9


def _require(instance: Instance, allowed: str, needs: str = "", forbids: str = "") -> None:
    v = instance.variant
    if not v.issubset(allowed) or any(ch not in v for ch in needs) or any(ch in v for ch in forbids):
        raise UnsupportedVariant(
            f"variant {v} outside this solver's scope (subset of {allowed}"
            + (f", with {needs}" if needs else "") + (f", without {forbids}" if forbids else "") + ")")


def greedy_assign(instance: Instance) -> Assignment:
    """Allocate each edge to the nearest fixed center.

    Ties go to the smallest district index.  The result is optimal for IOW
    and every district comes out contiguous.
    """
    _require(instance, "CIOW", needs="I")
    dm = instance.edge_distances
    centers = instance.centers
    labels = [
        min(range(instance.p), key=lambda k: (dm[centers[k]][e], k))
        for e in range(instance.edge_count)
    ]
    return Assignment.from_labels(labels, centers, exact=instance.exact)


def solve_fractional_assignment(instance: Instance, bounds: Optional[tuple] = None) -> Assignment:
    """Optimal allocation of the LP relaxation with fixed centers.

    Solved as a transportation problem: every edge ships its weight, each
    district absorbs between ``phi_l`` and ``phi_u``.  For unweighted
    integral variants the bounds are first shrunk to integers.  Balance lower
    bounds are enforced by a prize of ``big_m`` per unit on the first
    ``phi_l`` units into each district.

    Raises
    ------
    Infeasible
        If the capacities cannot absorb all edges or the lower bounds are unreachable.
    """
    _require(instance, "BIOW", needs="O", forbids="N")
    g = instance.graph
    if "I" in instance.variant and not g.is_unweighted:
        raise WeightedInstance("the rounding route requires unit weights")
    p, m = instance.p, g.edge_count
    zero = Fraction(0) if instance.exact else 0.0
    if bounds is None:
        bounds = instance.bounds(integral="I" in instance.variant) or (zero, g.total_weight)
    lo, hi = bounds
    total = g.total_weight
    if p * lo > total or p * hi < total:
        raise Infeasible(f"loads in [{lo}, {hi}] cannot sum to {total}")

    dm = instance.edge_distances
    centers = instance.centers
    # unit cost is distance per unit of weight, so x_ie = flow / b_e
    max_cost = max((dm[c][e] / g.weight(e) for c in centers for e in range(m)), default=zero)
    big_m = (max_cost + 1) * (m + 1) * 2

    src, sink = 0, 1 + m + p
    net = FlowNetwork(m + p + 2)
    handles = {}
    for e in range(m):
        net.add_arc(src, 1 + e, g.weight(e), zero)
        for i in range(p):
            handles[e, i] = net.add_arc(1 + e, 1 + m + i, g.weight(e), dm[centers[i]][e] / g.weight(e))
    lower = []
    for i in range(p):
        if lo > 0:
            lower.append(net.add_arc(1 + m + i, sink, lo, -big_m))
        if hi - lo > 0:
            net.add_arc(1 + m + i, sink, hi - lo, zero)
    net.min_cost_flow(src, sink, total)
    for h in lower:
        if not is_zero(net.flow_on(h) - lo):
            raise Infeasible("balance lower bounds unreachable")

    x = [[net.flow_on(handles[e, i]) / g.weight(e) for e in range(m)] for i in range(p)]
    return Assignment(x, centers)


@dataclass
class RoundingGraph:
    """Bipartite graph with an arc ``(edge, district)`` for every strictly fractional ``x``."""

    edge_vertices: range
    center_vertices: range
    arcs: list = field(default_factory=list)

    @classmethod
    def from_assignment(cls, a: Assignment, tol: float = FLOAT_TOL) -> "RoundingGraph":
        arcs = [
            (e, i, v)
            for i, row in enumerate(a.x)
            for e, v in enumerate(row)
            if not (is_zero(v, tol) or is_zero(v - 1, tol))
        ]
        return cls(range(a.edge_count), range(a.p), arcs)

    def adjacency(self) -> dict:
        # nodes are ("e", edge) and ("c", district)
        adj: dict = {}
        for e, i, _ in self.arcs:
            adj.setdefault(("e", e), []).append(("c", i))
            adj.setdefault(("c", i), []).append(("e", e))
        for nbrs in adj.values():
            nbrs.sort()
        return adj

    def find_cycle(self) -> Optional[list]:
        """First cycle met by depth-first search, as a closed node walk, or ``None``."""
        adj = self.adjacency()
        visited = set()
        for root in sorted(adj):
            if root in visited:
                continue
            parent = {root: None}
            depth = {root: 0}
            stack = [(root, iter(adj[root]))]
            visited.add(root)
            while stack:
                node, it = stack[-1]
                nxt = next(it, None)
                if nxt is None:
                    stack.pop()
                    continue
                if nxt == parent[node]:
                    continue
                if nxt in depth:
                    if depth[nxt] < depth[node]:
                        # back edge closes the cycle nxt -> ... -> node -> nxt
                        walk = [node]
                        while walk[-1] != nxt:
                            walk.append(parent[walk[-1]])
                        walk.reverse()
                        return walk + [walk[0]]
                    continue
                parent[nxt] = node
                depth[nxt] = depth[node] + 1
                visited.add(nxt)
                stack.append((nxt, iter(adj[nxt])))
        return None

    def find_leaf_path(self) -> Optional[list]:
        """Path between the two smallest degree-1 center vertices of one tree.

        Only meaningful once the graph is a forest.  Starts from the smallest
        degree-1 center vertex overall.
        """
        adj = self.adjacency()
        leaves = sorted(n for n, nbrs in adj.items() if n[0] == "c" and len(nbrs) == 1)
        if not leaves:
            return None
        start = leaves[0]
        parent = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            for nxt in adj[node]:
                if nxt not in parent:
                    parent[nxt] = node
                    queue.append(nxt)
        targets = [n for n in leaves[1:] if n in parent]
        if not targets:
            return None
        walk = [targets[0]]
        while walk[-1] != start:
            walk.append(parent[walk[-1]])
        walk.reverse()
        return walk


@dataclass(frozen=True)
class RoundingStep:
    case: str             # "cycle" or "path"
    arcs: tuple           # (edge, district, sign) along the walk
    epsilon: object
    delta: object         # objective change per unit epsilon in the applied direction
    fractional: int       # fractional variables remaining after the step
    assignment: Assignment


def _walk_arcs(walk: list) -> list:
    """Turn a node walk into ``(edge, district)`` arcs in traversal order."""
    arcs = []
    for a, b in zip(walk, walk[1:]):
        e, c = (a[1], b[1]) if a[0] == "e" else (b[1], a[1])
        arcs.append((e, c))
    return arcs


def _resolved_bounds(instance: Instance, bounds):
    if bounds is not None:
        lo, hi = bounds
        for val in (lo, hi):
            if not is_zero(val - round(val)):
                raise NonIntegralBounds(f"bound {val} is not integral")
        return lo, hi
    if instance.balance is None:
        zero = Fraction(0) if instance.exact else 0.0
        return zero, instance.graph.total_weight
    return instance.bounds(integral=True)


def iter_rounding(instance: Instance, a: Assignment, bounds: Optional[tuple] = None,
                  strict: bool = True) -> Iterator[RoundingStep]:
    """Yield one :class:`RoundingStep` per fractional-variable elimination.

    Parameters
    ----------
    instance : Instance
        Unweighted, fixed centers.
    a : Assignment
        Feasible for the relaxation; expected to be LP-optimal.
    bounds : tuple, optional
        Integral load window; defaults to the instance's rounded window.
    strict : bool
        If true, a walk whose objective change is nonzero raises
        :class:`NotOptimalInput` instead of following the improving direction.
    """
    if not instance.graph.is_unweighted:
        raise WeightedInstance("rounding preserves balance only for unit weights")
    if "N" in instance.variant:
        raise UnsupportedVariant("rounding needs fixed centers")
    lo, hi = _resolved_bounds(instance, bounds)
    exact = instance.exact
    tol = 0 if exact else FLOAT_TOL
    if a.p != instance.p or a.edge_count != instance.edge_count:
        raise InvalidInstance("assignment shape does not match the instance")
    x = [list(row) for row in a.x]
    for e in range(instance.edge_count):
        if not is_zero(sum(x[i][e] for i in range(a.p)) - 1):
            raise InvalidInstance(f"edge {e} is not fully allocated")
    loads = [sum(row) for row in x]
    if any(ld < lo - tol or ld > hi + tol for ld in loads):
        raise InvalidInstance("input violates the balance window")

    dm = instance.edge_distances
    centers = a.centers

    def cost(e, i):
        return dm[centers[i]][e]

    while True:
        current = Assignment(x, centers)
        rg = RoundingGraph.from_assignment(current)
        if not rg.arcs:
            return
        walk = rg.find_cycle()
        case = "cycle"
        if walk is None:
            case = "path"
            walk = rg.find_leaf_path()
            if walk is None:
                raise InvalidInstance("fractional arcs remain but no center leaf path exists")
        arcs = _walk_arcs(walk)
        # alternate colors: even positions red (+1), odd positions blue (-1)
        signs = [1 if k % 2 == 0 else -1 for k in range(len(arcs))]
        delta = sum(s * cost(e, i) for (e, i), s in zip(arcs, signs))

        candidates = []
        for flip in (1, -1):
            d = delta * flip
            if d > tol:
                continue
            eps = min((1 - x[i][e]) if s * flip > 0 else x[i][e] for (e, i), s in zip(arcs, signs))
            if case == "path":
                first_c, last_c = arcs[0][1], arcs[-1][1]
                # first arc is red, last arc is blue (even number of arcs)
                if loads[first_c] + flip * eps > hi + tol or loads[last_c] - flip * eps < lo - tol:
                    continue
            candidates.append((flip, d, eps))
        if not candidates:
            if abs(delta) > tol:
                raise NotOptimalInput(f"{case} with objective slope {delta}: input is not LP-optimal")
            log.warning("no direction keeps the endpoint loads inside [%s, %s]", lo, hi)
            raise NotOptimalInput("no sign choice keeps the balance window on a leaf path")
        flip, d, eps = candidates[0]
        if strict and abs(d) > tol:
            raise NotOptimalInput(f"{case} with objective slope {delta}: input is not LP-optimal")

        applied = []
        for (e, i), s in zip(arcs, signs):
            step = s * flip * eps
            x[i][e] += step
            if not exact:
                if abs(x[i][e]) <= FLOAT_TOL:
                    x[i][e] = 0.0
                elif abs(x[i][e] - 1) <= FLOAT_TOL:
                    x[i][e] = 1.0
            loads[i] += step
            applied.append((e, i, s * flip))
        after = Assignment(x, centers)
        yield RoundingStep(case, tuple(applied), eps, d, after.fractional_count(), after)


def round_fractional(instance: Instance, a: Assignment, bounds: Optional[tuple] = None,
                     strict: bool = True) -> Assignment:
    """Round an optimal fractional allocation to an integral one of equal objective.

    Each iteration removes at least one fractional variable, so at most
    ``p * |E|`` iterations run.  Already-integral input is returned as is.
    """
    result = a
    for step in iter_rounding(instance, a, bounds=bounds, strict=strict):
        result = step.assignment
    if not result.is_integral():  # pragma: no cover - loop exits only when integral
        raise RuntimeError("rounding ended with fractional values")
    if result is not a:
        one, zero = (Fraction(1), Fraction(0)) if instance.exact else (1.0, 0.0)
        snapped = [[one if is_zero(v - 1) else zero for v in row] for row in result.x]
        result = Assignment(snapped, result.centers)
    return result


def solve_lp_round(instance: Instance) -> Assignment:
    """Fractional optimum followed by rounding, for unweighted BIO."""
    _require(instance, "BIO", needs="IO")
    frac = solve_fractional_assignment(instance)
    return round_fractional(instance, frac)


def solve_trivial(instance: Instance) -> Assignment:
    """Put every edge in the first district.

    Under N the first district is centered at the smallest vertex touching an
    edge and all other centers sit at vertex 0; otherwise the fixed centers
    are kept.
    """
    _require(instance, "CINW", needs="I")
    g = instance.graph
    if "N" in instance.variant:
        touched = sorted(v for v in range(g.vertex_count) if g.incidence[v])
        first = touched[0] if touched else 0
        centers = [first] + [0] * (instance.p - 1)
    else:
        centers = list(instance.centers)
    return Assignment.from_labels([0] * g.edge_count, centers, exact=instance.exact)

