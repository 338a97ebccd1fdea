"""Instance generators for the hardness families and for randomized testing."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import solve_exact
from .exceptions import MalformedInstance
from .graph import Graph
from .model import BalanceSpec, Instance, VariantSpec, objective


@dataclass(frozen=True)
class PartitionInput:
    """A 3-Partition instance in normal form.

    ``values`` must have length ``3m``, an integral target ``T = sum / m``
    and every value strictly between ``T/4`` and ``T/2``.
    """

    values: tuple

    def __post_init__(self):
        try:
            vals = tuple(int(s) for s in self.values)
        except (TypeError, ValueError) as exc:
            raise MalformedInstance(f"values must be integers: {exc}") from None
        if any(v != s for v, s in zip(vals, self.values)):
            raise MalformedInstance("values must be integers")
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n == 0 or n % 3:
            raise MalformedInstance(f"need a positive multiple of 3 values, got {n}")
        if any(s <= 0 for s in vals):
            raise MalformedInstance("values must be positive")
        if sum(vals) % self.m:
            raise MalformedInstance(f"sum {sum(vals)} is not divisible by m={self.m}")
        T = self.target
        bad = [s for s in vals if not (4 * s > T and 2 * s < T)]
        if bad:
            raise MalformedInstance(f"values {bad} violate T/4 < s < T/2 with T={T}")

    @classmethod
    def parse(cls, text: str) -> "PartitionInput":
        """From a comma separated list such as ``"4,5,5,5,5,6"``."""
        try:
            return cls(tuple(int(tok) for tok in text.split(",") if tok.strip()))
        except ValueError:
            raise MalformedInstance(f"cannot parse integer list {text!r}") from None

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def m(self) -> int:
        return len(self.values) // 3

    @property
    def target(self) -> int:
        return sum(self.values) // self.m


def _as_partition(inp) -> PartitionInput:
    return inp if isinstance(inp, PartitionInput) else PartitionInput(tuple(inp))


def build_3partition_instance(inp, select_centers: bool = False) -> Instance:
    """Spider with one arm of ``s_i`` unit edges per value, hub ``v0``.

    Every district must carry exactly ``T`` edges and be contiguous.  With
    ``select_centers`` the centers become decisions (variant BCIN); otherwise
    all of them sit on the hub (variant BCI).
    """
    inp = _as_partition(inp)
    edges, labels = [], ["v0"]
    for i, s in enumerate(inp.values, start=1):
        prev = 0
        for j in range(1, s + 1):
            labels.append(f"v{i},{j}")
            node = len(labels) - 1
            edges.append((prev, node, 1))
            prev = node
    graph = Graph(len(labels), tuple(edges), labels=tuple(labels))
    T = inp.target
    balance = BalanceSpec.explicit(T, T)
    if select_centers:
        return Instance(graph, inp.m, "BCIN", balance=balance)
    return Instance(graph, inp.m, "BCI", balance=balance, centers=(0,) * inp.m)


def build_weighted_star_instance(inp) -> Instance:
    """Star with hub ``v0`` and one leaf per value, edge weight ``s_i``.

    Balance ``[T, T]`` with all centers on the hub; the objective is included
    so the variant is a meaningful one (it is identically zero at ``alpha=0``).
    """
    inp = _as_partition(inp)
    edges = tuple((0, i, s) for i, s in enumerate(inp.values, start=1))
    labels = ("v0",) + tuple(f"v{i},1" for i in range(1, inp.n + 1))
    graph = Graph(inp.n + 1, edges, labels=labels)
    T = inp.target
    return Instance(graph, inp.m, "BIOW", balance=BalanceSpec.explicit(T, T),
                    centers=(0,) * inp.m)


def vertex_cover_via_districting(graph: Graph, alpha=0, **solver_kwargs) -> int:
    """Minimum vertex cover size, read off the unconstrained center-selection problem.

    For ``p = 1, 2, ...`` the optimum with free centers reaches the value where
    every edge touches its center (``sum(alpha * b_e)``) exactly when some
    ``p`` vertices cover all edges.
    """
    if graph.edge_count == 0:
        return 0
    solver_kwargs.setdefault("max_districts", None)
    floor = None
    for p in range(1, min(graph.vertex_count, graph.edge_count) + 1):
        inst = Instance(graph, p, "INO", alpha=alpha)
        if floor is None:
            floor = sum((inst.alpha * graph.weight(e) for e in range(graph.edge_count)),
                        0 * inst.alpha)
        a = solve_exact(inst, **solver_kwargs)
        if objective(inst, a) == floor:
            return p
    return min(graph.vertex_count, graph.edge_count)  # pragma: no cover


def build_arms_instance(p: int, k: int, phi_l=0, phi_u=None) -> Instance:
    """Hub with ``p + 1`` arms of ``k`` unit edges; ``p`` districts, variant BCIN."""
    if p < 2 or k < 1:
        raise ValueError("need p >= 2 and k >= 1")
    edges, labels = [], ["v0"]
    for i in range(1, p + 2):
        prev = 0
        for j in range(1, k + 1):
            labels.append(f"v{i},{j}")
            node = len(labels) - 1
            edges.append((prev, node, 1))
            prev = node
    graph = Graph(len(labels), tuple(edges), labels=tuple(labels))
    phi_u = len(edges) if phi_u is None else phi_u
    return Instance(graph, p, "BCIN", balance=BalanceSpec.explicit(phi_l, phi_u))


def random_connected_graph(n: int, extra_edges: int = 0, weighted: bool = False,
                           seed: int = 0, exact: bool = True) -> Graph:
    """Random spanning tree plus ``extra_edges`` random non-loop edges.

    Weights are uniform in 1..10 when ``weighted``.  Parallel extra edges are
    allowed.  The result depends only on the arguments.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = random.Random(seed)
    pairs = [(rng.randrange(v), v) for v in range(1, n)]
    if n > 1:
        for _ in range(extra_edges):
            u, v = rng.sample(range(n), 2)
            pairs.append((min(u, v), max(u, v)))
    edges = tuple((u, v, rng.randint(1, 10) if weighted else 1) for u, v in pairs)
    return Graph(n, edges, exact=exact)


def random_instance(variant, n: int, extra_edges: int, p: int, seed: int,
                    alpha=0, weighted=None, balance=None) -> Instance:
    """Random instance for ``variant``; centers (if fixed) and balance are drawn too.

    Without an explicit ``balance`` an additive tolerance in ``{0, 1/4, 1/2, 1}``
    is drawn.  The generated window may still be infeasible; callers decide.
    """
    rng = random.Random(seed)
    if isinstance(variant, str):
        variant = VariantSpec.parse(variant)
    if weighted is None:
        weighted = "W" in variant
    graph = random_connected_graph(n, extra_edges, weighted, seed=rng.randrange(2**31))
    p = min(p, max(graph.edge_count, 1))
    centers = None
    if "N" not in variant:
        centers = tuple(rng.randrange(n) for _ in range(p))
    if "B" in variant and balance is None:
        balance = BalanceSpec.additive(rng.choice([Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1)]))
    elif "B" not in variant:
        balance = None
    return Instance(graph, p, variant, balance=balance, centers=centers, alpha=alpha)


def is_valid_partition(values: Sequence[int]) -> bool:
    try:
        PartitionInput(tuple(values))
    except MalformedInstance:
        return False
    return True
