"""Problem data, solutions and constraint checking for edge-based districting.

A variant is a subset of the criteria

    B  balance          C  contiguity        I  integral allocation
    N  center choice    O  compactness obj.  W  arbitrary edge weights

The structural constraints (every edge fully allocated, one center per
district) are always in force.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .exceptions import (
    InfeasibleBounds,
    InvalidInstance,
    MeaninglessVariant,
)
from .graph import (
    Graph,
    Number,
    as_number,
    boundary_edges,
    connected_components,
    edge_distance_matrix,
    incident_vertices,
    is_zero,
    shortest_paths,
)

CRITERIA = "BCINOW"


@dataclass(frozen=True)
class VariantSpec:
    """A set of active criteria drawn from ``"BCINOW"``."""

    flags: frozenset

    def __post_init__(self):
        flags = frozenset(self.flags)
        bad = flags - set(CRITERIA)
        if bad:
            raise ValueError(f"unknown criteria: {''.join(sorted(bad))}")
        object.__setattr__(self, "flags", flags)

    @classmethod
    def parse(cls, text: str) -> "VariantSpec":
        """Parse a string such as ``"BCIO"``; ``""`` or ``"-"`` is the empty set.

        Letters must be unique and drawn from BCINOW; whitespace is rejected.
        """
        if text in ("", "-"):
            return cls(frozenset())
        if not text.isalpha() or any(ch not in CRITERIA for ch in text.upper()):
            raise ValueError(f"variant must use only the letters {CRITERIA}: {text!r}")
        upper = text.upper()
        if len(set(upper)) != len(upper):
            raise ValueError(f"repeated criterion in {text!r}")
        return cls(frozenset(upper))

    def __contains__(self, letter: str) -> bool:
        return letter in self.flags

    def __str__(self) -> str:
        return "".join(ch for ch in CRITERIA if ch in self.flags)

    def __repr__(self) -> str:
        return f"VariantSpec({str(self)!r})"

    def __or__(self, other) -> "VariantSpec":
        other = other.flags if isinstance(other, VariantSpec) else frozenset(other)
        return VariantSpec(self.flags | other)

    def __sub__(self, other) -> "VariantSpec":
        other = other.flags if isinstance(other, VariantSpec) else frozenset(other)
        return VariantSpec(self.flags - other)

    def issubset(self, letters) -> bool:
        return self.flags <= frozenset(letters)

    @property
    def meaningless_reason(self) -> Optional[str]:
        if "C" in self.flags and "I" not in self.flags:
            return "contiguity is only meaningful for integral allocations (C requires I)"
        if "O" not in self.flags and "C" not in self.flags:
            return "dropping the objective is only meaningful together with contiguity (O or C required)"
        return None

    def require_meaningful(self) -> "VariantSpec":
        reason = self.meaningless_reason
        if reason:
            raise MeaninglessVariant(f"{self}: {reason}")
        return self


def meaningful_variants() -> list[VariantSpec]:
    """All meaningful criterion subsets, in a stable order."""
    out = []
    for r in range(len(CRITERIA) + 1):
        for combo in combinations(CRITERIA, r):
            v = VariantSpec(frozenset(combo))
            if v.meaningless_reason is None:
                out.append(v)
    return out


@dataclass(frozen=True)
class BalanceSpec:
    """How the per-district load window is obtained.

    ``mode`` is ``"explicit"`` (``phi_l``/``phi_u`` given), ``"additive"``
    (window ``(1 -/+ tau) * avg``) or ``"multiplicative"``
    (window ``[tau * avg, avg / tau]``).
    """

    mode: str
    tau: Optional[Fraction] = None
    phi_l: Optional[Fraction] = None
    phi_u: Optional[Fraction] = None

    def __post_init__(self):
        if self.mode == "explicit":
            if self.phi_l is None or self.phi_u is None:
                raise InvalidInstance("explicit balance needs phi_l and phi_u")
            lo, hi = as_number(self.phi_l), as_number(self.phi_u)
            if lo < 0 or hi < 0:
                raise InvalidInstance("balance bounds must be nonnegative")
            object.__setattr__(self, "phi_l", lo)
            object.__setattr__(self, "phi_u", hi)
        elif self.mode in ("additive", "multiplicative"):
            if self.tau is None:
                raise InvalidInstance(f"{self.mode} balance needs tau")
            tau = as_number(self.tau)
            if self.mode == "additive" and tau < 0:
                raise InvalidInstance("additive tau must be >= 0")
            if self.mode == "multiplicative" and not 0 < tau <= 1:
                raise InvalidInstance("multiplicative tau must lie in (0, 1]")
            object.__setattr__(self, "tau", tau)
        else:
            raise InvalidInstance(f"unknown balance mode {self.mode!r}")

    @classmethod
    def explicit(cls, phi_l, phi_u) -> "BalanceSpec":
        return cls("explicit", phi_l=phi_l, phi_u=phi_u)

    @classmethod
    def additive(cls, tau) -> "BalanceSpec":
        return cls("additive", tau=tau)

    @classmethod
    def multiplicative(cls, tau) -> "BalanceSpec":
        return cls("multiplicative", tau=tau)


def resolve_bounds(balance: BalanceSpec, total_weight, p: int, integral: bool = False,
                   exact: bool = True) -> tuple:
    """Turn a :class:`BalanceSpec` into the load window ``(phi_l, phi_u)``.

    With ``integral=True`` the window is shrunk to ``(ceil(phi_l), floor(phi_u))``,
    which loses nothing when every load is an integer.  The additive lower
    bound is clamped at zero.
    """
    total = as_number(total_weight)
    mean = total / p
    if balance.mode == "explicit":
        lo, hi = balance.phi_l, balance.phi_u
    elif balance.mode == "additive":
        lo, hi = max(Fraction(0), (1 - balance.tau) * mean), (1 + balance.tau) * mean
    else:
        lo, hi = balance.tau * mean, mean / balance.tau
    if integral:
        lo, hi = Fraction(math.ceil(lo)), Fraction(math.floor(hi))
    if lo > hi:
        raise InfeasibleBounds(f"empty load window [{lo}, {hi}]")
    if not exact:
        return float(lo), float(hi)
    return lo, hi


@dataclass(frozen=True)
class Instance:
    """A districting instance: graph, district count, variant and its parameters.

    ``balance`` is required exactly when B is active and ``centers`` exactly
    when N is not.
    """

    graph: Graph
    p: int
    variant: VariantSpec
    balance: Optional[BalanceSpec] = None
    centers: Optional[tuple] = None
    alpha: Number = 0

    def __post_init__(self):
        if isinstance(self.variant, str):
            object.__setattr__(self, "variant", VariantSpec.parse(self.variant))
        self.variant.require_meaningful()
        g = self.graph
        if not 1 <= self.p <= max(g.edge_count, 1):
            raise InvalidInstance(f"p={self.p} must satisfy 1 <= p <= |E|={g.edge_count}")
        if ("B" in self.variant) != (self.balance is not None):
            raise InvalidInstance("a BalanceSpec must be given exactly when B is active")
        if "N" in self.variant:
            if self.centers is not None:
                raise InvalidInstance("centers are decisions under N; do not fix them")
        else:
            if self.centers is None or len(self.centers) != self.p:
                raise InvalidInstance("exactly p fixed centers are required without N")
            cs = tuple(int(c) for c in self.centers)
            if any(not 0 <= c < g.vertex_count for c in cs):
                raise InvalidInstance("center out of range")
            object.__setattr__(self, "centers", cs)
        if "W" not in self.variant and not g.is_unweighted:
            raise InvalidInstance("unweighted variant requires all edge weights equal to 1")
        object.__setattr__(self, "alpha", as_number(self.alpha, g.exact))
        if not 0 <= self.alpha <= 1:
            raise InvalidInstance("alpha must lie in [0, 1]")

    @property
    def exact(self) -> bool:
        return self.graph.exact

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    @cached_property
    def distances(self):
        return shortest_paths(self.graph, self.alpha)

    @cached_property
    def edge_distances(self) -> tuple:
        """``edge_distances[v][e]``: distance from vertex ``v`` to edge ``e``."""
        return edge_distance_matrix(self.distances, self.graph)

    def bounds(self, integral: Optional[bool] = None) -> Optional[tuple]:
        """Resolved load window, or ``None`` without B.

        Integral rounding defaults to on for unweighted integral variants.
        """
        if self.balance is None:
            return None
        if integral is None:
            integral = "I" in self.variant and self.graph.is_unweighted
        return resolve_bounds(self.balance, self.graph.total_weight, self.p,
                              integral=integral, exact=self.exact)

    def replace(self, **changes) -> "Instance":
        fields = dict(graph=self.graph, p=self.p, variant=self.variant, balance=self.balance,
                      centers=self.centers, alpha=self.alpha)
        fields.update(changes)
        return Instance(**fields)


@dataclass(frozen=True)
class Assignment:
    """Allocation matrix ``x[district][edge]`` and the center of each district."""

    x: tuple
    centers: tuple

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(tuple(row) for row in self.x))
        object.__setattr__(self, "centers", tuple(int(c) for c in self.centers))
        if len(self.centers) != len(self.x):
            raise ValueError("one center per district row required")
        widths = {len(row) for row in self.x}
        if len(widths) > 1:
            raise ValueError("ragged allocation matrix")

    @classmethod
    def from_labels(cls, labels: Sequence[int], centers: Sequence[int],
                    exact: bool = True) -> "Assignment":
        one, zero = (Fraction(1), Fraction(0)) if exact else (1.0, 0.0)
        p = len(centers)
        rows = [[zero] * len(labels) for _ in range(p)]
        for e, i in enumerate(labels):
            rows[int(i)][e] = one
        return cls(tuple(tuple(r) for r in rows), tuple(centers))

    @property
    def p(self) -> int:
        return len(self.x)

    @property
    def edge_count(self) -> int:
        return len(self.x[0]) if self.x else 0

    def is_integral(self, tol: float = 1e-9) -> bool:
        return all(is_zero(v, tol) or is_zero(v - 1, tol) for row in self.x for v in row)

    def labels(self) -> list[int]:
        """District index of each edge; requires an integral allocation."""
        out = []
        for e in range(self.edge_count):
            owners = [i for i in range(self.p) if is_zero(self.x[i][e] - 1)]
            if len(owners) != 1:
                raise ValueError(f"edge {e} is not allocated to exactly one district")
            out.append(owners[0])
        return out

    def district_edges(self, i: int) -> list[int]:
        """Edges fully allocated to district ``i``."""
        return [e for e, v in enumerate(self.x[i]) if is_zero(v - 1)]

    def loads(self, graph: Graph) -> list:
        zero = Fraction(0) if graph.exact else 0.0
        return [sum((v * graph.weight(e) for e, v in enumerate(row)), zero) for row in self.x]

    def fractional_count(self, tol: float = 1e-9) -> int:
        return sum(1 for row in self.x for v in row if not (is_zero(v, tol) or is_zero(v - 1, tol)))


def objective(instance: Instance, a: Assignment) -> Number:
    """Total distance of allocated edges to their district centers (works for fractional x)."""
    dm = instance.edge_distances
    total = Fraction(0) if instance.exact else 0.0
    for i, row in enumerate(a.x):
        drow = dm[a.centers[i]]
        for e, v in enumerate(row):
            if v:
                total += drow[e] * v
    return total


@dataclass(frozen=True)
class Violation:
    group: str
    district: Optional[int]
    witness: object


@dataclass
class ViolationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return bool(self.violations)

    def __len__(self):
        return len(self.violations)

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def groups(self) -> set:
        return {v.group for v in self.violations}

    def add(self, group, district, witness):
        self.violations.append(Violation(group, district, witness))

    def to_dict(self) -> list:
        out = []
        for v in self.violations:
            w = v.witness
            if isinstance(w, (set, frozenset, list, tuple)):
                w = sorted(w)
            out.append({"group": v.group, "district": v.district, "witness": w})
        return out


def contiguity_witness(graph: Graph, edges: Sequence[int], center: int) -> Optional[list]:
    """Edge subset isolated from ``center`` inside ``edges``, or ``None`` if contiguous.

    A nonempty district is contiguous exactly when it is one connected piece
    whose vertex set contains its center; any other piece (or the single
    piece, if it misses the center) violates the cut family.
    """
    if not edges:
        return None
    comps = connected_components(graph, edges)
    for comp in comps:
        if center not in incident_vertices(graph, comp):
            return comp
    return None


def c1_violated_subsets(graph: Graph, x_row: Sequence, center: int) -> Iterator[frozenset]:
    """Enumerate every nonempty ``D`` breaking the cut inequality for one district.

    Exponential; used as an oracle on small districts only.  Only subsets of
    the fully allocated edges can make the middle term vanish, so those are
    the only candidates.
    """
    owned = [e for e, v in enumerate(x_row) if is_zero(v - 1)]
    for r in range(1, len(owned) + 1):
        for D in combinations(owned, r):
            verts = incident_vertices(graph, D)
            if center in verts:
                continue
            if any(not is_zero(x_row[e]) for e in boundary_edges(graph, D)):
                continue
            yield frozenset(D)


def validate(instance: Instance, a: Assignment, tol: float = 1e-9) -> ViolationReport:
    """Check ``a`` against the constraint groups active in ``instance.variant``.

    S1/S2 always; B1/B2 with B; C1 with C; I1 with I; N1 always checks that
    centers are vertices.  Without N the centers must match the fixed ones.
    """
    g = instance.graph
    v = instance.variant
    report = ViolationReport()
    if a.p != instance.p or a.edge_count != g.edge_count:
        report.add("S1", None, f"shape {a.p}x{a.edge_count} != {instance.p}x{g.edge_count}")
        return report

    for e in range(g.edge_count):
        col = sum(a.x[i][e] for i in range(a.p))
        if not is_zero(col - 1, tol) or any(a.x[i][e] < -tol for i in range(a.p)):
            report.add("S1", None, e)

    for i, c in enumerate(a.centers):
        if not 0 <= c < g.vertex_count:
            report.add("N1", i, i)
        elif "N" not in v and c != instance.centers[i]:
            report.add("S2", i, i)

    if "I" in v:
        for i in range(a.p):
            for e, val in enumerate(a.x[i]):
                if not (is_zero(val, tol) or is_zero(val - 1, tol)):
                    report.add("I1", i, e)

    if "B" in v:
        lo, hi = instance.bounds()
        for i, load in enumerate(a.loads(g)):
            if load > hi + (0 if instance.exact else tol):
                report.add("B1", i, i)
            if load < lo - (0 if instance.exact else tol):
                report.add("B2", i, i)

    if "C" in v:
        for i in range(a.p):
            c = a.centers[i]
            if not 0 <= c < g.vertex_count:
                continue
            witness = contiguity_witness(g, a.district_edges(i), c)
            if witness is not None:
                report.add("C1", i, frozenset(witness))
    return report
