"""Pick and run a solver for an instance."""
from __future__ import annotations

from typing import Optional

from .complexity import Complexity, classify
from .exact import DEFAULT_MAX_DISTRICTS, DEFAULT_MAX_EDGES, solve_exact
from .exceptions import UnsupportedVariant
from .model import Assignment, Instance, VariantSpec
from .solvers import greedy_assign, solve_fractional_assignment, solve_lp_round, solve_trivial

SOLVERS = ("auto", "fractional", "greedy", "lp-round", "trivial", "exact")


def select_solver(variant) -> str:
    """Name of the polynomial solver covering ``variant``, or ``"exact"``."""
    if isinstance(variant, str):
        variant = VariantSpec.parse(variant)
    if classify(variant).complexity is not Complexity.POLYNOMIAL:
        return "exact"
    if variant.issubset("BOW"):
        return "fractional"
    if "N" not in variant and "B" not in variant:
        return "greedy"
    if str(variant) == "BIO":
        return "lp-round"
    if "N" in variant and variant.issubset("CINW"):
        return "trivial"
    return "exact"  # pragma: no cover - every polynomial cell is matched above


def run_solver(instance: Instance, solver: str = "auto", force: bool = False,
               max_edges: Optional[int] = DEFAULT_MAX_EDGES,
               max_districts: Optional[int] = DEFAULT_MAX_DISTRICTS,
               edge_order: str = "adjacency") -> tuple[str, Assignment]:
    """Solve ``instance`` and return ``(solver name, assignment)``.

    ``force`` lifts the exact search's size limits.
    """
    if solver not in SOLVERS:
        raise UnsupportedVariant(f"unknown solver {solver!r}; choose from {', '.join(SOLVERS)}")
    name = select_solver(instance.variant) if solver == "auto" else solver
    if name == "fractional":
        return name, solve_fractional_assignment(instance)
    if name == "greedy":
        return name, greedy_assign(instance)
    if name == "lp-round":
        return name, solve_lp_round(instance)
    if name == "trivial":
        return name, solve_trivial(instance)
    if force:
        max_edges = max_districts = None
    return name, solve_exact(instance, max_edges=max_edges, max_districts=max_districts,
                             edge_order=edge_order)
