"""scikit-learn style wrappers around the solvers.

An estimator is fitted on one instance (or an instance document, or a path)
and exposes the solution through ``labels_`` (district of each edge),
``centers_``, ``assignment_`` and ``objective_``.  ``transform`` returns the
``|E| x p`` matrix of edge-to-center distances, in the spirit of
``KMeans.transform``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils.validation import check_is_fitted

from .bounds import two_district_partition
from .dispatch import run_solver
from .exact import DEFAULT_MAX_DISTRICTS, DEFAULT_MAX_EDGES
from .graph import Graph
from .model import Assignment, Instance, objective, validate
from .solvers import round_fractional, solve_fractional_assignment
from .validation import check_instance


class _DistricterBase(ClusterMixin, BaseEstimator):

    def _solve(self, instance: Instance) -> Assignment:  # pragma: no cover - abstract
        raise NotImplementedError

    def fit(self, X, y=None):
        """Solve the instance ``X``; ``y`` is ignored."""
        instance = check_instance(X)
        a = self._solve(instance)
        self.instance_ = instance
        self.assignment_ = a
        self.centers_ = np.asarray(a.centers, dtype=int)
        x = np.array([[float(v) for v in row] for row in a.x]).reshape(a.p, a.edge_count)
        self.labels_ = x.argmax(axis=0) if a.edge_count else np.zeros(0, dtype=int)
        self.objective_ = objective(instance, a) if "O" in instance.variant else None
        return self

    def predict(self, X=None):
        """District label of every edge of ``X`` (default: the fitted instance)."""
        check_is_fitted(self, "assignment_")
        if X is None or X is self.instance_:
            return self.labels_.copy()
        return type(self)(**self.get_params()).fit(X).labels_

    def transform(self, X=None):
        """Distance from every edge to every district center, shape ``(|E|, p)``."""
        check_is_fitted(self, "assignment_")
        instance = self.instance_ if X is None else check_instance(X)
        dm = instance.edge_distances
        return np.array([[float(dm[c][e]) for c in self.centers_]
                         for e in range(instance.edge_count)]).reshape(instance.edge_count, -1)

    def score(self, X=None, y=None):
        """Negative objective of the fitted solution (higher is better)."""
        check_is_fitted(self, "assignment_")
        instance = self.instance_ if X is None else check_instance(X)
        return -float(objective(instance, self.assignment_))

    def violations(self):
        check_is_fitted(self, "assignment_")
        return validate(self.instance_, self.assignment_)


class GreedyDistricter(_DistricterBase):
    """Nearest fixed center for every edge; optimal for IOW and CIOW."""

    def _solve(self, instance):
        return run_solver(instance, "greedy")[1]


class FractionalDistricter(_DistricterBase):
    """Optimal fractional allocation for fixed centers (transportation problem)."""

    def _solve(self, instance):
        return solve_fractional_assignment(instance)


class RoundingDistricter(_DistricterBase):
    """Fractional optimum rounded to an integral one of equal cost (BIO).

    Parameters
    ----------
    strict : bool, default=True
        Raise if a rounding step would change the objective.
    """

    def __init__(self, strict=True):
        self.strict = strict

    def _solve(self, instance):
        frac = solve_fractional_assignment(instance)
        return round_fractional(instance, frac, strict=self.strict)


class TrivialDistricter(_DistricterBase):
    """All edges in the first district (CIN, CINW)."""

    def _solve(self, instance):
        return run_solver(instance, "trivial")[1]


class ExactDistricter(_DistricterBase):
    """Branch-and-bound over all integral assignments.

    Parameters
    ----------
    max_edges, max_districts : int or None
        Refuse larger instances; ``None`` lifts the limit.
    edge_order : {"adjacency", "index"}
    """

    def __init__(self, max_edges=DEFAULT_MAX_EDGES, max_districts=DEFAULT_MAX_DISTRICTS,
                 edge_order="adjacency"):
        self.max_edges = max_edges
        self.max_districts = max_districts
        self.edge_order = edge_order

    def _solve(self, instance):
        return run_solver(instance, "exact", max_edges=self.max_edges,
                          max_districts=self.max_districts, edge_order=self.edge_order)[1]


class AutoDistricter(_DistricterBase):
    """Polynomial solver when the variant is tractable, exact search otherwise.

    The chosen solver is stored in ``solver_``.
    """

    def __init__(self, force=False, max_edges=DEFAULT_MAX_EDGES,
                 max_districts=DEFAULT_MAX_DISTRICTS):
        self.force = force
        self.max_edges = max_edges
        self.max_districts = max_districts

    def _solve(self, instance):
        self.solver_, a = run_solver(instance, "auto", force=self.force, max_edges=self.max_edges,
                                     max_districts=self.max_districts)
        return a


class TwoDistrictPartitioner(ClusterMixin, BaseEstimator):
    """Contiguous two-way split with each side holding a third to two thirds of the edges.

    ``fit`` takes a :class:`Graph` or an instance (whose graph is used).
    """

    def fit(self, X, y=None):
        graph = X if isinstance(X, Graph) else check_instance(X).graph
        a = two_district_partition(graph)
        self.graph_ = graph
        self.assignment_ = a
        self.centers_ = np.asarray(a.centers, dtype=int)
        self.labels_ = np.asarray(a.labels(), dtype=int)
        self.sizes_ = np.bincount(self.labels_, minlength=2)
        return self

    def predict(self, X=None):
        check_is_fitted(self, "assignment_")
        if X is None or X is self.graph_:
            return self.labels_.copy()
        return TwoDistrictPartitioner().fit(X).labels_
