"""Balanced contiguous two-district partitions and the arms tightness family.

Any connected graph with at least two edges splits into two contiguous
districts whose edge counts lie in ``[|E|/3, 2|E|/3]``.  The construction
first turns the graph into a tree with the same edges (an edge that would
close a cycle is re-hung on a fresh leaf attached to its smaller endpoint),
then walks a cut-point toward any branch holding more than two thirds of the
edges.  Once no branch is that large, one branch or a run of small branches
forms district 0.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .exceptions import DisconnectedGraph, TooFewEdges
from .graph import Graph, _UnionFind
from .model import Assignment


@dataclass(frozen=True)
class AuxiliaryTree:
    """Tree whose edge ``k`` stands for edge ``edge_map[k]`` of the source graph."""

    tree: Graph
    edge_map: tuple
    auxiliary_vertices: frozenset


def build_auxiliary_tree(graph: Graph) -> AuxiliaryTree:
    if graph.edge_count == 0 or not graph.is_connected():
        raise DisconnectedGraph("auxiliary tree needs a connected graph with at least one edge")
    uf = _UnionFind(graph.vertex_count)
    next_vertex = graph.vertex_count
    edges, aux = [], set()
    for u, v, b in graph.edges:
        if uf.union(u, v):
            edges.append((u, v, b))
        else:
            edges.append((min(u, v), next_vertex, b))
            aux.add(next_vertex)
            next_vertex += 1
    tree = Graph(next_vertex, tuple(edges), exact=graph.exact)
    return AuxiliaryTree(tree, tuple(range(graph.edge_count)), frozenset(aux))


@dataclass
class PartitionTrace:
    assignment: Assignment
    cut_point: int
    case: int
    relocations: int
    history: list = field(default_factory=list)   # (cut-point, largest branch size)
    sizes: tuple = ()


def _branches(tree: Graph, root: int) -> list[tuple[int, list[int]]]:
    """``(incident edge, subtree edges)`` for every edge at ``root``."""
    out = []
    for e0, w0 in tree.neighbors(root):
        comp, stack, seen = [e0], [w0], {root, w0}
        while stack:
            v = stack.pop()
            for e, w in tree.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    comp.append(e)
                    stack.append(w)
        out.append((e0, sorted(comp)))
    return out


def two_district_partition_trace(graph: Graph) -> PartitionTrace:
    """Run the construction and keep the intermediate cut-points."""
    m = graph.edge_count
    if m < 2:
        raise TooFewEdges(f"need at least 2 edges, got {m}")
    aux = build_auxiliary_tree(graph)
    tree = aux.tree
    lo, hi = Fraction(m, 3), Fraction(2 * m, 3)

    cut = max(range(graph.vertex_count), key=lambda v: (tree.degree(v), -v))
    history, relocations = [], 0
    while True:
        branches = _branches(tree, cut)
        e0, largest = max(branches, key=lambda br: len(br[1]))
        history.append((cut, len(largest)))
        if len(largest) <= hi:
            break
        # only one branch can exceed two thirds; step into it
        u, v = tree.endpoints(e0)
        cut = v if u == cut else u
        relocations += 1

    district = next((b for _, b in branches if lo <= len(b) <= hi), None)
    if district is not None:
        case = 2
    else:
        case = 3
        district = []
        for _, b in branches:
            district.extend(b)
            if len(district) >= lo:
                break
    chosen = {aux.edge_map[e] for e in district}
    labels = [0 if e in chosen else 1 for e in range(m)]
    assignment = Assignment.from_labels(labels, (cut, cut), exact=graph.exact)
    sizes = (len(chosen), m - len(chosen))
    return PartitionTrace(assignment, cut, case, relocations, history, sizes)


def two_district_partition(graph: Graph) -> Assignment:
    """Two contiguous districts, each with between a third and two thirds of the edges.

    Balance counts edges, whatever the weights.  Both districts are centered
    on the final cut-point, which every district touches.

    Raises
    ------
    TooFewEdges
        If the graph has fewer than two edges.
    DisconnectedGraph
        If the graph is not connected.
    """
    return two_district_partition_trace(graph).assignment


@dataclass(frozen=True)
class TightnessBound:
    p: int
    additive: Fraction
    multiplicative: Fraction
    note: str


def tightness_bound(p: int) -> TightnessBound:
    """Tolerances at which the ``p + 1`` arms family stops being feasible.

    With ``p + 1`` arms of ``k`` edges and arms kept whole, some district
    holds two arms (``2k`` edges) and some holds at most one (``k``).  The
    additive window needs ``tau >= (p-1)/(p+1)``; the multiplicative window
    needs ``tau <= min(p/(p+1), (p+1)/(2p))``.  For ``p = 2`` this gives 1/3
    and 2/3.
    """
    if p < 2:
        raise ValueError("p must be >= 2")
    additive = Fraction(p - 1, p + 1)
    multiplicative = min(Fraction(p, p + 1), Fraction(p + 1, 2 * p))
    note = "exact for p = 2"
    if p > 2:
        note = ("assumes arms are not split between districts; for p >= 3 a district may "
                "take part of an arm, so these are the whole-arm thresholds only, and the "
                "general-p limit mixes the additive and multiplicative conventions")
    return TightnessBound(p, additive, multiplicative, note)
