"""Slow, independent reference implementations used only by the tests."""
from fractions import Fraction
from itertools import combinations, product

from edgedistrict.model import c1_violated_subsets


def bfs_distances(graph):
    """All-pairs distances by repeated relaxation (Floyd-Warshall)."""
    n = graph.vertex_count
    inf = None
    d = [[Fraction(0) if i == j else inf for j in range(n)] for i in range(n)]
    for u, v, b in graph.edges:
        b = Fraction(b)
        for a, c in ((u, v), (v, u)):
            if d[a][c] is None or b < d[a][c]:
                d[a][c] = b
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] is not None and d[k][j] is not None:
                    cand = d[i][k] + d[k][j]
                    if d[i][j] is None or cand < d[i][j]:
                        d[i][j] = cand
    return d


def edge_cost(d, graph, v, e, alpha):
    j, k, b = graph.edges[e]
    return min(d[v][j], d[v][k]) + Fraction(alpha) * Fraction(b)


def contiguous_by_enumeration(graph, edges, center):
    """C1 evaluated literally: no subset D of the district is cut off from the center."""
    row = [1 if e in set(edges) else 0 for e in range(graph.edge_count)]
    return next(iter(c1_violated_subsets(graph, row, center)), None) is None


def naive_optimum(instance):
    """Best objective (or just feasibility) by enumerating every integral labeling.

    Returns ``(feasible, best objective or None)``.  Per-district data is
    memoized by edge subset; under N each district picks its best center
    independently, which is exactly what free centers mean.
    """
    g = instance.graph
    m, p = g.edge_count, instance.p
    var = instance.variant
    d = bfs_distances(g)
    alpha = instance.alpha
    lohi = instance.bounds() if "B" in var else None
    verts = range(g.vertex_count)
    cache = {}

    def district(mask, fixed):
        key = (mask, fixed)
        if key in cache:
            return cache[key]
        edges = [e for e in range(m) if mask >> e & 1]
        load = sum((Fraction(g.weight(e)) for e in edges), Fraction(0))
        if lohi is not None and not (lohi[0] <= load <= lohi[1]):
            cache[key] = None
            return None
        options = [fixed] if fixed is not None else list(verts)
        best = None
        for c in options:
            if "C" in var and not contiguous_by_enumeration(g, edges, c):
                continue
            cost = sum((edge_cost(d, g, c, e, alpha) for e in edges), Fraction(0))
            if best is None or cost < best:
                best = cost
        cache[key] = best
        return best

    best = None
    feasible = False
    for labels in product(range(p), repeat=m):
        masks = [0] * p
        for e, i in enumerate(labels):
            masks[i] |= 1 << e
        total = Fraction(0)
        ok = True
        for i in range(p):
            fixed = None if instance.centers is None else instance.centers[i]
            c = district(masks[i], fixed)
            if c is None:
                ok = False
                break
            total += c
        if not ok:
            continue
        feasible = True
        if "O" not in var:
            return True, None
        if best is None or total < best:
            best = total
    return feasible, best


def brute_vertex_cover(graph):
    pairs = [(u, v) for u, v, _ in graph.edges]
    for size in range(graph.vertex_count + 1):
        for cover in combinations(range(graph.vertex_count), size):
            s = set(cover)
            if all(u in s or v in s for u, v in pairs):
                return size
    return graph.vertex_count


def brute_3partition(values):
    """Try every way of splitting into ordered triples (tiny inputs only)."""
    values = list(values)
    m = len(values) // 3
    if m == 0 or sum(values) % m:
        return False
    T = sum(values) // m

    def rec(rest):
        if not rest:
            return True
        first = rest[0]
        for a, b in combinations(range(1, len(rest)), 2):
            if first + rest[a] + rest[b] == T:
                nxt = [x for k, x in enumerate(rest) if k not in (0, a, b)]
                if rec(nxt):
                    return True
        return False

    return rec(values)

