from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from edgedistrict.exceptions import DisconnectedGraph, InvalidInstance
from edgedistrict.graph import (
    Graph,
    as_number,
    boundary_edges,
    connected_components,
    edge_vertex_distance,
    graph_from_pairs,
    incident_vertices,
    shortest_paths,
)
from edgedistrict.reductions import random_connected_graph
from oracles import bfs_distances

PATH4 = graph_from_pairs(4, [(0, 1), (1, 2), (2, 3)])
STAR4 = graph_from_pairs(5, [(0, 1), (0, 2), (0, 3), (0, 4)])


@st.composite
def connected_graphs(draw, max_n=8, max_extra=6):
    n = draw(st.integers(1, max_n))
    extra = draw(st.integers(0, max_extra))
    weighted = draw(st.booleans())
    seed = draw(st.integers(0, 10**6))
    return random_connected_graph(n, extra, weighted, seed)


def test_as_number_reads_decimal_floats_and_fraction_strings():
    assert as_number(0.1) == Fraction(1, 10)
    assert as_number("3/4") == Fraction(3, 4)
    assert as_number("3/4", exact=False) == 0.75
    with pytest.raises(TypeError):
        as_number(True)


def test_edges_must_have_positive_weight_and_valid_endpoints():
    with pytest.raises(InvalidInstance):
        Graph(2, ((0, 1, 0),))
    with pytest.raises(InvalidInstance):
        Graph(2, ((0, 2, 1),))


def test_incident_vertices():
    assert incident_vertices(PATH4, []) == set()
    assert incident_vertices(PATH4, [0]) == {0, 1}
    assert incident_vertices(PATH4, [0, 1]) == {0, 1, 2}


def test_boundary_edges_examples():
    assert boundary_edges(PATH4, [1]) == {0, 2}
    assert boundary_edges(PATH4, [0, 1, 2]) == set()
    # filter of all star edges by endpoint membership: every other spoke touches the hub
    assert boundary_edges(STAR4, [0]) == {1, 2, 3}


def test_connected_components_examples():
    assert connected_components(PATH4, []) == []
    assert connected_components(graph_from_pairs(3, [(0, 1), (1, 2)]), [0, 1]) == [[0, 1]]
    two = graph_from_pairs(4, [(0, 1), (2, 3)])
    assert connected_components(two, [0, 1]) == [[0], [1]]


def test_components_ordered_by_smallest_edge():
    g = graph_from_pairs(6, [(4, 5), (0, 1), (1, 2), (3, 4)])
    assert connected_components(g, [0, 1, 2, 3]) == [[0, 3], [1, 2]]


def test_disconnected_graph_rejected():
    with pytest.raises(DisconnectedGraph):
        shortest_paths(graph_from_pairs(4, [(0, 1), (2, 3)]))


def test_path_distances_and_edge_metric():
    table = shortest_paths(PATH4)
    assert [table(0, j) for j in range(4)] == [0, 1, 2, 3]
    assert edge_vertex_distance(table, PATH4, 0, 2) == 2
    half = shortest_paths(PATH4, alpha=Fraction(1, 2))
    assert edge_vertex_distance(half, PATH4, 0, 0) == Fraction(1, 2)


@given(connected_graphs())
def test_shortest_paths_match_floyd_warshall(g):
    table = shortest_paths(g)
    ref = bfs_distances(g)
    assert all(table(i, j) == ref[i][j] for i in range(g.vertex_count) for j in range(g.vertex_count))


@given(connected_graphs())
def test_triangle_inequality(g):
    t = shortest_paths(g)
    n = g.vertex_count
    assert all(t(i, j) <= t(i, k) + t(k, j) for i in range(n) for j in range(n) for k in range(n))


@given(connected_graphs(), st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(1)]))
def test_edge_distance_ignores_endpoint_order(g, alpha):
    flipped = Graph(g.vertex_count, tuple((v, u, b) for u, v, b in g.edges))
    t1, t2 = shortest_paths(g, alpha), shortest_paths(flipped, alpha)
    for v in range(g.vertex_count):
        for e in range(g.edge_count):
            assert edge_vertex_distance(t1, g, v, e) == edge_vertex_distance(t2, flipped, v, e)


@given(connected_graphs(max_n=7), st.data())
def test_boundary_is_disjoint_and_touching(g, data):
    D = data.draw(st.sets(st.integers(0, max(g.edge_count - 1, 0)), max_size=g.edge_count)) \
        if g.edge_count else set()
    B = boundary_edges(g, D)
    assert not B & set(D)
    verts = incident_vertices(g, D)
    assert all(set(g.endpoints(e)) & verts for e in B)


@given(connected_graphs(max_n=7), st.data())
def test_components_partition_and_are_maximal(g, data):
    if not g.edge_count:
        return
    D = data.draw(st.sets(st.integers(0, g.edge_count - 1)))
    comps = connected_components(g, D)
    assert sorted(e for c in comps for e in c) == sorted(D)
    for a in range(len(comps)):
        for b in range(a + 1, len(comps)):
            assert len(connected_components(g, comps[a] + comps[b])) == 2


def test_float_mode_distances_are_floats():
    g = graph_from_pairs(3, [(0, 1), (1, 2)], exact=False)
    t = shortest_paths(g)
    assert isinstance(t(0, 2), float) and t(0, 2) == 2.0
