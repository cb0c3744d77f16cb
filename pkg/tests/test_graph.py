from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given

from iterline.graph import (
    GraphClass,
    MultiGraph,
    bowtie_graph,
    classify,
    complete_graph,
    contract,
    cycle_graph,
    delete,
    delete_edges,
    delete_vertices,
    double_star_tree,
    in_class_G,
    is_claw_free,
    j1_graph,
    j2_graph,
    path_graph,
    petersen_graph,
    star_graph,
    subdivide,
)

from strategies import multigraphs, simple_graphs


def to_nx(g: MultiGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_edges_are_normalized_and_loops_rejected():
    g = MultiGraph(3, [(2, 0), (1, 0), (0, 1)])
    assert g.edges == ((0, 2), (0, 1), (0, 1))
    assert not g.is_simple
    assert g.degrees == (3, 2, 1)
    with pytest.raises(ValueError):
        MultiGraph(2, [(1, 1)])
    with pytest.raises(ValueError):
        MultiGraph(2, [(0, 2)])


@pytest.mark.parametrize(
    "g, tag",
    [
        (path_graph(5), GraphClass.PATH),
        (cycle_graph(5), GraphClass.CYCLE),
        (star_graph(3), GraphClass.K13),
        (j1_graph(), GraphClass.J1),
        (j2_graph(), GraphClass.J2),
        (MultiGraph(4, [(0, 1), (2, 3)]), GraphClass.DISCONNECTED),
        (complete_graph(4), GraphClass.IN_G),
        (star_graph(4), GraphClass.IN_G),
        (double_star_tree(), GraphClass.IN_G),
        (MultiGraph(1, []), GraphClass.PATH),
    ],
)
def test_classify(g, tag):
    assert classify(g) is tag
    assert in_class_G(g) == (tag is GraphClass.IN_G)


def test_classify_empty_graph_raises():
    with pytest.raises(ValueError, match="empty"):
        classify(MultiGraph(0, []))


def test_j1_j2_shapes():
    assert sorted(j1_graph().degrees) == [1, 2, 3]
    assert j1_graph().n == 3 and j2_graph().n == 2 and j2_graph().m == 3


@given(multigraphs())
def test_handshake(g):
    assert sum(g.degrees) == 2 * g.m
    assert all(len(g.incident[v]) == g.degrees[v] for v in range(g.n))


@given(simple_graphs(max_n=8))
def test_components_match_networkx(g):
    assert len(g.components) == nx.number_connected_components(to_nx(g))
    assert g.is_connected == (g.n > 0 and nx.is_connected(to_nx(g)))


def test_delete_vertices_and_edges():
    g = complete_graph(4)
    h = delete_vertices(g, [0])
    assert h.n == 3 and h.m == 3
    h = delete_edges(g, [0, 1])
    assert h.n == 4 and h.m == 4
    with pytest.raises(ValueError):
        delete(g, vertices=[0], edges=[0])


def test_contract_triangle_of_k4_gives_triple_edge():
    g = complete_graph(4)
    tri = [e for e, (u, v) in enumerate(g.edges) if u < 3 and v < 3]
    h = contract(g, tri)
    assert h.n == 2 and h.m == 3 and not h.is_simple


def test_contract_keeps_parallel_edges_and_drops_loops():
    g = cycle_graph(4)
    h = contract(g, [0])
    assert h.n == 3 and h.m == 3


def test_subdivide_adds_vertex_per_edge():
    g = complete_graph(3)
    h = subdivide(g, [0])
    assert (h.n, h.m) == (4, 4)
    assert h.degrees[3] == 2


def test_named_graphs():
    assert petersen_graph().degrees == (3,) * 10
    assert nx.is_isomorphic(to_nx(petersen_graph()), nx.petersen_graph())
    b = bowtie_graph()
    assert b.degrees[0] == 4 and b.n == 5
    t = double_star_tree()
    assert sorted(t.degrees) == [1, 1, 1, 1, 3, 3]


def test_claw_free():
    assert not is_claw_free(star_graph(3))
    assert is_claw_free(complete_graph(5))
