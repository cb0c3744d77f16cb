from __future__ import annotations

import networkx as nx
import pytest
from hypothesis import given

from iterline.formats import (
    ParseError,
    decode_edgelists,
    decode_graph6,
    decode_graph6_lines,
    encode_edgelist,
    encode_graph6,
    read_graphs,
    serialize,
    to_dot,
)
from iterline.graph import MultiGraph, complete_graph, j2_graph, path_graph, petersen_graph

from strategies import multigraphs, simple_graphs


def nx_graph6(g: MultiGraph) -> str:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return nx.to_graph6_bytes(h, header=False).decode().strip()


@given(simple_graphs(min_n=1, max_n=70))
def test_graph6_encoding_matches_networkx(g):
    assert encode_graph6(g) == nx_graph6(g)


@given(simple_graphs(min_n=1, max_n=12))
def test_graph6_round_trip_is_byte_identical(g):
    text = encode_graph6(g)
    h = decode_graph6(text)
    assert set(h.edges) == set(g.edges) and h.n == g.n
    assert encode_graph6(h) == text


def test_known_graph6_strings():
    assert encode_graph6(complete_graph(4)) == "C~"
    assert encode_graph6(path_graph(4)) == "Ch"
    assert encode_graph6(complete_graph(4), header=True) == ">>graph6<<C~"
    assert set(decode_graph6(">>graph6<<C~").edges) == set(complete_graph(4).edges)
    assert decode_graph6(nx_graph6(petersen_graph())).m == 15


def test_graph6_large_n_header():
    g = MultiGraph(100, [(0, 99)])
    assert encode_graph6(g).startswith("~")
    assert decode_graph6(encode_graph6(g)) == g


@pytest.mark.parametrize("bad", ["", "C", "C~~", "C\x7f", "D~"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(ParseError):
        decode_graph6(bad)


def test_graph6_error_reports_line_and_offset():
    with pytest.raises(ParseError) as err:
        list(decode_graph6_lines("C~\nC~\nC\x7f\n"))
    assert err.value.line == 3
    assert err.value.offset is not None


def test_graph6_rejects_multigraph():
    with pytest.raises(ValueError, match="parallel edges"):
        encode_graph6(j2_graph())


def test_edgelist_p4():
    (g,) = decode_edgelists("4 3\n0 1\n1 2\n2 3")
    assert g == path_graph(4)


@given(multigraphs())
def test_edgelist_round_trip_keeps_parallel_edges(g):
    (h,) = decode_edgelists(encode_edgelist(g))
    assert h == g


def test_edgelist_multiple_blocks_and_comments():
    text = "# two graphs\n3 2\n0 1\n1 2\n\n2 2 # parallel\n0 1\n1 0\n"
    a, b = decode_edgelists(text)
    assert a.m == 2 and b.m == 2 and not b.is_simple


@pytest.mark.parametrize(
    "text, line",
    [
        ("3 2\n0 1\n", 1),
        ("3 1\n0 5\n", 2),
        ("3 1\n0 x\n", 2),
        ("3 1\n1 1\n", 2),
        ("3\n", 1),
    ],
)
def test_edgelist_errors_carry_line(text, line):
    with pytest.raises(ParseError) as err:
        list(decode_edgelists(text))
    assert err.value.line == line


def test_read_graphs_by_suffix(tmp_path):
    p = tmp_path / "a.g6"
    p.write_text("C~\nCh\n")
    assert [g.m for g in read_graphs(p)] == [6, 3]
    q = tmp_path / "a.txt"
    q.write_text("2 1\n0 1\n")
    assert read_graphs(q)[0].m == 1


def test_serialize_and_dot():
    assert serialize(complete_graph(3)) == "Bw"
    assert serialize(j2_graph()) == "2 3: 0-1 0-1 0-1"
    dot = to_dot(path_graph(3))
    assert dot.startswith("graph G {") and "0 -- 1;" in dot
