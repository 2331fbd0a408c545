import networkx as nx
import pytest
from hypothesis import given, settings

from cyclespectra.generators import cage, gnp
from cyclespectra.graph import Graph
from cyclespectra.io import (
    FormatError,
    format_edge_list,
    format_edge_list_stream,
    format_graph6,
    iter_edge_list_stream,
    iter_graph6_stream,
    parse_edge_list,
    parse_graph6,
)

from test_graph import graphs


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=20))
def test_edge_list_round_trip(g):
    assert parse_edge_list(format_edge_list(g)) == g


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=20))
def test_graph6_round_trip_and_agrees_with_networkx(g):
    text = format_graph6(g)
    assert parse_graph6(text) == g
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    assert text == nx.to_graph6_bytes(h, header=False).decode().strip()


def test_graph6_header_is_accepted():
    g = cage("petersen")
    assert parse_graph6(">>graph6<<" + format_graph6(g)) == g


@pytest.mark.parametrize(
    "text, line, fragment",
    [
        ("", 1, "empty"),
        ("3 1\n0 5\n", 2, "out of range"),
        ("3 2\n0 1\n", 2, "announces 2 edges"),
        ("3 1\n1 1\n", 2, "self-loop"),
        ("3 2\n0 1\n1 0\n", 3, "duplicate"),
        ("3 1\n0 x\n", 2, "non-integer"),
        ("3\n", 1, "expected 2 integers"),
    ],
)
def test_edge_list_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(FormatError, match=fragment) as info:
        parse_edge_list(text)
    assert info.value.line == line


def test_streams():
    gs = [gnp(6, 0.5, seed=s) for s in range(4)]
    assert list(iter_edge_list_stream(format_edge_list_stream(gs).splitlines(True))) == gs
    assert list(iter_graph6_stream([format_graph6(g) + "\n" for g in gs] + ["\n"])) == gs


def test_graph6_rejects_garbage():
    with pytest.raises(FormatError):
        parse_graph6("")
    with pytest.raises(FormatError):
        parse_graph6("D")
    with pytest.raises(FormatError):
        format_graph6(Graph(70))
