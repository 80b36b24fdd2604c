import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from graphpowers.extremal import build_extremal
from graphpowers.formats import (
    FormatError,
    TextGraphRecord,
    emit_graph6,
    graph_edge_list,
    iter_graph6,
    parse_edge_list,
    parse_graph6,
    record_to_graph,
)
from graphpowers.graph import build_graph
from graphpowers.scan import enumerate_connected

from conftest import complete, path, to_nx


def reference_graph6(g) -> bytes:
    return nx.to_graph6_bytes(to_nx(g), header=False).rstrip(b"\n")


def test_known_records(p4, k4):
    assert emit_graph6(p4) == b"Ch"
    assert emit_graph6(k4) == b"C~"
    assert parse_graph6(b"Ch") == p4
    assert parse_graph6("C~") == k4
    assert emit_graph6(build_graph(1, [])) == b"@"
    assert parse_graph6(b"@") == build_graph(1, [])


def test_reference_encoder_agrees_on_examples(p4, k4):
    assert reference_graph6(p4) == b"Ch"
    assert reference_graph6(k4) == b"C~"


@pytest.mark.parametrize("record,needle", [
    (b"C", "body bytes"),
    (b"Chh", "body bytes"),
    (b"C\x7f", "outside 63..126"),
    (b"C ", "outside 63..126"),
    (b"B@", "padding"),
    (b"~?@?", "multi-byte"),
    (b"", "empty"),
    (b"?", "zero vertices"),
])
def test_parse_errors(record, needle):
    with pytest.raises(FormatError, match=needle):
        parse_graph6(record)


def test_emit_rejects_large_n():
    with pytest.raises(FormatError):
        emit_graph6(build_graph(63, []))


def test_header_prefix_accepted(p4):
    assert parse_graph6(b">>graph6<<Ch\n") == p4


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 62), st.data())
def test_emit_matches_reference_encoder(n, data):
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = data.draw(st.lists(st.sampled_from(pairs), unique=True, max_size=60) if pairs else st.just([]))
    g = build_graph(n, chosen)
    assert emit_graph6(g) == reference_graph6(g)
    assert parse_graph6(reference_graph6(g)) == g


@pytest.mark.parametrize("n", range(1, 7))
def test_round_trip_exhaustive(n):
    for g in enumerate_connected(n):
        record = emit_graph6(g)
        assert parse_graph6(record) == g


def test_emit_is_canonical_and_deterministic():
    a = build_graph(5, [(0, 1), (3, 4), (1, 2)])
    b = build_graph(5, [(4, 3), (2, 1), (1, 0), (0, 1)])
    assert emit_graph6(a) == emit_graph6(b)
    assert emit_graph6(build_extremal(3)) == emit_graph6(build_extremal(3))


def test_iter_graph6_skips_blanks_and_comments(p4, k4):
    lines = ["# header", "", "Ch", "  C~  ", "#x"]
    assert list(iter_graph6(lines)) == [p4, k4]


def test_parse_edge_list_undirected():
    rec = parse_edge_list("4\n0 1\n1 2\n2 3")
    assert rec == TextGraphRecord("undirected", 4, ((0, 1), (1, 2), (2, 3)))
    assert record_to_graph(rec) == path(4)


def test_parse_edge_list_directed():
    rec = parse_edge_list("directed 3\n0 1\n1 2\n2 0\n")
    assert rec.kind == "directed"
    assert rec.pairs == ((0, 1), (1, 2), (2, 0))


def test_edge_list_keeps_duplicates_for_builder():
    rec = parse_edge_list("3\n0 1\n1 0\n# comment\n\n0 1\n")
    assert len(rec.pairs) == 3
    assert record_to_graph(rec).edge_count() == 1


@pytest.mark.parametrize("text,needle", [
    ("3\n0 5", "out of range"),
    ("3\n1 1", "self-loop"),
    ("3\n0 x", "malformed"),
    ("three\n0 1", "malformed"),
    ("3\n0 1 2", "two integers"),
    ("directed 3\n0 1\n0 1", "duplicate arc"),
    ("", "empty"),
    ("3 4\n0 1", "header"),
])
def test_edge_list_errors(text, needle):
    with pytest.raises(FormatError, match=needle):
        parse_edge_list(text)


def test_directed_record_not_a_graph():
    with pytest.raises(FormatError):
        record_to_graph(parse_edge_list("directed 2\n0 1"))


def test_graph_edge_list_round_trip():
    g = build_extremal(2)
    assert record_to_graph(parse_edge_list(graph_edge_list(g))) == g
