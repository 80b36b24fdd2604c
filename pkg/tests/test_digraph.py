import itertools
from fractions import Fraction

import pytest

from graphpowers.digraph import (
    Digraph,
    Reading,
    balanced_degree,
    build_digraph,
    conjecture_scan,
    digraph_from_record,
    digraph_square,
    directed_cycle,
    eulerian_orientations,
    square_size,
)
from graphpowers.formats import parse_edge_list
from graphpowers.graph import GraphError, build_graph
from graphpowers.scan import enumerate_connected

from conftest import complete, cycle, path


def paley7():
    return build_digraph(7, [(u, (u + s) % 7) for u in range(7) for s in (1, 2, 4)])


def brute_two_step(d):
    arcs = set(d.arcs())
    out = set(arcs)
    for (a, b), (c, e) in itertools.product(arcs, arcs):
        if b == c and a != e:
            out.add((a, e))
    return out


def brute_balanced_orientations(g):
    edges = g.edges()
    found = set()
    for flips in itertools.product((False, True), repeat=len(edges)):
        arcs = [(v, u) if f else (u, v) for (u, v), f in zip(edges, flips)]
        outd = [0] * g.n
        ind = [0] * g.n
        for a, b in arcs:
            outd[a] += 1
            ind[b] += 1
        if outd == ind:
            found.add(frozenset(arcs))
    return found


def test_square_examples():
    c5 = directed_cycle(5)
    sq = digraph_square(c5)
    assert sq.arc_count == 10
    assert set(sq.arcs()) == {(i, (i + s) % 5) for i in range(5) for s in (1, 2)}
    assert digraph_square(directed_cycle(3)).arc_count == 6
    p = paley7()
    assert digraph_square(p).arc_count == 42 == 2 * p.arc_count
    assert set(digraph_square(p).arcs()) == brute_two_step(p)


def test_square_against_brute_force():
    for g in enumerate_connected(5):
        for d in eulerian_orientations(g):
            assert set(digraph_square(d).arcs()) == brute_two_step(d)


def test_pair_reading():
    assert square_size(directed_cycle(3), Reading.PAIR) == 3
    assert square_size(directed_cycle(5), "pair") == 10
    assert square_size(directed_cycle(5), "arc") == 10


def test_balanced_degree():
    assert balanced_degree(directed_cycle(5)) == 1
    assert balanced_degree(paley7()) == 3
    assert balanced_degree(build_digraph(2, [(0, 1)])) is None


def test_digraph_validation():
    with pytest.raises(GraphError):
        build_digraph(2, [(0, 0)])
    with pytest.raises(GraphError):
        build_digraph(2, [(0, 1), (0, 1)])
    assert not build_digraph(2, [(0, 1), (1, 0)]).is_orientation
    assert paley7().is_orientation


def test_digraph_edge_list_round_trip():
    d = paley7()
    assert digraph_from_record(parse_edge_list(d.to_edge_list())) == d


@pytest.mark.parametrize("g,count", [(cycle(3), 2), (cycle(4), 2), (path(3), 0), (complete(5), 24)])
def test_orientation_counts(g, count):
    assert sum(1 for _ in eulerian_orientations(g)) == count


@pytest.mark.parametrize("n", range(1, 6))
def test_orientations_match_brute_force(n):
    for g in enumerate_connected(n):
        got = [frozenset(d.arcs()) for d in eulerian_orientations(g)]
        assert len(got) == len(set(got))
        assert set(got) == brute_balanced_orientations(g)


def test_orientations_closed_under_reversal():
    for g in enumerate_connected(6):
        ds = {d for d in eulerian_orientations(g)}
        for d in ds:
            assert d.reversed() in ds
            assert d.is_orientation


@pytest.mark.parametrize("n", range(3, 12))
def test_directed_cycles_are_tight(n):
    d = directed_cycle(n)
    assert digraph_square(d).arc_count == 2 * n
    assert sum(1 for _ in eulerian_orientations(cycle(n))) == 2


def test_square_preserves_arcs():
    for g in enumerate_connected(5):
        for d in eulerian_orientations(g):
            sq = digraph_square(d)
            assert all(a & ~b == 0 for a, b in zip(d.out, sq.out))


def test_scan_cycle_only():
    s = conjecture_scan([cycle(6)])
    assert (s.graphs_examined, s.orientations_examined) == (1, 2)
    assert s.min_ratio == 2 and not s.violations
    assert len(s.argmin) == 2


def test_scan_empty():
    s = conjecture_scan([])
    assert (s.graphs_examined, s.orientations_examined, s.min_ratio) == (0, 0, None)
    assert s.to_json()["min_ratio_num"] is None


def test_scan_small_population():
    s = conjecture_scan(g for n in range(1, 6) for g in enumerate_connected(n))
    assert not s.violations
    assert s.min_ratio == 2
    assert all(w["e_square"] == 2 * w["e"] for w in s.argmin)
    assert any(w["degree"] == 1 and len(w["arcs"]) == w["n"] for w in s.argmin)


def test_scan_require_regular_subset():
    everything = conjecture_scan(g for g in enumerate_connected(5))
    regular = conjecture_scan((g for g in enumerate_connected(5)), require_regular=True)
    assert regular.orientations_examined < everything.orientations_examined
    assert not regular.violations


def test_scan_pair_reading_flags_triangle():
    s = conjecture_scan([cycle(3)], reading="pair")
    assert len(s.violations) == 2
    assert s.min_ratio == 1
    assert s.to_json()["status"] == "Fail"


def test_summary_merge_matches_single_pass():
    graphs = list(enumerate_connected(5))
    whole = conjecture_scan(graphs, argmin_limit=5)
    left = conjecture_scan(graphs[:300], argmin_limit=5)
    left.merge(conjecture_scan(graphs[300:], argmin_limit=5))
    assert left.to_json() == whole.to_json()
