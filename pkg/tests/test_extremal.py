from fractions import Fraction

import pytest

from graphpowers.bounds import cube_degrees
from graphpowers.certify import certify
from graphpowers.extremal import (
    build_extremal,
    extremal_expectations,
    layers,
    tightness_ratio,
    validate_extremal,
)
from graphpowers.graph import degree_stats, diameter


def test_k1_layout():
    g = build_extremal(1)
    assert g.n == 11
    assert degree_stats(g) == (4, [4] * 11, 22)
    h2, h4 = layers(1)[1], layers(1)[3]
    # K_2 minus a perfect matching has no edges
    assert not g.adj[h2[0]] >> h2[1] & 1
    assert not g.adj[h4[0]] >> h4[1] & 1


def test_layout_ranges():
    assert [(r.start, r.stop - 1) for r in layers(2)] == [(0, 4), (5, 8), (9, 9), (10, 13), (14, 18)]


def test_k2():
    g = build_extremal(2)
    assert (g.n, g.edge_count()) == (19, 76)
    assert degree_stats(g)[0] == 8
    # removed matching pairs are consecutive local indices
    assert not g.adj[5] >> 6 & 1 and not g.adj[7] >> 8 & 1 and g.adj[5] >> 7 & 1


def test_layer_structure_k3():
    k = 3
    g = build_extremal(k)
    parts = layers(k)
    for i, a in enumerate(parts):
        for j, b in enumerate(parts):
            for u in a:
                for v in b:
                    if u == v:
                        continue
                    adjacent = bool(g.adj[u] >> v & 1)
                    if abs(i - j) == 1:
                        assert adjacent
                    elif abs(i - j) > 1:
                        assert not adjacent
                    elif i in (0, 4):
                        assert adjacent
                    elif i in (1, 3):
                        paired = (u - a.start) // 2 == (v - a.start) // 2
                        assert adjacent != paired


@pytest.mark.parametrize("bad", [0, -1])
def test_bad_k(bad):
    with pytest.raises(ValueError):
        build_extremal(bad)
    with pytest.raises(ValueError):
        extremal_expectations(bad)


@pytest.mark.parametrize("k,v,e,e_cube,hi,lo", [
    (1, 11, 22, 46, (5, 10), (6, 7)),
    (2, 19, 76, 146, (9, 18), (10, 13)),
    (3, 27, 162, 302, (13, 26), (14, 19)),
])
def test_expectations(k, v, e, e_cube, hi, lo):
    x = extremal_expectations(k)
    assert (x.v, x.e, x.e_cube) == (v, e, e_cube)
    assert (x.hi_count, x.hi_degree) == hi
    assert (x.lo_count, x.lo_degree) == lo
    assert 2 * x.e == x.v * x.reg_degree
    assert 2 * x.e_cube == x.hi_count * x.hi_degree + x.lo_count * x.lo_degree


def test_expectations_k50():
    x = extremal_expectations(50)
    assert (x.v, x.e, x.e_cube) == (403, 40300, 70802)


def test_validate_examples():
    r = validate_extremal(1)
    assert r.ok and (r.tightness_num, r.tightness_den) == (368, 308)
    r = validate_extremal(3)
    assert r.ok and (r.v, r.e, r.e_cube) == (27, 162, 302)


def test_validate_all_k():
    for k in range(1, 51):
        r = validate_extremal(k)
        assert r.ok, r.mismatches
        assert r.tightness == tightness_ratio(k)


def test_tightness_k50():
    assert tightness_ratio(50) == Fraction(566416, 564200)
    r = validate_extremal(50)
    assert (r.tightness_num, r.tightness_den) == (566416, 564200)


def test_tightness_monotone():
    ratios = [tightness_ratio(k) for k in range(1, 51)]
    assert all(r > 1 for r in ratios)
    assert all(a > b for a, b in zip(ratios, ratios[1:]))
    assert all(1 < tightness_ratio(k) <= Fraction(102, 100) for k in range(25, 51))


def test_cube_degrees_by_layer():
    k = 4
    g = build_extremal(k)
    cube = cube_degrees(g)
    parts = layers(k)
    for i, part in enumerate(parts):
        want = 6 * k + 1 if i in (0, 4) else 8 * k + 2
        assert all(cube[v] == want for v in part)
    assert diameter(g) == 4


@pytest.mark.parametrize("k", range(1, 11))
def test_certificate_is_sharp_on_outer_layers(k):
    g = build_extremal(k)
    cert = certify(g)
    assert cert.passed
    d = cert.decomposition
    parts = layers(k)
    assert d.Y_blocks == (sum(1 << v for v in parts[0]), sum(1 << v for v in parts[4]))
    cube = cube_degrees(g)
    for yb in d.Y_blocks:
        need = d.delta + yb.bit_count()
        assert all(cube[v] == need for v in range(g.n) if yb >> v & 1)
