"""The five-layer family showing the cube bound is sharp.

Layer layout for parameter k (vertex index ranges, inclusive):

    H1 = K_{2k+1}                    [0, 2k]
    H2 = K_{2k} minus a matching     [2k+1, 4k]
    H3 = single vertex               {4k+1}
    H4 = K_{2k} minus a matching     [4k+2, 6k+1]
    H5 = K_{2k+1}                    [6k+2, 8k+2]

Consecutive layers are completely joined. Inside H2 and H4 the removed
matching pairs local indices (2j, 2j+1).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import Graph, _trusted, degree_stats, diameter, is_connected
from .bounds import cube_degrees

__all__ = [
    "ExtremalExpectation",
    "ExtremalValidation",
    "build_extremal",
    "extremal_expectations",
    "layers",
    "tightness_ratio",
    "validate_extremal",
]


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"extremal family parameter must be a positive integer, got {k!r}")


def layers(k: int) -> list[range]:
    _check_k(k)
    return [
        range(0, 2 * k + 1),
        range(2 * k + 1, 4 * k + 1),
        range(4 * k + 1, 4 * k + 2),
        range(4 * k + 2, 6 * k + 2),
        range(6 * k + 2, 8 * k + 3),
    ]


def build_extremal(k: int) -> Graph:
    parts = layers(k)
    n = 8 * k + 3
    masks = [sum(1 << v for v in part) for part in parts]
    rows = [0] * n
    for i, part in enumerate(parts):
        joined = masks[i]
        if i > 0:
            joined |= masks[i - 1]
        if i < 4:
            joined |= masks[i + 1]
        for v in part:
            rows[v] = joined & ~(1 << v)
    for i in (1, 3):
        start = parts[i].start
        for j in range(k):
            a, b = start + 2 * j, start + 2 * j + 1
            rows[a] &= ~(1 << b)
            rows[b] &= ~(1 << a)
    return _trusted(n, tuple(rows))


@dataclass(frozen=True)
class ExtremalExpectation:
    k: int
    v: int
    reg_degree: int
    e: int
    e_cube: int
    hi_count: int
    hi_degree: int
    lo_count: int
    lo_degree: int

    @property
    def diameter(self) -> int:
        return 4

    @property
    def cube_degree_counts(self) -> dict[int, int]:
        return {self.hi_degree: self.hi_count, self.lo_degree: self.lo_count}


def extremal_expectations(k: int) -> ExtremalExpectation:
    _check_k(k)
    return ExtremalExpectation(
        k=k,
        v=8 * k + 3,
        reg_degree=4 * k,
        e=16 * k * k + 6 * k,
        e_cube=28 * k * k + 16 * k + 2,
        hi_count=4 * k + 1,
        hi_degree=8 * k + 2,
        lo_count=4 * k + 2,
        lo_degree=6 * k + 1,
    )


def tightness_ratio(k: int) -> Fraction:
    """``8 e(G_k^3) / (7 * 4k * (8k+3))`` from the closed forms, unreduced-safe."""
    x = extremal_expectations(k)
    return Fraction(8 * x.e_cube, 7 * x.reg_degree * x.v)


@dataclass(frozen=True)
class ExtremalValidation:
    k: int
    expected: ExtremalExpectation
    v: int
    min_degree: int
    max_degree: int
    e: int
    connected: bool
    diameter: object
    e_cube: int
    cube_degree_counts: dict[int, int]
    tightness_num: int
    tightness_den: int
    mismatches: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def tightness(self) -> Fraction:
        return Fraction(self.tightness_num, self.tightness_den)

    def to_json(self) -> dict:
        x = self.expected
        return {
            "k": self.k,
            "v": self.v,
            "v_expected": x.v,
            "degree": self.min_degree if self.min_degree == self.max_degree else None,
            "degree_expected": x.reg_degree,
            "e": self.e,
            "e_expected": x.e,
            "diam": self.diameter,
            "e_cube": self.e_cube,
            "e_cube_expected": x.e_cube,
            "cube_degrees": {str(d): c for d, c in sorted(self.cube_degree_counts.items())},
            "cube_degrees_expected": {str(d): c for d, c in sorted(x.cube_degree_counts.items())},
            "tightness_num": self.tightness_num,
            "tightness_den": self.tightness_den,
            "status": "Pass" if self.ok else "Fail",
            "mismatches": self.mismatches,
        }


def validate_extremal(k: int) -> ExtremalValidation:
    """Build G_k and compare every measured quantity with the closed forms."""
    x = extremal_expectations(k)
    g = build_extremal(k)
    delta, degrees, e = degree_stats(g)
    cube = cube_degrees(g)
    e_cube = sum(cube) // 2
    counts = dict(Counter(cube))
    diam = diameter(g)
    connected = is_connected(g)

    mismatches = []
    checks = [
        ("v", g.n, x.v),
        ("min_degree", delta, x.reg_degree),
        ("max_degree", max(degrees), x.reg_degree),
        ("e", e, x.e),
        ("connected", connected, True),
        ("diameter", diam, x.diameter),
        ("e_cube", e_cube, x.e_cube),
        ("cube_degree_counts", counts, x.cube_degree_counts),
        ("e_cube_from_counts", 2 * x.e_cube, x.hi_count * x.hi_degree + x.lo_count * x.lo_degree),
        ("e_from_regularity", 2 * x.e, x.v * x.reg_degree),
    ]
    for name, got, want in checks:
        if got != want:
            mismatches.append(f"{name}: measured {got!r}, expected {want!r}")

    # Measured tightness, kept unreduced as 8 e(G^3) over 7 delta n.
    return ExtremalValidation(
        k=k,
        expected=x,
        v=g.n,
        min_degree=delta,
        max_degree=max(degrees),
        e=e,
        connected=connected,
        diameter=diam,
        e_cube=e_cube,
        cube_degree_counts=counts,
        tightness_num=8 * e_cube,
        tightness_den=7 * delta * g.n,
        mismatches=mismatches,
    )
