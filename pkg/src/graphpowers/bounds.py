"""Exact checks of edge-growth bounds for graph powers.

Two inequalities are checked, both in integer arithmetic:

* the cube bound ``8 * e(G^3) >= 7 * delta(G) * n`` for connected graphs of
  diameter at least 3;
* the Cayley-graph growth bound ``e(G^k) >= k * e(G)`` for circulant graphs
  on Z_p, under a selectable diameter hypothesis.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .graph import UNREACHABLE, Distance, Graph, GraphError, _trusted, balls, diameter

__all__ = [
    "BoundReport",
    "CayleyCheck",
    "DiameterPredicate",
    "Status",
    "bound_report",
    "cauchy_davenport_check",
    "cayley_graph",
    "cube_degrees",
    "is_prime",
]


class Status(str, enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    NOT_APPLICABLE = "NotApplicable"


def cube_degrees(g: Graph) -> list[int]:
    """Degree of every vertex in ``G^3``, i.e. ``|N^3(v)| - 1``."""
    return [b.bit_count() - 1 for b in balls(g, 3)[3]]


@dataclass(frozen=True)
class BoundReport:
    n: int
    e: int
    delta: int
    diam: Distance
    e_cube: int
    applicable: bool
    lhs_scaled: int
    rhs_scaled: int
    status: Status
    hegarty_ratio: Fraction | None

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    @property
    def ratio(self) -> Fraction | None:
        """``8 e(G^3) / (7 delta n)``; at least 1 exactly when the bound holds."""
        if self.rhs_scaled == 0:
            return None
        return Fraction(self.lhs_scaled, self.rhs_scaled)

    def to_json(self) -> dict:
        ratio = self.hegarty_ratio
        return {
            "n": self.n,
            "e": self.e,
            "delta": self.delta,
            "diam": None if self.diam is UNREACHABLE else self.diam,
            "e_cube": self.e_cube,
            "lhs8": self.lhs_scaled,
            "rhs7dn": self.rhs_scaled,
            "status": self.status.value,
            "ratio_num": None if ratio is None else ratio.numerator,
            "ratio_den": None if ratio is None else ratio.denominator,
        }


def bound_report(g: Graph) -> BoundReport:
    n = g.n
    degrees = [row.bit_count() for row in g.adj]
    delta = min(degrees)
    e = sum(degrees) // 2
    full = g.full

    # Diameter <= 2 is the common case in exhaustive scans; settle it from
    # the radius-2 balls before paying for anything else.
    table = balls(g, 2)
    if all(b == full for b in table[2]):
        diam: Distance = 0 if n == 1 else (1 if e == n * (n - 1) // 2 else 2)
        e_cube = n * (n - 1) // 2
    else:
        diam = diameter(g)
        e_cube = sum(cube_degrees(g)) // 2

    applicable = diam is not UNREACHABLE and diam >= 3
    lhs = 8 * e_cube
    rhs = 7 * delta * n
    if not applicable:
        status = Status.NOT_APPLICABLE
    else:
        status = Status.PASS if lhs >= rhs else Status.FAIL
    return BoundReport(
        n=n,
        e=e,
        delta=delta,
        diam=diam,
        e_cube=e_cube,
        applicable=applicable,
        lhs_scaled=lhs,
        rhs_scaled=rhs,
        status=status,
        hegarty_ratio=Fraction(e_cube, e) if e else None,
    )


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def cayley_graph(p: int, connection_set) -> Graph:
    """Circulant graph on Z_p joining x and y when x - y lies in the set."""
    if not is_prime(p):
        raise GraphError(f"{p} is not prime")
    s = set(connection_set)
    if 0 in s or any(x % p == 0 for x in s):
        raise GraphError("connection set must not contain 0")
    bad = sorted(x for x in s if not 1 <= x < p)
    if bad:
        raise GraphError(f"residues {bad} outside 1..{p - 1}")
    asym = sorted(x for x in s if p - x not in s)
    if asym:
        raise GraphError(f"connection set not symmetric: missing negatives of {asym}")
    mask = 0
    for x in s:
        mask |= 1 << x
    full = (1 << p) - 1
    rows = tuple(((mask << v) | (mask >> (p - v))) & full for v in range(p))
    return _trusted(p, rows)


class DiameterPredicate(str, enum.Enum):
    """Hypothesis under which ``e(G^k) >= k e(G)`` is asserted."""

    GE = "ge"  # diam >= k
    LT = "lt"  # diam < k, the hypothesis as printed
    GT = "gt"  # diam > k, i.e. G^k is not complete

    def holds(self, diam: int, k: int) -> bool:
        if self is DiameterPredicate.GE:
            return diam >= k
        if self is DiameterPredicate.LT:
            return diam < k
        return diam > k


@dataclass(frozen=True)
class CayleyCheck:
    p: int
    S: tuple[int, ...]
    k: int
    diam: Distance
    e: int
    e_k: int
    predicate_used: DiameterPredicate
    status: Status

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "S": list(self.S),
            "k": self.k,
            "diam": None if self.diam is UNREACHABLE else self.diam,
            "e": self.e,
            "e_k": self.e_k,
            "k_e": self.k * self.e,
            "predicate": self.predicate_used.value,
            "status": self.status.value,
        }


def cauchy_davenport_check(
    p: int,
    connection_set,
    k: int,
    predicate: DiameterPredicate | str = DiameterPredicate.GE,
) -> CayleyCheck:
    if k < 2:
        raise ValueError("power k must be at least 2")
    predicate = DiameterPredicate(predicate)
    g = cayley_graph(p, connection_set)
    diam = diameter(g)
    e = g.edge_count()
    e_k = sum(b.bit_count() - 1 for b in balls(g, k)[k]) // 2
    if diam is UNREACHABLE or not predicate.holds(diam, k):
        status = Status.NOT_APPLICABLE
    else:
        status = Status.PASS if e_k >= k * e else Status.FAIL
    return CayleyCheck(p, tuple(sorted(set(connection_set))), k, diam, e, e_k, predicate, status)


def symmetric_sets(p: int):
    """Every nonempty symmetric subset of ``1..p-1`` for odd ``p``."""
    half = (p - 1) // 2
    for mask in range(1, 1 << half):
        s = []
        for i in range(half):
            if mask >> i & 1:
                s.extend((i + 1, p - i - 1))
        yield tuple(sorted(s))
