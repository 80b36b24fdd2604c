"""Balanced orientations and squares of digraphs.

``e(D^2)`` is measured in one of two ways:

* ``arc``: ordered pairs (u, w) with directed distance 1 or 2, the default;
* ``pair``: unordered pairs {u, w} joined in either direction at directed
  distance at most 2.

For an orientation of a simple graph both readings give ``e(D)`` equal to
the number of edges of the underlying graph.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .formats import TextGraphRecord, emit_edge_list
from .graph import Graph, GraphError, bits

__all__ = [
    "Digraph",
    "OrientationScanSummary",
    "Reading",
    "balanced_degree",
    "build_digraph",
    "conjecture_scan",
    "digraph_square",
    "directed_cycle",
    "eulerian_orientations",
    "square_size",
]


@dataclass(frozen=True)
class Digraph:
    """Digraph on ``0..n-1``; ``out[u]`` is the out-neighbourhood bitmask."""

    n: int
    out: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.out) != self.n:
            raise GraphError(f"expected {self.n} out-rows, got {len(self.out)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.out):
            if row & ~full:
                raise GraphError(f"row {u} has bits outside 0..{self.n - 1}")
            if row >> u & 1:
                raise GraphError(f"loop at vertex {u}")

    @property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, w) for u in range(self.n) for w in bits(self.out[u])]

    def in_rows(self) -> list[int]:
        rows = [0] * self.n
        for u, row in enumerate(self.out):
            for w in bits(row):
                rows[w] |= 1 << u
        return rows

    @property
    def is_orientation(self) -> bool:
        """No pair of opposite arcs."""
        return all(not (self.out[w] >> u & 1) for u in range(self.n) for w in bits(self.out[u]))

    def reversed(self) -> "Digraph":
        return Digraph(self.n, tuple(self.in_rows()))

    def to_edge_list(self) -> str:
        return emit_edge_list(self.n, self.arcs(), directed=True)


def build_digraph(n: int, arcs: Iterable[tuple[int, int]]) -> Digraph:
    rows = [0] * n
    for u, w in arcs:
        if not (0 <= u < n and 0 <= w < n):
            raise GraphError(f"arc ({u}, {w}) has an endpoint outside 0..{n - 1}")
        if u == w:
            raise GraphError(f"arc ({u}, {w}) is a loop")
        if rows[u] >> w & 1:
            raise GraphError(f"duplicate arc ({u}, {w})")
        rows[u] |= 1 << w
    return Digraph(n, tuple(rows))


def digraph_from_record(record: TextGraphRecord) -> Digraph:
    if record.kind != "directed":
        raise GraphError("expected a directed edge list")
    return build_digraph(record.n, record.pairs)


def directed_cycle(n: int) -> Digraph:
    return build_digraph(n, [(i, (i + 1) % n) for i in range(n)])


def digraph_square(d: Digraph) -> Digraph:
    """Arcs between ordered pairs at directed distance 1 or 2."""
    out = d.out
    rows = []
    for u, row in enumerate(out):
        reach = row
        for w in bits(row):
            reach |= out[w]
        rows.append(reach & ~(1 << u))
    return Digraph(d.n, tuple(rows))


class Reading(str, enum.Enum):
    ARC = "arc"
    PAIR = "pair"


def square_size(d: Digraph, reading: Reading | str = Reading.ARC) -> int:
    sq = digraph_square(d)
    if Reading(reading) is Reading.ARC:
        return sq.arc_count
    sym = [a | b for a, b in zip(sq.out, sq.in_rows())]
    return sum(row.bit_count() for row in sym) // 2


def balanced_degree(d: Digraph) -> int | None:
    """The common in- and out-degree, or None when degrees differ."""
    if d.n == 0:
        return None
    target = d.out[0].bit_count()
    if any(row.bit_count() != target for row in d.out):
        return None
    if any(row.bit_count() != target for row in d.in_rows()):
        return None
    return target


def eulerian_orientations(g: Graph) -> Iterator[Digraph]:
    """Every orientation with in-degree equal to out-degree at each vertex.

    Edges are decided in lexicographic order. A partial orientation is
    abandoned once some vertex's out-minus-in imbalance exceeds the number
    of its still-undecided edges.
    """
    if any(row.bit_count() % 2 for row in g.adj):
        return
    edges = g.edges()
    n = g.n
    remaining = [row.bit_count() for row in g.adj]
    balance = [0] * n
    out = [0] * n

    def extend(i: int) -> Iterator[Digraph]:
        if i == len(edges):
            yield Digraph(n, tuple(out))
            return
        a, b = edges[i]
        remaining[a] -= 1
        remaining[b] -= 1
        for tail, head in ((a, b), (b, a)):
            balance[tail] += 1
            balance[head] -= 1
            if abs(balance[tail]) <= remaining[tail] and abs(balance[head]) <= remaining[head]:
                out[tail] |= 1 << head
                yield from extend(i + 1)
                out[tail] &= ~(1 << head)
            balance[tail] -= 1
            balance[head] += 1
        remaining[a] += 1
        remaining[b] += 1

    yield from extend(0)


@dataclass
class OrientationScanSummary:
    reading: Reading = Reading.ARC
    require_regular: bool = False
    graphs_examined: int = 0
    orientations_examined: int = 0
    violations: list[dict] = field(default_factory=list)
    min_ratio: Fraction | None = None
    argmin: list[dict] = field(default_factory=list)
    argmin_limit: int = 50
    argmin_truncated: bool = False

    def record(self, d: Digraph, e: int, e_sq: int) -> None:
        self.orientations_examined += 1
        ratio = Fraction(e_sq, e)
        if e_sq < 2 * e:
            self.violations.append(_witness(d, e, e_sq))
        if self.min_ratio is None or ratio < self.min_ratio:
            self.min_ratio = ratio
            self.argmin = [_witness(d, e, e_sq)]
            self.argmin_truncated = False
        elif ratio == self.min_ratio:
            if len(self.argmin) < self.argmin_limit:
                self.argmin.append(_witness(d, e, e_sq))
            else:
                self.argmin_truncated = True

    def merge(self, other: "OrientationScanSummary") -> "OrientationScanSummary":
        self.graphs_examined += other.graphs_examined
        self.orientations_examined += other.orientations_examined
        self.violations.extend(other.violations)
        if other.min_ratio is not None:
            if self.min_ratio is None or other.min_ratio < self.min_ratio:
                self.min_ratio = other.min_ratio
                self.argmin = list(other.argmin)
                self.argmin_truncated = other.argmin_truncated
            elif other.min_ratio == self.min_ratio:
                room = self.argmin_limit - len(self.argmin)
                self.argmin.extend(other.argmin[:room])
                self.argmin_truncated |= other.argmin_truncated or len(other.argmin) > room
        return self

    def to_json(self) -> dict:
        return {
            "reading": self.reading.value,
            "require_regular": self.require_regular,
            "graphs_examined": self.graphs_examined,
            "orientations_examined": self.orientations_examined,
            "violation_count": len(self.violations),
            "violations": self.violations,
            "min_ratio_num": None if self.min_ratio is None else self.min_ratio.numerator,
            "min_ratio_den": None if self.min_ratio is None else self.min_ratio.denominator,
            "argmin": self.argmin,
            "argmin_truncated": self.argmin_truncated,
            "status": "Fail" if self.violations else "Pass",
        }


def _witness(d: Digraph, e: int, e_sq: int) -> dict:
    return {"n": d.n, "arcs": [list(a) for a in d.arcs()], "e": e, "e_square": e_sq,
            "degree": balanced_degree(d)}


def conjecture_scan(
    source: Iterable[Graph],
    require_regular: bool = False,
    reading: Reading | str = Reading.ARC,
    argmin_limit: int = 50,
) -> OrientationScanSummary:
    """Test ``e(D^2) >= 2 e(D)`` on every balanced orientation of each graph.

    With ``require_regular`` only orientations in which every vertex has
    the same in- and out-degree d are counted.
    """
    reading = Reading(reading)
    summary = OrientationScanSummary(reading=reading, require_regular=require_regular,
                                     argmin_limit=argmin_limit)
    for g in source:
        summary.graphs_examined += 1
        if g.edge_count() == 0:
            continue
        for d in eulerian_orientations(g):
            if require_regular and balanced_degree(d) is None:
                continue
            summary.record(d, d.arc_count, square_size(d, reading))
    return summary
