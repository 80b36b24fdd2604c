"""Exhaustive scans of the cube bound over graph populations.

Labeled connected graphs are enumerated by edge mask with bit ``i``
standing for the ``i``-th pair in graph6 order (0,1), (0,2), (1,2), (0,3), ...
The low bits (every pair not touching the last vertex) form a *prefix*;
work is partitioned into contiguous prefix ranges, and per-range summaries
are merged in range order so results do not depend on worker count.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .bounds import Status, bound_report
from .certify import CLAIM_NAMES, certify
from .formats import emit_graph6
from .graph import UNREACHABLE, Graph, _trusted, balls

__all__ = [
    "InconsistencyError",
    "MAX_SCAN_N",
    "LONG_RUN_N",
    "ScanSummary",
    "enumerate_connected",
    "prefix_count",
    "ratio_scan",
    "scan_connected",
]

log = logging.getLogger(__name__)

MAX_SCAN_N = 8
# Sizes at or above this need an explicit opt-in.
LONG_RUN_N = 8


class InconsistencyError(RuntimeError):
    """Certificate and direct bound check disagree on the same graph."""


def _check_n(n: int, long_run: bool) -> None:
    if not 1 <= n <= MAX_SCAN_N:
        raise ValueError(f"exhaustive enumeration supports 1 <= n <= {MAX_SCAN_N}, got {n}")
    if n >= LONG_RUN_N and not long_run:
        raise ValueError(f"n={n} is gated behind the long-run flag")


def prefix_count(n: int) -> int:
    return 1 << ((n - 1) * (n - 2) // 2) if n >= 2 else 1


def _prefix_rows(n: int, prefix: int) -> list[int]:
    rows = [0] * n
    pos = 0
    for j in range(1, n - 1):
        for i in range(j):
            if prefix >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos += 1
    return rows


def enumerate_connected(
    n: int,
    start: int = 0,
    stop: int | None = None,
    long_run: bool = False,
) -> Iterator[Graph]:
    """Every labeled connected simple graph on ``n`` vertices, exactly once.

    ``start``/``stop`` restrict to a range of prefixes (edge masks on the
    first ``n - 1`` vertices); the default covers all of them.
    """
    _check_n(n, long_run)
    if n == 1:
        if start == 0 and (stop is None or stop > 0):
            yield _trusted(1, (0,))
        return
    last = n - 1
    top = 1 << last
    stop = prefix_count(n) if stop is None else min(stop, prefix_count(n))
    lowmask = top - 1
    for prefix in range(start, stop):
        rows = _prefix_rows(n, prefix)
        # Components of the first n-1 vertices; the last vertex must touch each.
        comps = []
        remaining = lowmask
        while remaining:
            reached = frontier = remaining & -remaining
            while frontier:
                grown = reached
                f = frontier
                while f:
                    low = f & -f
                    grown |= rows[low.bit_length() - 1]
                    f ^= low
                frontier = grown & ~reached
                reached = grown
            comps.append(reached)
            remaining &= ~reached
        base = rows[:last]
        for c in range(1, top):
            ok = True
            for comp in comps:
                if not c & comp:
                    ok = False
                    break
            if not ok:
                continue
            adj = [r | top if c >> i & 1 else r for i, r in enumerate(base)]
            adj.append(c)
            yield _trusted(n, tuple(adj))


@dataclass
class ScanSummary:
    examined: int = 0
    applicable: int = 0
    passed: int = 0
    failed: int = 0
    not_applicable: int = 0
    min_ratio: Fraction | None = None
    argmin: list[str] = field(default_factory=list)
    argmin_limit: int = 100
    argmin_truncated: bool = False
    failures: list[str] = field(default_factory=list)
    certifier_cross_checked: bool = False
    certified: int = 0
    claim_failures: dict[str, int] = field(default_factory=lambda: {c: 0 for c in CLAIM_NAMES})
    chain_failures: int = 0
    branch_counts: dict[str, int] = field(default_factory=lambda: {"ell0": 0, "ell1": 0, "ell2+": 0})
    branch_examples: dict[str, str] = field(default_factory=dict)
    regular_applicable: int = 0
    regular_min_cube_growth: Fraction | None = None
    regular_min_cube_growth_graph: str | None = None
    regular_min_square_growth: Fraction | None = None
    regular_min_square_growth_graph: str | None = None

    def _offer_min(self, ratio: Fraction, g6: str) -> None:
        if self.min_ratio is None or ratio < self.min_ratio:
            self.min_ratio = ratio
            self.argmin = [g6]
            self.argmin_truncated = False
        elif ratio == self.min_ratio:
            if len(self.argmin) < self.argmin_limit:
                self.argmin.append(g6)
            else:
                self.argmin_truncated = True

    def merge(self, other: "ScanSummary") -> "ScanSummary":
        """Fold ``other`` (a later partition) into this summary."""
        for name in ("examined", "applicable", "passed", "failed", "not_applicable",
                     "certified", "chain_failures", "regular_applicable"):
            setattr(self, name, getattr(self, name) + getattr(other, name))
        self.failures.extend(other.failures)
        self.certifier_cross_checked = self.certifier_cross_checked and other.certifier_cross_checked
        for k, v in other.claim_failures.items():
            self.claim_failures[k] = self.claim_failures.get(k, 0) + v
        for k, v in other.branch_counts.items():
            self.branch_counts[k] = self.branch_counts.get(k, 0) + v
        for k, v in other.branch_examples.items():
            self.branch_examples.setdefault(k, v)
        if other.min_ratio is not None:
            if self.min_ratio is None or other.min_ratio < self.min_ratio:
                self.min_ratio = other.min_ratio
                self.argmin = list(other.argmin)
                self.argmin_truncated = other.argmin_truncated
            elif other.min_ratio == self.min_ratio:
                room = self.argmin_limit - len(self.argmin)
                self.argmin.extend(other.argmin[:room])
                self.argmin_truncated |= other.argmin_truncated or len(other.argmin) > room
        for attr in ("regular_min_cube_growth", "regular_min_square_growth"):
            mine, theirs = getattr(self, attr), getattr(other, attr)
            if theirs is not None and (mine is None or theirs < mine):
                setattr(self, attr, theirs)
                setattr(self, attr + "_graph", getattr(other, attr + "_graph"))
        return self

    def to_json(self) -> dict:
        def frac(x):
            return None if x is None else [x.numerator, x.denominator]

        return {
            "examined": self.examined,
            "applicable": self.applicable,
            "passed": self.passed,
            "failed": self.failed,
            "not_applicable": self.not_applicable,
            "min_ratio_num": None if self.min_ratio is None else self.min_ratio.numerator,
            "min_ratio_den": None if self.min_ratio is None else self.min_ratio.denominator,
            "argmin": self.argmin,
            "argmin_truncated": self.argmin_truncated,
            "failures": self.failures,
            "certifier_cross_checked": self.certifier_cross_checked,
            "certified": self.certified,
            "claim_failures": self.claim_failures,
            "chain_failures": self.chain_failures,
            "branch_counts": self.branch_counts,
            "branch_examples": self.branch_examples,
            "regular_applicable": self.regular_applicable,
            "regular_min_cube_growth": frac(self.regular_min_cube_growth),
            "regular_min_cube_growth_graph": self.regular_min_cube_growth_graph,
            "regular_min_square_growth": frac(self.regular_min_square_growth),
            "regular_min_square_growth_graph": self.regular_min_square_growth_graph,
            "status": "Fail" if self.failed else "Pass",
        }


def ratio_scan(
    source: Iterable[Graph],
    with_certificates: bool = False,
    argmin_limit: int = 100,
) -> ScanSummary:
    """Run the bound check on every graph and track exact minimisers.

    The tracked ratio is ``8 e(G^3) / (7 delta n)`` over applicable graphs.
    With ``with_certificates`` each applicable graph is also certified and
    any disagreement with the direct check raises InconsistencyError.
    """
    s = ScanSummary(argmin_limit=argmin_limit, certifier_cross_checked=with_certificates)
    for g in source:
        s.examined += 1
        rep = bound_report(g)
        degs = [row.bit_count() for row in g.adj]
        regular = rep.e > 0 and min(degs) == max(degs)
        if regular and rep.e < g.n * (g.n - 1) // 2 and rep.diam is not UNREACHABLE:
            sq = sum(b.bit_count() - 1 for b in balls(g, 2)[2]) // 2
            growth2 = Fraction(sq, rep.e)
            if s.regular_min_square_growth is None or growth2 < s.regular_min_square_growth:
                s.regular_min_square_growth = growth2
                s.regular_min_square_growth_graph = emit_graph6(g).decode() if g.n <= 62 else None
        if rep.status is Status.NOT_APPLICABLE:
            s.not_applicable += 1
            continue
        s.applicable += 1
        g6 = emit_graph6(g).decode() if g.n <= 62 else f"<n={g.n}>"
        if rep.status is Status.PASS:
            s.passed += 1
        else:
            s.failed += 1
            s.failures.append(g6)
        s._offer_min(Fraction(rep.lhs_scaled, rep.rhs_scaled), g6)
        if regular:
            s.regular_applicable += 1
            growth = Fraction(rep.e_cube, rep.e)
            if s.regular_min_cube_growth is None or growth < s.regular_min_cube_growth:
                s.regular_min_cube_growth = growth
                s.regular_min_cube_growth_graph = g6

        if with_certificates:
            cert = certify(g)
            s.certified += 1
            for name in cert.claims.failed():
                s.claim_failures[name] += 1
            if not (cert.chain_ok and cert.cs_ok and cert.z_is_doubling_set):
                s.chain_failures += 1
            s.branch_counts[cert.branch] += 1
            s.branch_examples.setdefault(cert.branch, g6)
            if cert.passed != rep.passed:
                raise InconsistencyError(
                    f"{g6}: certificate {'passes' if cert.passed else 'fails'} "
                    f"({cert.failures()}) but bound check reports {rep.status.value}"
                )
    return s


def _scan_range(args) -> ScanSummary:
    n, start, stop, with_certificates, argmin_limit, long_run = args
    return ratio_scan(enumerate_connected(n, start, stop, long_run=long_run),
                      with_certificates, argmin_limit)


def scan_connected(
    n: int,
    with_certificates: bool = False,
    workers: int = 1,
    long_run: bool = False,
    argmin_limit: int = 100,
    chunks: int | None = None,
) -> ScanSummary:
    """Exhaustive scan of all labeled connected graphs on ``n`` vertices."""
    _check_n(n, long_run)
    if workers < 1:
        raise ValueError("worker count must be at least 1")
    total = prefix_count(n)
    parts = chunks or max(1, min(total, 4 * workers))
    bounds = [total * i // parts for i in range(parts + 1)]
    jobs = [(n, bounds[i], bounds[i + 1], with_certificates, argmin_limit, long_run)
            for i in range(parts) if bounds[i] < bounds[i + 1]]
    log.info("scanning n=%d over %d prefix ranges with %d worker(s)", n, len(jobs), workers)
    if workers == 1:
        results = map(_scan_range, jobs)
    else:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(_scan_range, jobs)
    summary = ScanSummary(argmin_limit=argmin_limit, certifier_cross_checked=with_certificates)
    try:
        for part in results:
            summary.merge(part)
    finally:
        if workers != 1:
            pool.shutdown()
    summary.certifier_cross_checked = with_certificates
    return summary
