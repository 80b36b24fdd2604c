"""Certify the cube bound on one graph by running its proof decomposition.

The decomposition splits V(G) into the doubling vertices Z (cube-degree at
least 2*delta) and the components X_i of G - Z. Two components are related
when their closed neighbourhoods meet; unions of the resulting classes are
the blocks Y_i. Seven structural claims about this decomposition, plus the
final counting chain, are each checked directly against the graph, so a
passing certificate is evidence that can be audited independently of the
code that built the decomposition.

All counting is done in integers scaled by 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterator

from .bounds import cube_degrees
from .graph import UNREACHABLE, Graph, balls, bits, closed_neighborhood, diameter

__all__ = [
    "CLAIM_NAMES",
    "CertificationError",
    "Certificate",
    "ClaimResults",
    "ClaimVerdict",
    "Decomposition",
    "HypothesisError",
    "certificate_from_json",
    "certify",
    "certify_decomposition",
    "decompose",
    "doubling_set",
    "geodesic3_internal",
    "verify_claims",
]

CLAIM_NAMES = ("c1", "c2", "c3", "c4", "c5", "c6", "c7")


class CertificationError(ValueError):
    """Decomposition does not belong to the graph it is checked against."""


class HypothesisError(CertificationError):
    """Graph is disconnected or has diameter below 3."""


def _members(x: int) -> list[int]:
    return list(bits(x))


def _low(x: int) -> int:
    return (x & -x).bit_length() - 1


def _require_hypotheses(g: Graph) -> None:
    d = diameter(g)
    if d is UNREACHABLE:
        raise HypothesisError("graph is disconnected")
    if d < 3:
        raise HypothesisError(f"graph has diameter {d} < 3")


def doubling_set(g: Graph) -> int:
    """Vertices whose degree in G^3 is at least twice the minimum degree."""
    if diameter(g) is UNREACHABLE:
        raise HypothesisError("graph is disconnected")
    delta = min(row.bit_count() for row in g.adj)
    z = 0
    for v, d3 in enumerate(cube_degrees(g)):
        if d3 >= 2 * delta:
            z |= 1 << v
    return z


def _components_within(g: Graph, allowed: int) -> list[int]:
    adj = g.adj
    out = []
    remaining = allowed
    while remaining:
        reached = frontier = remaining & -remaining
        while frontier:
            grown = reached
            for v in bits(frontier):
                grown |= adj[v] & allowed
            frontier = grown & ~reached
            reached = grown
        out.append(reached)
        remaining &= ~reached
    return out


@dataclass(frozen=True)
class Decomposition:
    n: int
    delta: int
    Z: int
    X_blocks: tuple[int, ...]
    related: tuple[int, ...]
    classes: tuple[tuple[int, ...], ...]
    Y_blocks: tuple[int, ...]

    @property
    def ell(self) -> int:
        return len(self.Y_blocks)

    @property
    def y_sizes(self) -> list[int]:
        return [b.bit_count() for b in self.Y_blocks]

    @property
    def y(self) -> int:
        return sum(self.y_sizes)

    @property
    def z(self) -> int:
        return self.Z.bit_count()

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "delta": self.delta,
            "Z": _members(self.Z),
            "X_blocks": [_members(b) for b in self.X_blocks],
            "related": [[j for j in bits(r)] for r in self.related],
            "classes": [list(c) for c in self.classes],
            "Y_blocks": [_members(b) for b in self.Y_blocks],
            "ell": self.ell,
            "y_sizes": self.y_sizes,
            "y": self.y,
            "z": self.z,
        }


def decompose(g: Graph, z_override: int | None = None) -> Decomposition:
    """Build Z, the X-blocks, the touching relation and the Y-blocks.

    ``z_override`` replaces the computed doubling set; it exists so tests can
    feed deliberately corrupted decompositions to the claim checkers.

    The relation is not closed transitively: classes are the connected
    components of the relation graph, and any intransitivity is reported
    by claim c4 when the decomposition is verified.
    """
    _require_hypotheses(g)
    delta = min(row.bit_count() for row in g.adj)
    z = doubling_set(g) if z_override is None else z_override
    blocks = _components_within(g, g.full & ~z)
    nbhd = [closed_neighborhood(g, b) for b in blocks]
    m = len(blocks)
    related = []
    for i in range(m):
        r = 0
        for j in range(m):
            if nbhd[i] & nbhd[j]:
                r |= 1 << j
        related.append(r)

    classes = []
    seen = 0
    for i in range(m):
        if seen >> i & 1:
            continue
        reached = frontier = 1 << i
        while frontier:
            grown = reached
            for j in bits(frontier):
                grown |= related[j]
            frontier = grown & ~reached
            reached = grown
        seen |= reached
        classes.append(tuple(bits(reached)))

    y_blocks = []
    for cls in classes:
        union = 0
        for i in cls:
            union |= blocks[i]
        y_blocks.append(union)
    return Decomposition(g.n, delta, z, tuple(blocks), tuple(related), tuple(classes), tuple(y_blocks))


@dataclass(frozen=True)
class ClaimVerdict:
    name: str
    passed: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out: dict[str, Any] = {"claim": self.name, "status": "Pass" if self.passed else "Fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass(frozen=True)
class ClaimResults:
    verdicts: tuple[ClaimVerdict, ...]

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def __getitem__(self, name: str) -> ClaimVerdict:
        for v in self.verdicts:
            if v.name == name:
                return v
        raise KeyError(name)

    def failed(self) -> list[str]:
        return [v.name for v in self.verdicts if not v.passed]


def _check_consistency(g: Graph, d: Decomposition) -> None:
    if d.n != g.n:
        raise CertificationError(f"decomposition is for n={d.n}, graph has n={g.n}")
    delta = min(row.bit_count() for row in g.adj)
    if d.delta != delta:
        raise CertificationError(f"decomposition records delta={d.delta}, graph has {delta}")
    if d.Z & ~g.full:
        raise CertificationError("Z contains vertices outside the graph")
    expected = _components_within(g, g.full & ~d.Z)
    if sorted(expected) != sorted(d.X_blocks):
        raise CertificationError("X_blocks are not the components of G - Z")
    m = len(d.X_blocks)
    if len(d.related) != m:
        raise CertificationError("relation size does not match X_blocks")
    nbhd = [closed_neighborhood(g, b) for b in d.X_blocks]
    for i in range(m):
        for j in range(m):
            if bool(nbhd[i] & nbhd[j]) != bool(d.related[i] >> j & 1):
                raise CertificationError(f"relation entry ({i}, {j}) disagrees with the graph")
    flat = sorted(i for c in d.classes for i in c)
    if flat != list(range(m)):
        raise CertificationError("classes do not partition the X-block indices")
    if len(d.Y_blocks) != len(d.classes):
        raise CertificationError("one Y-block per class is required")
    for cls, yb in zip(d.classes, d.Y_blocks):
        union = 0
        for i in cls:
            union |= d.X_blocks[i]
        if union != yb:
            raise CertificationError("Y-block is not the union of its class")


def verify_claims(g: Graph, d: Decomposition) -> ClaimResults:
    """Check each of the seven claims directly against ``g``."""
    _check_consistency(g, d)
    table = balls(g, 3)
    b1, b2, b3 = table[1], table[2], table[3]
    n = g.n
    Z = d.Z
    delta = d.delta
    return ClaimResults((
        _claim1(n, b1, b2, b3, Z),
        _claim2(d, b2),
        _claim3(d, b2),
        _claim4(d),
        _claim5(g, d, b2),
        _claim6(g, d, b2, b3, delta),
        _claim7(g, d, delta),
    ))


def _geodesic3(n, b1, b2, b3) -> Iterator[tuple[int, int, int]]:
    # Internal vertices of geodesics u..u' of length 3 sit at distance 1 from
    # one end and 2 from the other; the union covers both orientations.
    for u in range(n):
        far = b3[u] & ~b2[u] & ~((1 << (u + 1)) - 1)
        s1u = b1[u] & ~(1 << u)
        s2u = b2[u] & ~b1[u]
        for u2 in bits(far):
            s1 = b1[u2] & ~(1 << u2)
            s2 = b2[u2] & ~b1[u2]
            yield u, u2, (s1u & s2) | (s2u & s1)


def geodesic3_internal(g: Graph) -> int:
    """Vertices that are internal to some geodesic path of length 3."""
    table = balls(g, 3)
    out = 0
    for _, _, internal in _geodesic3(g.n, table[1], table[2], table[3]):
        out |= internal
    return out


def _claim1(n, b1, b2, b3, Z) -> ClaimVerdict:
    for u, u2, internal in _geodesic3(n, b1, b2, b3):
        bad = internal & ~Z
        if bad:
            return ClaimVerdict("c1", False, {"u": u, "u2": u2, "w": _low(bad)})
    return ClaimVerdict("c1", True)


def _claim2(d: Decomposition, b2) -> ClaimVerdict:
    for i, block in enumerate(d.X_blocks):
        first = _low(block)
        ref = b2[first]
        for v in bits(block):
            if b2[v] != ref:
                return ClaimVerdict("c2", False, {"block": i, "v": first, "v2": v})
    return ClaimVerdict("c2", True)


def _claim3(d: Decomposition, b2) -> ClaimVerdict:
    blocks = d.X_blocks
    for i, block in enumerate(blocks):
        first = _low(block)
        ref = b2[first]
        for j in bits(d.related[i] & ~((1 << (i + 1)) - 1)):
            for v in bits(blocks[j]):
                if b2[v] != ref:
                    return ClaimVerdict("c3", False, {"blocks": [i, j], "v": first, "v2": v})
    return ClaimVerdict("c3", True)


def _claim4(d: Decomposition) -> ClaimVerdict:
    rel = d.related
    m = len(rel)
    for i in range(m):
        if not rel[i] >> i & 1:
            return ClaimVerdict("c4", False, {"reflexivity": i})
        for j in bits(rel[i]):
            if not rel[j] >> i & 1:
                return ClaimVerdict("c4", False, {"symmetry": [i, j]})
    for i in range(m):
        for j in bits(rel[i]):
            missing = rel[j] & ~rel[i]
            if missing:
                return ClaimVerdict("c4", False, {"triple": [i, j, _low(missing)]})
    return ClaimVerdict("c4", True)


def _claim5(g: Graph, d: Decomposition, b2) -> ClaimVerdict:
    for i, yb in enumerate(d.Y_blocks):
        ny = closed_neighborhood(g, yb)
        for v in bits(ny):
            far = ny & ~b2[v]
            if far:
                return ClaimVerdict("c5", False, {"Y": i, "v": v, "v2": _low(far)})
    return ClaimVerdict("c5", True)


def _claim6(g: Graph, d: Decomposition, b2, b3, delta) -> ClaimVerdict:
    for i, yb in enumerate(d.Y_blocks):
        need = delta + yb.bit_count()
        outer = 0
        for v in bits(yb):
            d3 = b3[v].bit_count() - 1
            if d3 < need:
                return ClaimVerdict("c6", False, {"Y": i, "v": v, "cube_degree": d3, "needed": need})
            outer |= b2[v]
        if not outer & ~closed_neighborhood(g, yb):
            return ClaimVerdict("c6", False, {"Y": i, "no_vertex_at_distance_2": True})
    return ClaimVerdict("c6", True)


def _claim7(g: Graph, d: Decomposition, delta) -> ClaimVerdict:
    nbhds = [closed_neighborhood(g, yb) for yb in d.Y_blocks]
    for i, ny in enumerate(nbhds):
        for j in range(i + 1, len(nbhds)):
            shared = ny & nbhds[j]
            if shared:
                return ClaimVerdict("c7", False, {"Y": [i, j], "shared": _low(shared)})
    for i, (ny, yb) in enumerate(zip(nbhds, d.Y_blocks)):
        touching = (ny & d.Z).bit_count()
        if touching < delta - yb.bit_count():
            return ClaimVerdict(
                "c7", False, {"Y": i, "touching_Z": touching, "needed": delta - yb.bit_count()}
            )
    bound = delta * d.ell - d.y
    if d.z < bound:
        return ClaimVerdict("c7", False, {"z": d.z, "bound": bound})
    return ClaimVerdict("c7", True)


@dataclass(frozen=True)
class Certificate:
    decomposition: Decomposition
    claims: ClaimResults
    z_is_doubling_set: bool
    cube_degree_sum: int
    chain_lhs4: int
    chain_bound4: int
    chain_rhs4: int
    sum_y_squared: int
    cs_ok: bool
    chain_steps: dict

    @property
    def branch(self) -> str:
        ell = self.decomposition.ell
        return "ell0" if ell == 0 else ("ell1" if ell == 1 else "ell2+")

    @property
    def chain_ok(self) -> bool:
        return all(self.chain_steps.values())

    @property
    def passed(self) -> bool:
        return self.claims.all_passed and self.z_is_doubling_set and self.cs_ok and self.chain_ok

    def failures(self) -> list[str]:
        out = self.claims.failed()
        if not self.z_is_doubling_set:
            out.append("z_definition")
        if not self.cs_ok:
            out.append("cauchy_schwarz")
        out.extend(k for k, ok in self.chain_steps.items() if not ok)
        return out

    def to_json(self) -> dict:
        return {
            "status": "Pass" if self.passed else "Fail",
            "decomposition": self.decomposition.to_json(),
            "claims": [v.to_json() for v in self.claims.verdicts],
            "z_is_doubling_set": self.z_is_doubling_set,
            "cube_degree_sum": self.cube_degree_sum,
            "chain_lhs4": self.chain_lhs4,
            "chain_bound4": self.chain_bound4,
            "chain_rhs4": self.chain_rhs4,
            "sum_y_squared": self.sum_y_squared,
            "cs_ok": self.cs_ok,
            "chain_steps": dict(self.chain_steps),
            "branch": self.branch,
        }


def certify_decomposition(g: Graph, d: Decomposition) -> Certificate:
    """Verify claims and the scaled counting chain for a given decomposition."""
    claims = verify_claims(g, d)
    cube = cube_degrees(g)
    delta = d.delta
    z, y, ell = d.z, d.y, d.ell
    ys = d.y_sizes
    sum_y2 = sum(s * s for s in ys)

    z_exact = d.Z == doubling_set(g)
    lhs4 = 4 * sum(cube)
    bound4 = 4 * (2 * delta * z + sum(s * (delta + s) for s in ys))
    rhs4 = 7 * delta * g.n
    excess4 = delta * z - 3 * delta * y + 4 * sum_y2

    steps = {
        "lhs_ge_bound": lhs4 >= bound4,
        "partition_n_eq_z_plus_y": g.n == z + y,
        "expand_identity": bound4 - rhs4 == excess4,
    }
    if ell == 0:
        cs_ok = True
        steps["degenerate_nonneg"] = delta * z >= 0 and excess4 == delta * z
    else:
        cs_ok = ell * sum_y2 >= y * y
        # Multiply through by ell: c7 replaces z, Cauchy-Schwarz replaces
        # the sum of squares, and what remains is a perfect square.
        relaxed = ell * delta * (delta * ell - y) - 3 * ell * delta * y + 4 * y * y
        steps["relax_with_c7_and_cs"] = ell * excess4 >= relaxed
        steps["perfect_square"] = relaxed == (delta * ell - 2 * y) ** 2
    steps["bound_ge_rhs"] = bound4 >= rhs4

    return Certificate(
        decomposition=d,
        claims=claims,
        z_is_doubling_set=z_exact,
        cube_degree_sum=sum(cube),
        chain_lhs4=lhs4,
        chain_bound4=bound4,
        chain_rhs4=rhs4,
        sum_y_squared=sum_y2,
        cs_ok=cs_ok,
        chain_steps=steps,
    )


def certify(g: Graph) -> Certificate:
    return certify_decomposition(g, decompose(g))


def _mask(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def certificate_from_json(payload: dict) -> Decomposition:
    """Rebuild the decomposition recorded in a serialized certificate.

    Pair with :func:`certify_decomposition` to re-validate a stored
    certificate without recomputing Z or the blocks.
    """
    d = payload.get("decomposition", payload)
    related = tuple(_mask(r) for r in d["related"])
    return Decomposition(
        n=d["n"],
        delta=d["delta"],
        Z=_mask(d["Z"]),
        X_blocks=tuple(_mask(b) for b in d["X_blocks"]),
        related=related,
        classes=tuple(tuple(c) for c in d["classes"]),
        Y_blocks=tuple(_mask(b) for b in d["Y_blocks"]),
    )
