"""Undirected simple graphs stored as rows of integer bitmasks.

Vertex sets are plain ``int`` bitmasks: bit ``v`` set means ``v`` is a member.
Every operation here is a pure function of an immutable :class:`Graph`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence, Union

__all__ = [
    "MAX_VERTICES",
    "UNREACHABLE",
    "Distance",
    "Graph",
    "GraphError",
    "Unreachable",
    "ball",
    "balls",
    "bits",
    "build_graph",
    "closed_neighborhood",
    "degree_stats",
    "diameter",
    "distances_from",
    "from_rows",
    "is_connected",
    "power",
    "vertex_set",
]

# Rejected explicitly above this; a multiple of the 64-bit word width.
MAX_VERTICES = 4096


class GraphError(ValueError):
    """Invalid graph input (bad vertex, self-loop, oversized n)."""


class Unreachable:
    """Distance to a vertex in another component.

    Deliberately not an int: comparing it with a number raises TypeError.
    """

    __slots__ = ()
    _instance: "Unreachable | None" = None

    def __new__(cls) -> "Unreachable":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Unreachable"

    def __reduce__(self):
        return (Unreachable, ())


UNREACHABLE = Unreachable()
Distance = Union[int, Unreachable]


def bits(x: int) -> Iterator[int]:
    """Yield the indices of set bits of ``x`` in ascending order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def vertex_set(vertices: Iterable[int]) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is the neighbourhood of ``v`` as a bitmask. Instances are
    immutable and validated on construction, so they can be shared freely
    between workers.
    """

    n: int
    adj: tuple[int, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        n = self.n
        if not 1 <= n <= MAX_VERTICES:
            raise GraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != n:
            raise GraphError(f"expected {n} adjacency rows, got {len(self.adj)}")
        full = (1 << n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {v} has bits outside 0..{n - 1}")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {u}")

    def __getstate__(self):
        return (self.n, self.adj)

    def __setstate__(self, state) -> None:
        object.__setattr__(self, "n", state[0])
        object.__setattr__(self, "adj", state[1])
        object.__setattr__(self, "_cache", {})

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))


def from_rows(rows: Sequence[int]) -> Graph:
    return Graph(len(rows), tuple(rows))


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from unordered pairs, deduplicating repeats."""
    if not 1 <= n <= MAX_VERTICES:
        raise GraphError(f"vertex count {n} outside 1..{MAX_VERTICES}")
    rows = [0] * n
    for pair in edges:
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge {pair!r} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"edge {pair!r} is a self-loop")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def degree_stats(g: Graph) -> tuple[int, list[int], int]:
    """Return ``(min_degree, degrees, edge_count)``."""
    degrees = [row.bit_count() for row in g.adj]
    return min(degrees), degrees, sum(degrees) // 2


def closed_neighborhood(g: Graph, x: int) -> int:
    """``x`` together with every vertex adjacent to something in ``x``."""
    out = x
    adj = g.adj
    for v in bits(x):
        out |= adj[v]
    return out


def ball(g: Graph, x: int, r: int) -> int:
    """Vertices within distance ``r`` of the set ``x``."""
    if r < 0:
        raise ValueError("radius must be nonnegative")
    adj = g.adj
    reached = frontier = x
    for _ in range(r):
        grown = reached
        for v in bits(frontier):
            grown |= adj[v]
        frontier = grown & ~reached
        if not frontier:
            break
        reached = grown
    return reached


def balls(g: Graph, r: int) -> list[list[int]]:
    """``table[k][v]`` is the ball of radius ``k`` around ``v``, for k = 0..r.

    Memoised per graph; the certifier and the bound checker share it.
    """
    cache = g._cache
    table = cache.get("balls")
    if table is not None and len(table) > r:
        return table
    adj = g.adj
    n = g.n
    table = [[1 << v for v in range(n)], [adj[v] | 1 << v for v in range(n)]]
    for k in range(2, r + 1):
        prev, prev2 = table[k - 1], table[k - 2]
        layer = []
        for v in range(n):
            grown = prev[v]
            f = grown & ~prev2[v]
            while f:
                low = f & -f
                grown |= adj[low.bit_length() - 1]
                f ^= low
            layer.append(grown)
        table.append(layer)
    cache["balls"] = table
    return table


def distances_from(g: Graph, v: int) -> list[Distance]:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    dist: list[Distance] = [UNREACHABLE] * g.n
    adj = g.adj
    reached = frontier = 1 << v
    level = 0
    while frontier:
        for u in bits(frontier):
            dist[u] = level
        grown = reached
        for u in bits(frontier):
            grown |= adj[u]
        frontier = grown & ~reached
        reached = grown
        level += 1
    return dist


def is_connected(g: Graph) -> bool:
    return ball(g, 1, g.n) == g.full


def _eccentricity(g: Graph, v: int) -> Distance:
    adj = g.adj
    full = g.full
    reached = frontier = 1 << v
    level = 0
    while reached != full:
        grown = reached
        for u in bits(frontier):
            grown |= adj[u]
        frontier = grown & ~reached
        if not frontier:
            return UNREACHABLE
        reached = grown
        level += 1
    return level


def diameter(g: Graph) -> Distance:
    """Largest pairwise distance, or UNREACHABLE when disconnected."""
    cached = g._cache.get("diameter")
    if cached is not None:
        return cached
    table = g._cache.get("balls")
    if table is not None:
        full = g.full
        for r, layer in enumerate(table):
            if all(b == full for b in layer):
                g._cache["diameter"] = r
                return r
    best = 0
    for v in range(g.n):
        ecc = _eccentricity(g, v)
        if ecc is UNREACHABLE:
            best = UNREACHABLE
            break
        best = max(best, ecc)
    g._cache["diameter"] = best
    return best


def power(g: Graph, k: int) -> Graph:
    """The k-th power: join every pair at distance 1..k."""
    if k < 1:
        raise ValueError("power exponent must be positive")
    if k == 1:
        return g
    return Graph(g.n, tuple(ball(g, 1 << v, k) & ~(1 << v) for v in range(g.n)))


def _trusted(n: int, adj: tuple[int, ...]) -> Graph:
    # Hot-path constructor for generated graphs that are symmetric by construction.
    g = object.__new__(Graph)
    object.__setattr__(g, "n", n)
    object.__setattr__(g, "adj", adj)
    object.__setattr__(g, "_cache", {})
    return g
