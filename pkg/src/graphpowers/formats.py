"""graph6 and plain edge-list readers/writers.

graph6 support is limited to the single-byte header (n <= 62). Directed
graphs only travel as edge lists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Literal

from .graph import Graph, GraphError, _trusted, bits, build_graph

__all__ = [
    "FormatError",
    "GRAPH6_MAX_N",
    "TextGraphRecord",
    "emit_edge_list",
    "emit_graph6",
    "graph_edge_list",
    "iter_graph6",
    "parse_edge_list",
    "parse_graph6",
    "record_to_graph",
]

GRAPH6_MAX_N = 62


class FormatError(ValueError):
    pass


def parse_graph6(line: bytes | str) -> Graph:
    if isinstance(line, str):
        line = line.encode("ascii", errors="replace")
    line = line.rstrip(b"\r\n")
    if line.startswith(b">>graph6<<"):
        line = line[len(b">>graph6<<"):]
    if not line:
        raise FormatError("empty graph6 record")
    for i, b in enumerate(line):
        if not 63 <= b <= 126:
            raise FormatError(f"byte {b} at offset {i} outside 63..126")
    if line[0] == 126:
        raise FormatError("multi-byte graph6 size header is not supported (n > 62)")
    n = line[0] - 63
    if n < 1:
        raise FormatError("graph6 record declares zero vertices")
    nbits = n * (n - 1) // 2
    body = line[1:]
    expected = -(-nbits // 6)
    if len(body) != expected:
        raise FormatError(f"graph6 record for n={n} needs {expected} body bytes, got {len(body)}")

    value = 0
    for b in body:
        value = value << 6 | (b - 63)
    pad = expected * 6 - nbits
    if value & ((1 << pad) - 1):
        raise FormatError("nonzero graph6 padding bits")
    value >>= pad

    # value now holds the triangle bits with (0,1) as the most significant.
    rows = [0] * n
    pos = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if value >> pos & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            pos -= 1
    return _trusted(n, tuple(rows))


def emit_graph6(g: Graph) -> bytes:
    n = g.n
    if n > GRAPH6_MAX_N:
        raise FormatError(f"graph6 emission supports n <= {GRAPH6_MAX_N}, got {n}")
    adj = g.adj
    out = bytearray([n + 63])
    acc = 0
    width = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            acc = acc << 1 | (row >> i & 1)
            width += 1
            if width == 6:
                out.append(acc + 63)
                acc = width = 0
    if width:
        out.append((acc << (6 - width)) + 63)
    return bytes(out)


def iter_graph6(lines: Iterable[bytes | str]) -> Iterator[Graph]:
    """Parse one graph per line, skipping blanks and ``#`` comments."""
    for raw in lines:
        text = raw.strip() if isinstance(raw, str) else raw.strip().decode("ascii", errors="replace")
        if not text or text.startswith("#"):
            continue
        yield parse_graph6(text)


@dataclass(frozen=True)
class TextGraphRecord:
    kind: Literal["undirected", "directed"]
    n: int
    pairs: tuple[tuple[int, int], ...]


def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if stripped and not stripped.startswith("#"):
            yield lineno, stripped


def parse_edge_list(text: str) -> TextGraphRecord:
    """Parse ``[directed] n`` followed by one ``u v`` pair per line."""
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise FormatError("empty edge list") from None
    tokens = header.split()
    kind: Literal["undirected", "directed"] = "undirected"
    if tokens and tokens[0].lower() == "directed":
        kind = "directed"
        tokens = tokens[1:]
    if len(tokens) != 1:
        raise FormatError(f"line {lineno}: header must be '[directed] n', got {header!r}")
    n = _parse_int(tokens[0], lineno)
    if n < 1:
        raise FormatError(f"line {lineno}: vertex count must be positive")

    pairs = []
    seen = set()
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != 2:
            raise FormatError(f"line {lineno}: expected two integers, got {line!r}")
        u, v = (_parse_int(t, lineno) for t in tokens)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError(f"line {lineno}: vertex out of range 0..{n - 1} in ({u}, {v})")
        if u == v:
            raise FormatError(f"line {lineno}: self-loop at {u}")
        if kind == "directed":
            if (u, v) in seen:
                raise FormatError(f"line {lineno}: duplicate arc ({u}, {v})")
            seen.add((u, v))
        pairs.append((u, v))
    return TextGraphRecord(kind, n, tuple(pairs))


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: malformed integer {token!r}") from None


def record_to_graph(record: TextGraphRecord) -> Graph:
    if record.kind != "undirected":
        raise FormatError("expected an undirected edge list")
    try:
        return build_graph(record.n, record.pairs)
    except GraphError as exc:
        raise FormatError(str(exc)) from None


def emit_edge_list(n: int, pairs: Iterable[tuple[int, int]], directed: bool = False) -> str:
    header = f"directed {n}" if directed else str(n)
    return "\n".join([header, *(f"{u} {v}" for u, v in pairs)]) + "\n"


def graph_edge_list(g: Graph) -> str:
    return emit_edge_list(g.n, ((u, v) for u in range(g.n) for v in bits(g.adj[u]) if u < v))
