"""Command-line entry point.

Exit codes: 0 when every check passed (or there was nothing to check),
1 when at least one Fail verdict or conjecture violation was emitted,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Iterable, Sequence, TextIO

from . import __version__
from .bounds import DiameterPredicate, Status, bound_report, cauchy_davenport_check
from .certify import HypothesisError, certify
from .digraph import Reading, conjecture_scan
from .extremal import build_extremal, validate_extremal
from .formats import FormatError, emit_graph6, graph_edge_list, iter_graph6, parse_edge_list, record_to_graph
from .graph import Graph, GraphError, power
from .scan import LONG_RUN_N, MAX_SCAN_N, InconsistencyError, enumerate_connected, ratio_scan, scan_connected

log = logging.getLogger("graphpowers")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _residues(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed connection set {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json", dest="out_format",
                        help="output format (default: json lines)")
    common.add_argument("--input", "-i", metavar="PATH",
                        help="read graphs from PATH instead of standard input")
    common.add_argument("--workers", type=_positive, default=1, help="worker processes for scans")
    common.add_argument("--verbose", "-v", action="store_true")

    p = _Parser(prog="graphpowers", description="Graph power bounds: checks, certificates, scans.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("power", parents=[common], help="emit the k-th power of each input graph")
    s.add_argument("--k", type=_positive, required=True)
    s.add_argument("--emit", choices=("graph6", "edges"), default="graph6")

    sub.add_parser("check", parents=[common], help="check 8 e(G^3) >= 7 delta n for each input graph")
    sub.add_parser("certify", parents=[common], help="emit a proof certificate for each input graph")

    s = sub.add_parser("extremal", parents=[common], help="build or validate the extremal graph G_k")
    s.add_argument("--k", type=_positive, required=True)
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--emit", choices=("graph6", "edges"), nargs="?", const="graph6")
    mode.add_argument("--validate", action="store_true")

    s = sub.add_parser("scan", parents=[common], help="exhaustive or streamed bound scan")
    src = s.add_mutually_exclusive_group(required=True)
    src.add_argument("--n", type=int)
    src.add_argument("--stdin", action="store_true", help="scan graph6 lines from the input")
    s.add_argument("--certify", action="store_true", help="also certify each applicable graph")
    s.add_argument("--long-run", action="store_true", help=f"allow n >= {LONG_RUN_N}")
    s.add_argument("--argmin-limit", type=_positive, default=100)

    s = sub.add_parser("cayley", parents=[common], help="Cauchy-Davenport growth check on Z_p")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--set", type=_residues, required=True, dest="conn_set",
                   help="comma-separated symmetric residues, e.g. 1,6")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--predicate", choices=[x.value for x in DiameterPredicate], default="ge")

    s = sub.add_parser("orient-scan", parents=[common],
                       help="check e(D^2) >= 2 e(D) over balanced orientations")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--reading", choices=[x.value for x in Reading], default="arc")
    s.add_argument("--require-regular", action="store_true",
                   help="only orientations with a common in/out-degree d")
    s.add_argument("--long-run", action="store_true")
    return p


def _read_input(args) -> str:
    if args.input:
        try:
            with open(args.input, encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc.strerror}") from None
    return sys.stdin.read()


def _is_edge_list(text: str) -> bool:
    for line in text.splitlines():
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        return s[0].isdigit() or s.lower().startswith("directed")
    return False


def read_graphs(text: str) -> list[Graph]:
    """Auto-detect an edge list (digits or ``directed`` first) versus graph6 lines."""
    if _is_edge_list(text):
        record = parse_edge_list(text)
        if record.kind == "directed":
            raise FormatError("directed edge lists are not accepted here")
        return [record_to_graph(record)]
    return list(iter_graph6(text.splitlines()))


class _Out:
    def __init__(self, fmt: str, stream: TextIO):
        self.fmt = fmt
        self.stream = stream
        self.color = fmt == "table" and "NO_COLOR" not in os.environ and stream.isatty()

    def json(self, obj) -> None:
        self.stream.write(json.dumps(obj, sort_keys=False) + "\n")

    def status(self, text: str) -> str:
        if not self.color:
            return text
        code = {"Pass": "32", "Fail": "31"}.get(text, "33")
        return f"\x1b[{code}m{text}\x1b[0m"

    def table(self, headers: Sequence[str], rows: Iterable[Sequence], status_col: int | None = None) -> None:
        rows = [[("-" if c is None else str(c)) for c in r] for r in rows]
        widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
        line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
        self.stream.write(line.rstrip() + "\n")
        for r in rows:
            cells = [c.ljust(w) for c, w in zip(r, widths)]
            if status_col is not None:
                cells[status_col] = self.status(r[status_col]) + " " * (widths[status_col] - len(r[status_col]))
            self.stream.write("  ".join(cells).rstrip() + "\n")

    def kv(self, pairs: Iterable[tuple[str, object]]) -> None:
        pairs = list(pairs)
        width = max(len(k) for k, _ in pairs)
        for k, v in pairs:
            self.stream.write(f"{k.ljust(width)}  {'-' if v is None else v}\n")


def _cmd_power(args, out: _Out) -> int:
    for g in read_graphs(_read_input(args)):
        gk = power(g, args.k)
        if args.emit == "edges":
            out.stream.write(graph_edge_list(gk))
        else:
            out.stream.write(emit_graph6(gk).decode() + "\n")
    return EXIT_OK


def _cmd_check(args, out: _Out) -> int:
    reports = [bound_report(g) for g in read_graphs(_read_input(args))]
    if out.fmt == "table":
        out.table(
            ["n", "e", "delta", "diam", "e_cube", "lhs8", "rhs7dn", "status"],
            [[r["n"], r["e"], r["delta"], r["diam"], r["e_cube"], r["lhs8"], r["rhs7dn"], r["status"]]
             for r in (x.to_json() for x in reports)],
            status_col=7,
        )
    else:
        for r in reports:
            out.json(r.to_json())
    return EXIT_FAIL if any(r.status is Status.FAIL for r in reports) else EXIT_OK


def _cmd_certify(args, out: _Out) -> int:
    failed = False
    rows = []
    for g in read_graphs(_read_input(args)):
        g6 = emit_graph6(g).decode() if g.n <= 62 else None
        try:
            cert = certify(g)
        except HypothesisError as exc:
            record = {"graph6": g6, "status": "NotApplicable", "reason": str(exc)}
        else:
            record = {"graph6": g6, **cert.to_json()}
            failed |= not cert.passed
        if out.fmt == "table":
            rows.append([g6, record.get("branch"), record.get("chain_lhs4"), record.get("chain_bound4"),
                         record.get("chain_rhs4"), record["status"]])
        else:
            out.json(record)
    if out.fmt == "table":
        out.table(["graph6", "branch", "lhs4", "bound4", "rhs4", "status"], rows, status_col=5)
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_extremal(args, out: _Out) -> int:
    if not args.validate:
        g = build_extremal(args.k)
        if args.emit == "edges":
            out.stream.write(graph_edge_list(g))
        else:
            out.stream.write(emit_graph6(g).decode() + "\n")
        return EXIT_OK
    report = validate_extremal(args.k)
    data = report.to_json()
    if out.fmt == "table":
        x = report.expected
        out.table(
            ["quantity", "measured", "expected"],
            [
                ["v", report.v, x.v],
                ["degree", data["degree"], x.reg_degree],
                ["e", report.e, x.e],
                ["diameter", report.diameter, x.diameter],
                ["e_cube", report.e_cube, x.e_cube],
                [f"#cube-degree {x.hi_degree}", report.cube_degree_counts.get(x.hi_degree, 0), x.hi_count],
                [f"#cube-degree {x.lo_degree}", report.cube_degree_counts.get(x.lo_degree, 0), x.lo_count],
                ["tightness", f"{report.tightness_num}/{report.tightness_den}", ">1"],
            ],
        )
        out.stream.write(f"status  {out.status(data['status'])}\n")
    else:
        out.json(data)
    return EXIT_OK if report.ok else EXIT_FAIL


def _check_scan_size(n: int, long_run: bool) -> None:
    if n < 1:
        raise UsageError("--n must be positive")
    if n > MAX_SCAN_N:
        raise UsageError(f"n={n} exceeds the exhaustive size gate (max {MAX_SCAN_N}, "
                         f"and n >= {LONG_RUN_N} needs --long-run)")
    if n >= LONG_RUN_N and not long_run:
        raise UsageError(f"n={n} is gated: pass --long-run to enumerate it")


def _cmd_scan(args, out: _Out) -> int:
    if args.stdin:
        summary = ratio_scan(iter_graph6(_read_input(args).splitlines()), args.certify, args.argmin_limit)
    else:
        _check_scan_size(args.n, args.long_run)
        summary = scan_connected(args.n, args.certify, args.workers, args.long_run, args.argmin_limit)
    data = summary.to_json()
    if out.fmt == "table":
        ratio = None if summary.min_ratio is None else f"{summary.min_ratio} (~{float(summary.min_ratio):.4f})"
        out.kv([
            ("examined", summary.examined),
            ("applicable", summary.applicable),
            ("passed", summary.passed),
            ("failed", summary.failed),
            ("min ratio 8e3/(7dn)", ratio),
            ("argmin (first)", summary.argmin[0] if summary.argmin else None),
            ("argmin count", f"{len(summary.argmin)}{'+' if summary.argmin_truncated else ''}"),
            ("certified", summary.certified if args.certify else None),
            ("status", out.status(data["status"])),
        ])
    else:
        out.json(data)
    return EXIT_FAIL if summary.failed else EXIT_OK


def _cmd_cayley(args, out: _Out) -> int:
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    check = cauchy_davenport_check(args.p, args.conn_set, args.k, args.predicate)
    data = check.to_json()
    if out.fmt == "table":
        out.kv([(k, v) for k, v in data.items() if k != "status"] + [("status", out.status(data["status"]))])
    else:
        out.json(data)
    return EXIT_FAIL if check.status is Status.FAIL else EXIT_OK


def _cmd_orient_scan(args, out: _Out) -> int:
    _check_scan_size(args.n, args.long_run)
    summary = conjecture_scan(
        (g for m in range(1, args.n + 1) for g in enumerate_connected(m, long_run=args.long_run)),
        require_regular=args.require_regular,
        reading=args.reading,
    )
    data = summary.to_json()
    if out.fmt == "table":
        ratio = None if summary.min_ratio is None else str(summary.min_ratio)
        out.kv([
            ("reading", summary.reading.value),
            ("graphs examined", summary.graphs_examined),
            ("orientations examined", summary.orientations_examined),
            ("violations", len(summary.violations)),
            ("min ratio e(D^2)/e(D)", ratio),
            ("status", out.status(data["status"])),
        ])
    else:
        out.json(data)
    return EXIT_FAIL if summary.violations else EXIT_OK


COMMANDS = {
    "power": _cmd_power,
    "check": _cmd_check,
    "certify": _cmd_certify,
    "extremal": _cmd_extremal,
    "scan": _cmd_scan,
    "cayley": _cmd_cayley,
    "orient-scan": _cmd_orient_scan,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    out = _Out(args.out_format, stdout or sys.stdout)
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, FormatError, GraphError, ValueError) as exc:
        print(f"graphpowers {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"graphpowers {args.command}: internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_FAIL


def main() -> None:
    sys.exit(run())
