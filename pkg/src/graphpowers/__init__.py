"""Graph powers: k-th powers, the cube edge bound, its certificates and scans."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    CayleyCheck,
    DiameterPredicate,
    Status,
    bound_report,
    cauchy_davenport_check,
    cayley_graph,
)
from .certify import Certificate, Decomposition, HypothesisError, certify, decompose, doubling_set, verify_claims
from .digraph import Digraph, balanced_degree, conjecture_scan, digraph_square, eulerian_orientations
from .extremal import build_extremal, extremal_expectations, validate_extremal
from .formats import emit_graph6, parse_edge_list, parse_graph6
from .graph import (
    UNREACHABLE,
    Graph,
    GraphError,
    ball,
    build_graph,
    closed_neighborhood,
    degree_stats,
    diameter,
    distances_from,
    is_connected,
    power,
)
from .scan import ScanSummary, enumerate_connected, ratio_scan, scan_connected
