"""Spectral irregularity of graphs.

Computes rho - 2m/n for connected graphs, evaluates the degree-moment
bounds around it (including the Rayleigh-residual bound
sqrt(var) * sqrt(n/S^2 - 1)), bounds S^2 from below, and scans corpora.
"""
from ._kernels import BACKEND
from .conjecture_lab import GraphRecord, ScanSummary, analyze, merge, scan_enumerated, scan_graph6_stream
from .graph import (
    FamilySpec,
    Graph,
    build_family,
    complete,
    complete_bipartite,
    cone,
    cycle,
    delete_vertex,
    enumerate_connected,
    from_edge_list,
    from_graph6,
    harmonic_tk,
    is_connected,
    parse_family,
    path,
    pineapple,
    to_graph6,
)
from .irregularity import IrregularityReport, build_report
from .s2_bounds import S2Estimate, best_s2_lower
from .spectral import SolverConfig, SpectralResult, perron

__version__ = "0.1.0"
