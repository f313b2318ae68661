"""Run the full analysis over graph streams and aggregate the results.

Proven inequalities that fail are collected as violations (a numerical bug
if it ever happens).  Failures of the open inequality eps <= sqrt(var) are
collected separately as conjecture counterexamples; they are findings.
"""
from __future__ import annotations

import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .exceptions import ConvergenceError, GraphFormatError, NotConnectedError
from .graph import Graph, enumerate_connected, from_graph6, to_graph6
from .irregularity import EPS_TOL, IrregularityReport, Violation, build_report
from .s2_bounds import S2Estimate, all_s2_estimates, universal_vertices
from .spectral import DEFAULT_CONFIG, SolverConfig, SpectralResult, perron

__all__ = [
    "GraphRecord",
    "ScanSummary",
    "analyze",
    "scan_enumerated",
    "scan_graph6_stream",
    "merge",
    "CSV_COLUMNS",
    "csv_row",
    "parallel_scan_enumerated",
    "parallel_scan_graph6",
    "worker_count",
]

SCHEMA_VERSION = 1
HISTOGRAM_BINS = 20
SOUNDNESS_TOL = 1e-8
CONE_IDENTITY_TOL = 1e-8

CSV_COLUMNS = (
    "graph6", "n", "m", "rho", "epsilon", "s", "var", "S2", "nik_lower", "nik_upper",
    "main_bound", "best_s2_method", "best_s2_value", "conjecture_margin", "tightness",
)


@dataclass(frozen=True, eq=False)
class GraphRecord:
    graph6: str
    graph: Graph
    spectral: SpectralResult
    report: IrregularityReport
    s2_estimate: S2Estimate
    estimates: tuple[S2Estimate, ...]
    conjecture_margin: float
    tightness: float
    violations: tuple[Violation, ...]

    @property
    def conjecture_holds(self) -> bool:
        return self.report.epsilon <= self.report.sqrt_variance + EPS_TOL


def analyze(g: Graph, cfg: SolverConfig = DEFAULT_CONFIG) -> GraphRecord:
    """Perron solve, bound ladder, S^2 estimates and soundness checks for one graph."""
    sr = perron(g, cfg)
    report = build_report(g, sr)
    estimates = all_s2_estimates(g, sr, cfg)
    best = max(estimates, key=lambda e: e.value)
    s2 = report.S_squared

    bad = list(report.violations)
    for est in estimates:
        if est.value > s2 + SOUNDNESS_TOL:
            bad.append(Violation(f"s2_sound:{est.method}", est.value, s2))
    for u in universal_vertices(g):
        if g.n >= 2:
            predicted = (sr.rho + 1.0) * float(sr.v[u])
            if abs(predicted - sr.S) > CONE_IDENTITY_TOL:
                bad.append(Violation("cone_identity", predicted, sr.S))
            break

    return GraphRecord(
        graph6=to_graph6(g),
        graph=g,
        spectral=sr,
        report=report,
        s2_estimate=best,
        estimates=tuple(estimates),
        conjecture_margin=s2 - g.n / 2,
        tightness=report.tightness,
        violations=tuple(bad),
    )


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    return f"{x:.12g}"


def csv_row(rec: GraphRecord) -> list[str]:
    r = rec.report
    vals = (
        rec.graph6, r.n, r.m, r.rho, r.epsilon, r.s_moment, r.variance, r.S_squared,
        r.nikiforov_lower, r.nikiforov_upper, r.main_bound, rec.s2_estimate.method,
        rec.s2_estimate.value, rec.conjecture_margin, rec.tightness,
    )
    return [v if isinstance(v, str) else _fmt(v) for v in vals]


def _pick_min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _pick_max(a, b):
    # ties resolve to the lexicographically smaller graph6
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b, key=lambda t: (-t[0], t[1]))


@dataclass
class ScanSummary:
    config: dict
    total: int = 0
    skipped_disconnected: int = 0
    nonconverged: int = 0
    errors: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    conjecture_counterexamples: list = field(default_factory=list)
    s2_below_half: list = field(default_factory=list)
    min_conjecture_margin: tuple | None = None
    min_s2_ratio: tuple | None = None
    max_eps_minus_sqrt_var: tuple | None = None
    min_tightness: tuple | None = None
    max_tightness: tuple | None = None
    tightness_histogram: list = field(default_factory=lambda: [0] * HISTOGRAM_BINS)
    best_method_counts: dict = field(default_factory=dict)

    @classmethod
    def empty(cls, cfg: SolverConfig = DEFAULT_CONFIG) -> "ScanSummary":
        return cls(config=_config_dict(cfg))

    @property
    def has_violations(self) -> bool:
        return bool(self.violations)

    def add(self, rec: GraphRecord) -> None:
        r = rec.report
        g6 = rec.graph6
        self.total += 1
        for v in rec.violations:
            self.violations.append((g6, v.inequality, v.lhs, v.rhs))
        if not rec.conjecture_holds:
            self.conjecture_counterexamples.append(g6)
        if rec.conjecture_margin < 0:
            self.s2_below_half.append(g6)
        self.min_conjecture_margin = _pick_min(self.min_conjecture_margin, (rec.conjecture_margin, g6))
        self.min_s2_ratio = _pick_min(self.min_s2_ratio, (r.S_squared / r.n, g6))
        self.max_eps_minus_sqrt_var = _pick_max(
            self.max_eps_minus_sqrt_var, (r.epsilon - r.sqrt_variance, g6)
        )
        self.min_tightness = _pick_min(self.min_tightness, (rec.tightness, g6))
        self.max_tightness = _pick_max(self.max_tightness, (rec.tightness, g6))
        t = min(max(rec.tightness, 0.0), 1.0)
        self.tightness_histogram[min(int(t * HISTOGRAM_BINS), HISTOGRAM_BINS - 1)] += 1
        m = rec.s2_estimate.method
        self.best_method_counts[m] = self.best_method_counts.get(m, 0) + 1
        self._normalize()

    def add_error(self, line: int, message: str) -> None:
        self.errors.append((line, message))
        self._normalize()

    def _normalize(self):
        self.errors.sort()
        self.violations.sort()
        self.conjecture_counterexamples.sort()
        self.s2_below_half.sort()

    def to_dict(self) -> dict:
        def pair(t):
            return None if t is None else {"value": t[0], "graph6": t[1]}

        return {
            "schema": SCHEMA_VERSION,
            "config": dict(self.config),
            "total": self.total,
            "skipped_disconnected": self.skipped_disconnected,
            "nonconverged": self.nonconverged,
            "errors": [{"line": ln, "message": msg} for ln, msg in self.errors],
            "violations": [
                {"graph6": g, "inequality": i, "lhs": lhs, "rhs": rhs}
                for g, i, lhs, rhs in self.violations
            ],
            "conjecture_counterexamples": list(self.conjecture_counterexamples),
            "s2_below_half": list(self.s2_below_half),
            "min_conjecture_margin": pair(self.min_conjecture_margin),
            "min_s2_ratio": pair(self.min_s2_ratio),
            "max_eps_minus_sqrt_var": pair(self.max_eps_minus_sqrt_var),
            "min_tightness": pair(self.min_tightness),
            "max_tightness": pair(self.max_tightness),
            "tightness_histogram": list(self.tightness_histogram),
            "best_method_counts": dict(sorted(self.best_method_counts.items())),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ScanSummary":
        if data.get("schema") != SCHEMA_VERSION:
            raise ValueError(f"unsupported summary schema {data.get('schema')!r}")

        def pair(d):
            return None if d is None else (d["value"], d["graph6"])

        out = cls(
            config=dict(data["config"]),
            total=data["total"],
            skipped_disconnected=data["skipped_disconnected"],
            nonconverged=data["nonconverged"],
            errors=[(e["line"], e["message"]) for e in data["errors"]],
            violations=[(v["graph6"], v["inequality"], v["lhs"], v["rhs"]) for v in data["violations"]],
            conjecture_counterexamples=list(data["conjecture_counterexamples"]),
            s2_below_half=list(data["s2_below_half"]),
            min_conjecture_margin=pair(data["min_conjecture_margin"]),
            min_s2_ratio=pair(data["min_s2_ratio"]),
            max_eps_minus_sqrt_var=pair(data["max_eps_minus_sqrt_var"]),
            min_tightness=pair(data["min_tightness"]),
            max_tightness=pair(data["max_tightness"]),
            tightness_histogram=list(data["tightness_histogram"]),
            best_method_counts=dict(data["best_method_counts"]),
        )
        out._normalize()
        return out

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=indent)

    def canonical_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


def _config_dict(cfg: SolverConfig) -> dict:
    return {"tolerance": cfg.tolerance, "max_iterations": cfg.max_iterations, "shift": cfg.shift}


def merge(a: ScanSummary, b: ScanSummary) -> ScanSummary:
    """Fieldwise combination of two summaries produced with the same config."""
    if a.config != b.config:
        raise ValueError(f"cannot merge summaries with different configs: {a.config} vs {b.config}")
    counts = dict(a.best_method_counts)
    for k, v in b.best_method_counts.items():
        counts[k] = counts.get(k, 0) + v
    out = ScanSummary(
        config=dict(a.config),
        total=a.total + b.total,
        skipped_disconnected=a.skipped_disconnected + b.skipped_disconnected,
        nonconverged=a.nonconverged + b.nonconverged,
        errors=a.errors + b.errors,
        violations=a.violations + b.violations,
        conjecture_counterexamples=a.conjecture_counterexamples + b.conjecture_counterexamples,
        s2_below_half=a.s2_below_half + b.s2_below_half,
        min_conjecture_margin=_pick_min(a.min_conjecture_margin, b.min_conjecture_margin),
        min_s2_ratio=_pick_min(a.min_s2_ratio, b.min_s2_ratio),
        max_eps_minus_sqrt_var=_pick_max(a.max_eps_minus_sqrt_var, b.max_eps_minus_sqrt_var),
        min_tightness=_pick_min(a.min_tightness, b.min_tightness),
        max_tightness=_pick_max(a.max_tightness, b.max_tightness),
        tightness_histogram=[x + y for x, y in zip(a.tightness_histogram, b.tightness_histogram)],
        best_method_counts=counts,
    )
    out._normalize()
    return out


RecordHook = Callable[[GraphRecord], None]


def _scan_graph(summary: ScanSummary, g: Graph, cfg: SolverConfig, line: int | None,
                on_record: RecordHook | None) -> None:
    try:
        rec = analyze(g, cfg)
    except ConvergenceError as exc:
        summary.nonconverged += 1
        summary.add_error(line if line is not None else 0, f"{to_graph6(g)}: {exc}")
        return
    summary.add(rec)
    if on_record is not None:
        on_record(rec)


def scan_enumerated(
    n: int,
    cfg: SolverConfig = DEFAULT_CONFIG,
    partition: tuple[int, int] | None = None,
    on_record: RecordHook | None = None,
) -> ScanSummary:
    """Analyze every connected graph on ``n`` vertices up to isomorphism."""
    summary = ScanSummary.empty(cfg)
    for g in enumerate_connected(n, dedup=True, partition=partition):
        _scan_graph(summary, g, cfg, None, on_record)
    return summary


def scan_graph6_stream(
    lines: Iterable[str],
    cfg: SolverConfig = DEFAULT_CONFIG,
    skip_disconnected: bool = False,
    on_record: RecordHook | None = None,
    first_line: int = 1,
) -> ScanSummary:
    """Analyze one graph6 string per line; blank lines are ignored.

    Parse failures and (unless skipped) disconnected graphs become entries
    in ``errors`` keyed by line number; the scan carries on.
    """
    summary = ScanSummary.empty(cfg)
    for lineno, raw in enumerate(lines, start=first_line):
        text = raw.strip()
        if not text:
            continue
        try:
            g = from_graph6(text)
        except GraphFormatError as exc:
            summary.add_error(lineno, f"parse error: {exc}")
            continue
        try:
            _scan_graph(summary, g, cfg, lineno, on_record)
        except NotConnectedError:
            if skip_disconnected:
                summary.skipped_disconnected += 1
            else:
                summary.add_error(lineno, f"{text}: graph is disconnected")
    return summary


# -- process-pool helpers -----------------------------------------------------

def worker_count(default: int = 1) -> int:
    raw = os.environ.get("SPECIRR_THREADS")
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default


def _enum_task(args):
    n, cfg, part, rows = args
    out = [] if rows else None
    summary = scan_enumerated(n, cfg, part, on_record=(lambda r: out.append(csv_row(r))) if rows else None)
    return summary, out


def _stream_task(args):
    lines, first, cfg, skip, rows = args
    out = [] if rows else None
    summary = scan_graph6_stream(
        lines, cfg, skip, on_record=(lambda r: out.append(csv_row(r))) if rows else None, first_line=first
    )
    return summary, out


def _run_tasks(fn, tasks, workers):
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _combine(results, cfg):
    summary = ScanSummary.empty(cfg)
    rows = []
    for s, r in results:
        summary = merge(summary, s)
        if r:
            rows.extend(r)
    return summary, rows


def parallel_scan_enumerated(n: int, cfg: SolverConfig = DEFAULT_CONFIG, workers: int = 1,
                             collect_rows: bool = False, parts: int | None = None):
    """Partitioned :func:`scan_enumerated`; returns ``(summary, csv_rows)``.

    Output is independent of ``workers`` and ``parts``.
    """
    parts = parts or max(1, 4 * workers)
    tasks = [(n, cfg, (i, parts), collect_rows) for i in range(parts)]
    return _combine(_run_tasks(_enum_task, tasks, workers), cfg)


def parallel_scan_graph6(lines: list[str], cfg: SolverConfig = DEFAULT_CONFIG,
                         skip_disconnected: bool = False, workers: int = 1,
                         collect_rows: bool = False, chunk: int = 2000):
    """Chunked :func:`scan_graph6_stream` over an in-memory list of lines."""
    tasks = [
        (lines[i:i + chunk], i + 1, cfg, skip_disconnected, collect_rows)
        for i in range(0, max(len(lines), 1), chunk)
    ]
    return _combine(_run_tasks(_stream_task, tasks, workers), cfg)
