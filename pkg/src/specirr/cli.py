"""Command-line front end: ``specirr {analyze,family,bounds,scan}``.

Exit codes: 0 ok, 1 bad input or I/O failure, 2 disconnected graph,
3 solver did not converge, 4 a proven bound was violated during a scan.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys

from . import _kernels
from .conjecture_lab import (
    CSV_COLUMNS,
    analyze,
    csv_row,
    parallel_scan_enumerated,
    parallel_scan_graph6,
    scan_graph6_stream,
    worker_count,
)
from .exceptions import ConvergenceError, GraphFormatError, NotConnectedError
from .graph import Graph, build_family, from_edge_list, from_graph6, is_connected, to_graph6
from .s2_bounds import hofmeister_lower, s2_bound_table
from .spectral import SolverConfig, perron

log = logging.getLogger("specirr")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_DISCONNECTED = 2
EXIT_NONCONVERGED = 3
EXIT_VIOLATION = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _solver_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--tolerance", type=float, default=1e-12, help="residual-norm stopping threshold")
    p.add_argument("--max-iter", type=int, default=100_000, help="power iteration cap")


def _source_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph6", metavar="STR", help="graph6 literal")
    src.add_argument("--file", metavar="PATH", help="file holding one graph (graph6 or edge list)")
    src.add_argument("--stdin", action="store_true", help="read one graph from stdin")
    src.add_argument("--family", metavar="SPEC", help='family spec, e.g. "cone path 20"')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="specirr", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="all irregularity measures and bounds for one graph")
    _source_args(p)
    _solver_args(p)
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")

    p = sub.add_parser("family", help="print a generated family member as graph6")
    p.add_argument("spec", nargs="+", help='"biclique p q" | "pineapple n q" | "cone <spec>" | "path n" | ...')

    p = sub.add_parser("bounds", help="compare S^2 lower bounds with the true S^2")
    _source_args(p)
    _solver_args(p)
    p.add_argument("--format", choices=("human", "json", "csv"), default="human")

    p = sub.add_parser("scan", help="scan a graph6 corpus or the built-in census")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("corpus", nargs="?", metavar="PATH", help="graph6 file, one graph per line")
    src.add_argument("--file", dest="corpus_file", metavar="PATH", help="same as the positional PATH")
    src.add_argument("--stdin", action="store_true", help="read graph6 lines from stdin")
    src.add_argument("--enumerate", type=int, metavar="N", help="all connected graphs on N <= 7 vertices")
    _solver_args(p)
    p.add_argument("--format", choices=("human", "json", "csv"), default="json")
    p.add_argument("--per-graph", metavar="PATH", help="write one CSV row per graph to PATH")
    p.add_argument("--skip-disconnected", action="store_true", help="count disconnected graphs instead of erroring")
    return parser


def _config(args) -> SolverConfig:
    try:
        return SolverConfig(tolerance=args.tolerance, max_iterations=args.max_iter)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_INPUT) from None


def _parse_single(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise GraphFormatError("no graph in input")
    first = lines[0].split()[0]
    if first.lstrip("-").isdigit():
        return from_edge_list(text)
    if len(lines) > 1:
        raise GraphFormatError(f"expected one graph, found {len(lines)} graph6 lines")
    return from_graph6(lines[0])


def _load_graph(args) -> Graph:
    try:
        if args.graph6 is not None:
            return from_graph6(args.graph6)
        if args.family is not None:
            return build_family(args.family)
        if args.stdin:
            return _parse_single(sys.stdin.read())
        with open(args.file, encoding="ascii") as fh:
            return _parse_single(fh.read())
    except GraphFormatError as exc:
        raise CliError(f"bad input: {exc}", EXIT_INPUT) from None
    except OSError as exc:
        raise CliError(f"cannot read input: {exc}", EXIT_INPUT) from None


def _connected_graph(args) -> Graph:
    g = _load_graph(args)
    if not is_connected(g):
        raise CliError("graph is disconnected; the Perron vector is not unique", EXIT_DISCONNECTED)
    return g


def _record_dict(rec) -> dict:
    r = rec.report
    return {
        "graph6": rec.graph6,
        "n": r.n,
        "m": r.m,
        "rho": r.rho,
        "avg_degree": r.avg_degree,
        "epsilon": r.epsilon,
        "s": r.s_moment,
        "var": r.variance,
        "sqrt_var": r.sqrt_variance,
        "S2": r.S_squared,
        "nik_lower": r.nikiforov_lower,
        "nik_upper": r.nikiforov_upper,
        "main_bound": r.main_bound,
        "popoviciu": r.popoviciu,
        "best_s2": {"method": rec.s2_estimate.method, "value": rec.s2_estimate.value},
        "s2_estimates": [{"method": e.method, "value": e.value} for e in rec.estimates],
        "conjecture_margin": rec.conjecture_margin,
        "conjecture_holds": rec.conjecture_holds,
        "tightness": rec.tightness,
        "iterations": rec.spectral.iterations,
        "residual_norm": rec.spectral.residual_norm,
        "violations": [{"inequality": v.inequality, "lhs": v.lhs, "rhs": v.rhs} for v in rec.violations],
    }


def _render_human(rec) -> str:
    r = rec.report
    sharp = "  [sharp]" if r.epsilon > 1e-12 and abs(rec.tightness - 1.0) <= 1e-6 else ""
    conj = "holds" if rec.conjecture_holds else "FAILS"
    rows = [
        ("graph6", rec.graph6),
        ("vertices n / edges m", f"{r.n} / {r.m}"),
        ("Perron value rho", f"{r.rho:.6f}"),
        ("average degree 2m/n", f"{r.avg_degree:.6f}"),
        ("irregularity eps = rho - 2m/n", f"{r.epsilon:.6f}"),
        ("degree deviation sum s", f"{r.s_moment:.6f}"),
        ("degree variance var", f"{r.variance:.6f}"),
        ("S^2 (Perron vector 1-norm squared)", f"{r.S_squared:.6f}"),
        ("Nikiforov lower var/(2 sqrt(2m))", f"{r.nikiforov_lower:.6f}"),
        ("Nikiforov upper sqrt(s)", f"{r.nikiforov_upper:.6f}"),
        ("main bound sqrt(var) sqrt(n/S^2 - 1)", f"{r.main_bound:.6f}{sharp}"),
        ("sqrt(var) (conjectured bound)", f"{r.sqrt_variance:.6f}"),
        ("Popoviciu (Delta - delta)^2/4", f"{r.popoviciu:.6f}"),
        ("best S^2 lower bound", f"{rec.s2_estimate.value:.6f} ({rec.s2_estimate.method})"),
        ("eps <= sqrt(var)", f"{conj} (S^2 - n/2 = {rec.conjecture_margin:.6f})"),
        ("tightness eps / main bound", f"{rec.tightness:.6f}"),
        ("solver", f"{rec.spectral.iterations} iterations, residual {rec.spectral.residual_norm:.2e}"),
    ]
    width = max(len(k) for k, _ in rows)
    out = [f"{k:<{width}}  {v}" for k, v in rows]
    for v in rec.violations:
        out.append(f"VIOLATION {v.inequality}: {v.lhs!r} > {v.rhs!r}")
    return "\n".join(out)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_analyze(args) -> int:
    cfg = _config(args)
    g = _connected_graph(args)
    try:
        rec = analyze(g, cfg)
    except ConvergenceError as exc:
        raise CliError(str(exc), EXIT_NONCONVERGED) from None
    if args.format == "json":
        print(json.dumps(_record_dict(rec), indent=2))
    elif args.format == "csv":
        sys.stdout.write(_csv_text(CSV_COLUMNS, [csv_row(rec)]))
    else:
        print(_render_human(rec))
    return EXIT_OK


def cmd_family(args) -> int:
    try:
        g = build_family(" ".join(args.spec))
    except GraphFormatError as exc:
        raise CliError(f"bad family spec: {exc}", EXIT_INPUT) from None
    print(to_graph6(g))
    return EXIT_OK


def cmd_bounds(args) -> int:
    cfg = _config(args)
    g = _connected_graph(args)
    try:
        sr = perron(g, cfg)
        table = s2_bound_table(g, sr, cfg)
    except ConvergenceError as exc:
        raise CliError(str(exc), EXIT_NONCONVERGED) from None
    s2 = sr.S * sr.S
    rows = [("Hofmeister lower bound on rho", hofmeister_lower(g), None)]
    rows += [(label, est.value, est.value <= s2 + 1e-8) for label, est in table]
    rows.append(("true S^2", s2, None))
    if args.format == "json":
        print(json.dumps(
            {
                "graph6": to_graph6(g),
                "n": g.n,
                "rho": sr.rho,
                "hofmeister": hofmeister_lower(g),
                "S2": s2,
                "bounds": [
                    {"label": label, "method": est.method, "value": est.value, "inputs": dict(est.inputs)}
                    for label, est in table
                ],
            },
            indent=2,
        ))
    elif args.format == "csv":
        sys.stdout.write(_csv_text(
            ("quantity", "value", "sound"),
            [(label, f"{v:.12g}", "" if ok is None else str(ok).lower()) for label, v, ok in rows],
        ))
    else:
        width = max(len(r[0]) for r in rows)
        print(f"{'quantity':<{width}}  {'value':>10}")
        for label, v, ok in rows:
            mark = "" if ok is None else ("  <= S^2" if ok else "  UNSOUND")
            print(f"{label:<{width}}  {v:>10.4f}{mark}")
    return EXIT_OK


def _render_scan_human(summary) -> str:
    d = summary.to_dict()
    lines = [
        f"graphs analysed          {d['total']}",
        f"skipped (disconnected)   {d['skipped_disconnected']}",
        f"not converged            {d['nonconverged']}",
        f"input errors             {len(d['errors'])}",
        f"proven-bound violations  {len(d['violations'])}",
        f"eps > sqrt(var) cases    {len(d['conjecture_counterexamples'])}",
    ]
    for key in ("min_conjecture_margin", "min_s2_ratio", "max_eps_minus_sqrt_var", "min_tightness", "max_tightness"):
        rec = d[key]
        if rec is not None:
            lines.append(f"{key:<24} {rec['value']:.6f}  {rec['graph6']}")
    lines.append("tightness histogram      " + " ".join(map(str, d["tightness_histogram"])))
    return "\n".join(lines)


def cmd_scan(args) -> int:
    cfg = _config(args)
    workers = worker_count()
    want_rows = bool(args.per_graph) or args.format == "csv"
    rows: list = []
    try:
        if args.enumerate is not None:
            if not 1 <= args.enumerate <= 7:
                raise CliError("--enumerate supports 1 <= N <= 7; use a graph6 corpus beyond that", EXIT_INPUT)
            summary, rows = parallel_scan_enumerated(args.enumerate, cfg, workers, want_rows)
        else:
            path = args.corpus or args.corpus_file
            fh = sys.stdin if args.stdin else open(path, encoding="ascii", errors="replace")
            try:
                if workers > 1:
                    summary, rows = parallel_scan_graph6(
                        fh.readlines(), cfg, args.skip_disconnected, workers, want_rows
                    )
                else:
                    hook = (lambda rec: rows.append(csv_row(rec))) if want_rows else None
                    summary = scan_graph6_stream(fh, cfg, args.skip_disconnected, hook)
            finally:
                if fh is not sys.stdin:
                    fh.close()
        if args.per_graph:
            with open(args.per_graph, "w", newline="", encoding="ascii") as out:
                out.write(_csv_text(CSV_COLUMNS, rows))
    except OSError as exc:
        raise CliError(f"I/O failure: {exc}", EXIT_INPUT) from None

    for line, msg in summary.errors:
        log.warning("line %s: %s", line, msg)
    if args.format == "csv" and not args.per_graph:
        sys.stdout.write(_csv_text(CSV_COLUMNS, rows))
    elif args.format == "human":
        print(_render_scan_human(summary))
    else:
        print(summary.to_json())
    return EXIT_VIOLATION if summary.has_violations else EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "family": cmd_family, "bounds": cmd_bounds, "scan": cmd_scan}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    log.info("kernel backend: %s", _kernels.BACKEND)
    try:
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"specirr: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
