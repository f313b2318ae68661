"""Lower bounds on S^2, the squared 1-norm of the unit Perron vector.

Three routes: the clique number (Wilf), exact evaluation for harmonic
graphs, and an entry bound at a dominating vertex for cones.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import _kernels
from .graph import Graph, delete_vertex
from .spectral import DEFAULT_CONFIG, SolverConfig, SpectralResult, spectral_radius

__all__ = [
    "S2Estimate",
    "METHODS",
    "MAX_CLIQUE_N",
    "clique_number",
    "wilf_s2",
    "zagreb_first",
    "is_harmonic",
    "harmonic_s2",
    "hofmeister_lower",
    "universal_vertices",
    "golberg_entry_bound",
    "cone_S_exact",
    "cone_S_from_result",
    "cone_s2_bound",
    "cone_s2_parametric",
    "all_s2_estimates",
    "best_s2_lower",
    "s2_bound_table",
]

METHODS = ("wilf", "harmonic_exact", "cone", "cone_parametric", "trivial_one")
MAX_CLIQUE_N = 64


@dataclass(frozen=True)
class S2Estimate:
    value: float
    method: str
    inputs: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown S^2 method {self.method!r}")


def clique_number(g: Graph) -> int:
    if g.n > MAX_CLIQUE_N:
        raise ValueError(f"clique search is capped at n = {MAX_CLIQUE_N}")
    return int(_kernels.max_clique(g.rows, g.n))


def wilf_s2(omega: int, rho: float) -> S2Estimate:
    """S^2 >= omega/(omega-1) * rho."""
    if omega < 2:
        raise ValueError("Wilf's bound needs an edge (omega >= 2)")
    if not rho > 0:
        raise ValueError("Wilf's bound needs rho > 0")
    return S2Estimate(omega / (omega - 1) * rho, "wilf", {"omega": omega, "rho": rho})


def zagreb_first(g: Graph) -> int:
    return sum(d * d for d in g.degrees)


def is_harmonic(g: Graph) -> float | None:
    """Return lambda if A d = lambda d, else None.

    The check is exact in integer arithmetic.  Edgeless graphs are not
    reported as harmonic since their degree vector is zero.
    """
    d = g.degrees
    ad = [sum(d[j] for j in g.neighbors(i)) for i in range(g.n)]
    ref = next((i for i in range(g.n) if d[i] > 0), None)
    if ref is None:
        return None
    if any(ad[j] * d[ref] != ad[ref] * d[j] for j in range(g.n)):
        return None
    return float(Fraction(ad[ref], d[ref]))


def harmonic_s2(g: Graph) -> S2Estimate:
    """Exact S^2 = 4m^2 / Z for a harmonic graph, where v is parallel to d."""
    lam = is_harmonic(g)
    if lam is None:
        raise ValueError("graph is not harmonic")
    z = zagreb_first(g)
    return S2Estimate(4 * g.m * g.m / z, "harmonic_exact", {"zagreb": z, "m": g.m, "lambda": lam})


def hofmeister_lower(g: Graph) -> float:
    """rho >= sqrt(Z / n)."""
    return math.sqrt(zagreb_first(g) / g.n)


def universal_vertices(g: Graph) -> list[int]:
    return [i for i, d in enumerate(g.degrees) if d == g.n - 1]


def golberg_entry_bound(g: Graph, i: int, rho: float, rho_Hi: float) -> float:
    """Lower bound on v_i^2 from the spectral gap left by deleting vertex i."""
    d = g.degrees[i]
    if d < 1:
        raise ValueError(f"vertex {i} is isolated")
    gap = rho - rho_Hi
    if not gap > 0:
        raise ValueError(f"need rho > rho_H, got rho={rho}, rho_H={rho_Hi}")
    return 1.0 / (1.0 + d / (gap * gap))


def cone_S_exact(rho: float, v1: float) -> float:
    """S = (rho + 1) v_1 when vertex 1 dominates."""
    return (rho + 1.0) * v1


def cone_S_from_result(g: Graph, sr: SpectralResult) -> float:
    if g.degrees[0] != g.n - 1:
        raise ValueError("vertex 0 is not universal")
    return cone_S_exact(sr.rho, float(sr.v[0]))


def _cone_formula(a: float, b: float, n: int) -> float:
    gap2 = (a - b) ** 2
    return (a + 1.0) ** 2 * gap2 / (gap2 + n - 1)


def cone_s2_bound(rho: float, rho_H: float, n: int) -> S2Estimate:
    """S^2 >= (rho+1)^2 (rho-rho_H)^2 / ((rho-rho_H)^2 + n - 1) for H v K_1 on n vertices."""
    if n < 2:
        raise ValueError("cone bound needs n >= 2")
    if not rho > rho_H:
        raise ValueError(f"need rho > rho_H, got rho={rho}, rho_H={rho_H}")
    return S2Estimate(_cone_formula(rho, rho_H, n), "cone", {"rho": rho, "rho_H": rho_H, "n": n})


def cone_s2_parametric(a: float, n: int, b: float | None = None, h: Graph | None = None) -> S2Estimate:
    """Cone bound with ``a <= rho`` and ``b >= rho_H``; ``b`` defaults to the max degree of ``h``."""
    if b is None:
        if h is None:
            raise ValueError("either b or the base graph h is required")
        b = float(h.max_degree)
    if n < 2:
        raise ValueError("cone bound needs n >= 2")
    if not a > b:
        raise ValueError(f"need a > b, got a={a}, b={b}")
    return S2Estimate(_cone_formula(a, b, n), "cone_parametric", {"a": a, "b": b, "n": n})


def all_s2_estimates(
    g: Graph, sr: SpectralResult, cfg: SolverConfig = DEFAULT_CONFIG
) -> list[S2Estimate]:
    """Every applicable estimate, in the order of ``METHODS``.

    The Wilf and cone entries use the true rho from ``sr``; the parametric
    cone entry uses Hofmeister's bound for ``a`` and the max degree of the
    base graph for ``b``.  Falls back to S^2 >= 1 when nothing applies.
    """
    out = []
    if g.m and g.n <= MAX_CLIQUE_N:
        out.append(wilf_s2(clique_number(g), sr.rho))
    if is_harmonic(g) is not None:
        out.append(harmonic_s2(g))
    uni = universal_vertices(g)
    if uni and g.n >= 2:
        h = delete_vertex(g, uni[0])
        rho_h = spectral_radius(h, cfg)
        if sr.rho > rho_h:
            out.append(cone_s2_bound(sr.rho, rho_h, g.n))
        a = hofmeister_lower(g)
        if a > h.max_degree:
            out.append(cone_s2_parametric(a, g.n, h=h))
    if not out:
        out.append(S2Estimate(1.0, "trivial_one"))
    return out


def best_s2_lower(g: Graph, sr: SpectralResult, cfg: SolverConfig = DEFAULT_CONFIG) -> S2Estimate:
    """Largest of :func:`all_s2_estimates`; ties keep the earlier method."""
    best = None
    for est in all_s2_estimates(g, sr, cfg):
        if best is None or est.value > best.value:
            best = est
    return best


def s2_bound_table(g: Graph, sr: SpectralResult, cfg: SolverConfig = DEFAULT_CONFIG) -> list[tuple[str, S2Estimate]]:
    """Labelled S^2 lower bounds for side-by-side comparison with the true S^2.

    Wilf and the cone bound appear twice: once with the true spectral data
    and once instantiated through Hofmeister's bound ``a`` on rho (and the
    max degree of the base graph as ``b`` for the cone).
    """
    rows = []
    a = hofmeister_lower(g)
    if g.m and g.n <= MAX_CLIQUE_N:
        omega = clique_number(g)
        rows.append((f"wilf (omega={omega}, true rho)", wilf_s2(omega, sr.rho)))
        rows.append((f"wilf (omega={omega}, a=Hofmeister {a:.4f})", wilf_s2(omega, a)))
    if is_harmonic(g) is not None:
        rows.append(("harmonic exact 4m^2/Z", harmonic_s2(g)))
    uni = universal_vertices(g)
    if uni and g.n >= 2:
        h = delete_vertex(g, uni[0])
        rho_h = spectral_radius(h, cfg)
        if sr.rho > rho_h:
            rows.append((f"cone (true rho, rho_H={rho_h:.4f})", cone_s2_bound(sr.rho, rho_h, g.n)))
        if a > h.max_degree:
            rows.append(
                (f"cone (a=Hofmeister {a:.4f}, b=max deg H={h.max_degree})", cone_s2_parametric(a, g.n, h=h))
            )
    return rows
