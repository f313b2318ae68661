"""Degree-moment irregularity measures and the bound ladder around rho - 2m/n."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exceptions import BoundViolation
from .graph import Graph
from .spectral import SpectralResult, a_posteriori_bound, angle_cos, residual

__all__ = [
    "Violation",
    "IrregularityReport",
    "s_moment",
    "s_moment_exact",
    "variance",
    "variance_exact",
    "epsilon",
    "nikiforov_bounds",
    "main_bound",
    "main_bound_rayleigh",
    "popoviciu_bound",
    "build_report",
    "EPS_TOL",
]

# slack for comparisons involving the Perron value
EPS_TOL = 1e-9
S2_TOL = 1e-9


@dataclass(frozen=True)
class Violation:
    """``lhs <= rhs`` was expected to hold for ``inequality``."""

    inequality: str
    lhs: float
    rhs: float


def s_moment_exact(g: Graph) -> Fraction:
    mean = Fraction(2 * g.m, g.n)
    return sum((abs(d - mean) for d in g.degrees), Fraction(0))


def variance_exact(g: Graph) -> Fraction:
    mean = Fraction(2 * g.m, g.n)
    return sum(((d - mean) ** 2 for d in g.degrees), Fraction(0)) / g.n


def s_moment(g: Graph) -> float:
    """Sum of absolute deviations of the degrees from the mean degree."""
    return float(s_moment_exact(g))


def variance(g: Graph) -> float:
    return float(variance_exact(g))


def _check(g: Graph, sr: SpectralResult):
    if len(sr.v) != g.n:
        raise ValueError(f"spectral result is for {len(sr.v)} vertices, graph has {g.n}")


def epsilon(g: Graph, sr: SpectralResult) -> float:
    _check(g, sr)
    return sr.rho - 2 * g.m / g.n


def nikiforov_bounds(g: Graph, sr: SpectralResult) -> tuple[float, float]:
    """``(var / (2 sqrt(2m)), sqrt(s))``; both 0 for an edgeless graph."""
    _check(g, sr)
    if g.m == 0:
        return 0.0, 0.0
    return variance(g) / (2.0 * math.sqrt(2.0 * g.m)), math.sqrt(s_moment(g))


def _irregularity_factor(n: int, s_squared: float) -> float:
    # n/S^2 - 1 is >= 0 in exact arithmetic; rounding can push it just below
    return math.sqrt(max(0.0, n / s_squared - 1.0))


def main_bound(g: Graph, sr: SpectralResult) -> float:
    """``sqrt(var) * sqrt(n / S^2 - 1)``."""
    _check(g, sr)
    return math.sqrt(variance(g)) * _irregularity_factor(g.n, sr.S * sr.S)


def main_bound_rayleigh(g: Graph, sr: SpectralResult) -> float:
    """Same bound, assembled from the residual and angle of the all-ones probe."""
    _check(g, sr)
    ones = np.ones(g.n)
    ratio = float(np.linalg.norm(residual(g, ones))) / math.sqrt(g.n)
    return a_posteriori_bound(ratio, angle_cos(sr.v, ones))


def popoviciu_bound(g: Graph) -> float:
    return (g.max_degree - g.min_degree) ** 2 / 4.0


@dataclass(frozen=True)
class IrregularityReport:
    n: int
    m: int
    avg_degree: float
    rho: float
    epsilon: float
    s_moment: float
    variance: float
    S_squared: float
    nikiforov_lower: float
    nikiforov_upper: float
    main_bound: float
    popoviciu: float
    sqrt_variance: float
    violations: tuple[Violation, ...] = field(default=())

    @property
    def tightness(self) -> float:
        """epsilon / main_bound, with 0/0 read as 1."""
        if self.main_bound < 1e-12:
            return 1.0
        return self.epsilon / self.main_bound


def build_report(g: Graph, sr: SpectralResult, strict: bool = False) -> IrregularityReport:
    """Evaluate every measure and bound for ``g`` and check the proven inequalities.

    Failures are collected in ``violations``; with ``strict`` they raise
    :class:`BoundViolation` instead.
    """
    _check(g, sr)
    s_ex = s_moment_exact(g)
    var_ex = variance_exact(g)
    eps = epsilon(g, sr)
    lower, upper = nikiforov_bounds(g, sr)
    main = main_bound(g, sr)
    pop = Fraction((g.max_degree - g.min_degree) ** 2, 4)
    s2 = sr.S * sr.S

    bad = []

    def expect(name, lhs, rhs, tol):
        if not lhs <= rhs + tol:
            bad.append(Violation(name, float(lhs), float(rhs)))

    expect("collatz_sinogowitz", 0.0, eps, EPS_TOL)
    if g.is_regular():
        expect("regular_equality", eps, 0.0, EPS_TOL)
    else:
        # strict inequality for non-regular graphs
        if not eps > EPS_TOL:
            bad.append(Violation("irregular_strict", EPS_TOL, eps))
    expect("nikiforov_lower", lower, eps, EPS_TOL)
    expect("nikiforov_upper", eps, upper, EPS_TOL)
    expect("residual_bound", eps, main, EPS_TOL)
    expect("moment_lower", s_ex * s_ex / (g.n * g.n), var_ex, 0)
    expect("moment_upper", var_ex, s_ex, 0)
    expect("popoviciu", var_ex, pop, 0)
    expect("cauchy_schwarz", s2, g.n, S2_TOL)

    if strict and bad:
        raise BoundViolation(bad)
    return IrregularityReport(
        n=g.n,
        m=g.m,
        avg_degree=2 * g.m / g.n,
        rho=sr.rho,
        epsilon=eps,
        s_moment=float(s_ex),
        variance=float(var_ex),
        S_squared=s2,
        nikiforov_lower=lower,
        nikiforov_upper=upper,
        main_bound=main,
        popoviciu=float(pop),
        sqrt_variance=math.sqrt(float(var_ex)),
        violations=tuple(bad),
    )
