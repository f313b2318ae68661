"""Perron solves and Rayleigh-quotient error bounds for adjacency matrices."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .exceptions import ConvergenceError, NotConnectedError
from .graph import Graph, components, induced_subgraph, is_connected

__all__ = [
    "SolverConfig",
    "SpectralResult",
    "RayleighData",
    "perron",
    "spectral_radius",
    "lambda_min",
    "rayleigh_quotient",
    "residual",
    "angle_cos",
    "a_priori_bound",
    "a_posteriori_bound",
    "rayleigh_data",
]

_GOLDEN_ANGLE = math.pi * (3.0 - math.sqrt(5.0))


@dataclass(frozen=True)
class SolverConfig:
    tolerance: float = 1e-12
    max_iterations: int = 100_000
    shift: float = 1.0

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if not self.shift >= 0:
            raise ValueError("shift must be nonnegative")


DEFAULT_CONFIG = SolverConfig()


@dataclass(frozen=True, eq=False)
class SpectralResult:
    """Perron value ``rho``, positive unit Perron vector ``v`` and ``S = sum(v)``."""

    rho: float
    v: np.ndarray
    S: float
    iterations: int
    residual_norm: float

    @property
    def S_squared(self) -> float:
        return self.S * self.S


@lru_cache(maxsize=512)
def _adjacency(g: Graph) -> np.ndarray:
    a = g.adjacency().astype(np.float64)
    a.setflags(write=False)
    return a


def perron(g: Graph, cfg: SolverConfig = DEFAULT_CONFIG) -> SpectralResult:
    """Power iteration on ``A + shift*I`` started from the all-ones vector.

    Stops once ``||A v - rho v|| <= cfg.tolerance`` with ``rho`` the Rayleigh
    quotient of the current unit iterate.
    """
    if not is_connected(g):
        raise NotConnectedError(f"graph with {len(components(g))} components has no unique Perron vector")
    rho, v, iters, res, ok = _kernels.perron_power(
        g.adjacency(), cfg.shift, cfg.tolerance, cfg.max_iterations
    )
    if not ok:
        raise ConvergenceError("Perron iteration did not converge", res, iters)
    v = np.asarray(v, dtype=np.float64)
    v.setflags(write=False)
    return SpectralResult(float(rho), v, float(v.sum()), int(iters), float(res))


def spectral_radius(g: Graph, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Largest adjacency eigenvalue; disconnected graphs take the max over components."""
    best = 0.0
    for comp in components(g):
        if len(comp) > 1:
            sub = g if len(comp) == g.n else induced_subgraph(g, comp)
            best = max(best, perron(sub, cfg).rho)
    return best


def lambda_min(g: Graph, ref: SpectralResult, cfg: SolverConfig = DEFAULT_CONFIG) -> float:
    """Smallest adjacency eigenvalue via power iteration on ``rho*I - A``.

    Iterates are kept orthogonal to the Perron vector of ``ref``.
    """
    if g.n == 1:
        return 0.0
    start = np.cos(1.0 + _GOLDEN_ANGLE * np.arange(g.n))
    lam, iters, res, ok = _kernels.lambda_min_power(
        g.adjacency(), ref.rho, ref.v, start, cfg.tolerance, cfg.max_iterations
    )
    if not ok:
        raise ConvergenceError("lambda_min iteration did not converge", res, iters)
    return float(lam)


def _as_vector(g: Graph, y) -> np.ndarray:
    y = np.asarray(y, dtype=np.float64)
    if y.shape != (g.n,):
        raise ValueError(f"vector of length {g.n} expected, got shape {y.shape}")
    if not np.any(y):
        raise ValueError("zero vector has no Rayleigh quotient")
    return y


def rayleigh_quotient(g: Graph, y) -> float:
    y = _as_vector(g, y)
    return float(y @ (_adjacency(g) @ y)) / float(y @ y)


def residual(g: Graph, y) -> np.ndarray:
    """``A y - rq(y) y``; orthogonal to ``y`` by construction."""
    y = _as_vector(g, y)
    ay = _adjacency(g) @ y
    return ay - (float(y @ ay) / float(y @ y)) * y


def angle_cos(x, y) -> float:
    """Cosine of the (unsigned) angle between two nonzero vectors."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    nx_, ny_ = float(np.linalg.norm(x)), float(np.linalg.norm(y))
    if nx_ == 0.0 or ny_ == 0.0:
        raise ValueError("angle with a zero vector is undefined")
    return min(1.0, abs(float(x @ y)) / (nx_ * ny_))


def a_priori_bound(lambda_max: float, lambda_min: float, angle_cos: float) -> float:
    """(lambda_max - lambda_min) * sin^2 of the angle."""
    return (lambda_max - lambda_min) * max(0.0, 1.0 - angle_cos * angle_cos)


def a_posteriori_bound(residual_ratio: float, angle_cos: float) -> float:
    """``||r(y)|| / ||y||`` times the tangent of the angle."""
    if angle_cos <= 0.0:
        raise ValueError("probe is orthogonal to the eigenvector; tangent undefined")
    return residual_ratio * math.sqrt(max(0.0, 1.0 - angle_cos * angle_cos)) / angle_cos


@dataclass(frozen=True, eq=False)
class RayleighData:
    quotient: float
    residual: np.ndarray
    angle_cos: float
    lambda_max: float
    lambda_min: float
    probe_norm: float

    @property
    def residual_ratio(self) -> float:
        return float(np.linalg.norm(self.residual)) / self.probe_norm

    def a_priori(self) -> float:
        return a_priori_bound(self.lambda_max, self.lambda_min, self.angle_cos)

    def a_posteriori(self) -> float:
        return a_posteriori_bound(self.residual_ratio, self.angle_cos)


def rayleigh_data(
    g: Graph, y, sr: SpectralResult, lam_min: float | None = None, cfg: SolverConfig = DEFAULT_CONFIG
) -> RayleighData:
    """Everything needed to bound ``|rho - rq(y)|`` for the probe ``y``."""
    y = _as_vector(g, y)
    if lam_min is None:
        lam_min = lambda_min(g, sr, cfg)
    return RayleighData(
        quotient=rayleigh_quotient(g, y),
        residual=residual(g, y),
        angle_cos=angle_cos(sr.v, y),
        lambda_max=sr.rho,
        lambda_min=lam_min,
        probe_norm=float(np.linalg.norm(y)),
    )
