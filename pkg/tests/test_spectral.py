import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from specirr.exceptions import ConvergenceError, NotConnectedError
from specirr.graph import (
    complete,
    complete_bipartite,
    cycle,
    empty,
    enumerate_connected,
    from_edge_list,
    from_edges,
    harmonic_tk,
    is_connected,
    path,
)
from specirr.spectral import (
    SolverConfig,
    a_posteriori_bound,
    a_priori_bound,
    angle_cos,
    lambda_min,
    perron,
    rayleigh_data,
    rayleigh_quotient,
    residual,
    spectral_radius,
)

from oracles import jacobi_eigh, oracle_perron


def random_connected(rng, n, p=0.5):
    while True:
        g = from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])
        if is_connected(g):
            return g


CENSUS6 = [g for n in range(1, 7) for g in enumerate_connected(n)]


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(tolerance=0)
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        SolverConfig(shift=-1)


def test_biclique_rho():
    assert perron(complete_bipartite(2, 3)).rho == pytest.approx(2.449490, abs=1e-6)
    for p, q in [(1, 1), (1, 4), (2, 3), (3, 7), (5, 5)]:
        assert abs(perron(complete_bipartite(p, q)).rho - math.sqrt(p * q)) <= 1e-9


@pytest.mark.parametrize("k", [3, 4, 5, 10, 20])
def test_harmonic_rho_is_three(k):
    assert abs(perron(harmonic_tk(k)).rho - 3.0) <= 1e-9


@pytest.mark.parametrize("g, d", [(cycle(7), 2), (complete(6), 5), (complete_bipartite(4, 4), 4), (complete(1), 0)])
def test_regular_graphs(g, d):
    sr = perron(g)
    assert abs(sr.rho - d) <= 1e-12
    assert np.allclose(sr.v, 1 / math.sqrt(g.n), atol=1e-12)
    assert abs(sr.S_squared - g.n) <= 1e-9


def test_against_jacobi_oracle():
    rng = np.random.default_rng(11)
    for _ in range(60):
        g = random_connected(rng, int(rng.integers(2, 11)))
        sr = perron(g)
        rho, x = oracle_perron(g.adjacency())
        assert abs(sr.rho - rho) <= 1e-8
        assert math.acos(min(1.0, float(sr.v @ x))) <= 1e-6


@pytest.mark.parametrize("g", CENSUS6, ids=lambda g: g.__repr__())
def test_result_invariants(g):
    cfg = SolverConfig()
    sr = perron(g, cfg)
    assert abs(np.linalg.norm(sr.v) - 1.0) <= 1e-12
    assert np.all(sr.v > 0)
    assert sr.residual_norm <= cfg.tolerance
    assert 1.0 - 1e-12 <= sr.S_squared <= g.n + 1e-9
    assert (abs(sr.S_squared - g.n) <= 1e-9) == g.is_regular()
    avg = 2 * g.m / g.n
    assert sr.rho >= avg - 1e-9
    assert (sr.rho - avg <= 1e-9) == g.is_regular()
    assert g.min_degree - 1e-9 <= sr.rho <= g.max_degree + 1e-9


def test_deterministic():
    g = from_edge_list("7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n0 3\n2 5")
    a, b = perron(g), perron(g)
    assert a.rho == b.rho and a.S == b.S and a.iterations == b.iterations
    assert a.v.tobytes() == b.v.tobytes()


def test_disconnected_rejected():
    with pytest.raises(NotConnectedError):
        perron(from_edge_list("4\n0 1\n2 3"))


def test_nonconvergence_reported():
    with pytest.raises(ConvergenceError) as info:
        perron(path(30), SolverConfig(max_iterations=5))
    assert info.value.iterations == 5 and info.value.residual > 1e-12


def test_spectral_radius_over_components():
    g = from_edge_list("7\n0 1\n2 3\n3 4\n4 2")
    assert abs(spectral_radius(g) - 2.0) <= 1e-12
    assert spectral_radius(empty(3)) == 0.0


# -- lambda_min ---------------------------------------------------------------

@pytest.mark.parametrize("p, q", [(1, 1), (2, 3), (1, 6), (4, 5)])
def test_lambda_min_biclique(p, q):
    g = complete_bipartite(p, q)
    w, _ = jacobi_eigh(g.adjacency())
    lm = lambda_min(g, perron(g))
    assert abs(lm - w[0]) <= 1e-9
    assert abs(lm + math.sqrt(p * q)) <= 1e-9


@pytest.mark.parametrize("n", [2, 3, 5, 8])
def test_lambda_min_complete(n):
    g = complete(n)
    assert abs(lambda_min(g, perron(g)) + 1.0) <= 1e-9


def test_lambda_min_single_vertex():
    g = complete(1)
    assert lambda_min(g, perron(g)) == 0.0


def test_lambda_min_against_oracle():
    rng = np.random.default_rng(5)
    for _ in range(60):
        g = random_connected(rng, int(rng.integers(2, 11)))
        w, _ = jacobi_eigh(g.adjacency())
        assert abs(lambda_min(g, perron(g)) - w[0]) <= 1e-8


# -- Rayleigh machinery -------------------------------------------------------

def test_rayleigh_quotient_examples():
    g = complete_bipartite(2, 3)
    ones = np.ones(g.n)
    assert rayleigh_quotient(g, ones) == pytest.approx(2 * g.m / g.n, abs=1e-15)
    sr = perron(g)
    assert abs(rayleigh_quotient(g, sr.v) - sr.rho) <= 1e-12
    y = np.arange(1.0, 6.0)
    assert rayleigh_quotient(g, y) == pytest.approx(rayleigh_quotient(g, 2 * y), rel=1e-15)
    with pytest.raises(ValueError):
        rayleigh_quotient(g, np.zeros(5))


def test_residual_examples():
    g = complete_bipartite(2, 3)
    assert np.allclose(residual(g, np.ones(5)), [0.6, 0.6, -0.4, -0.4, -0.4], atol=1e-14)
    sr = perron(g)
    assert np.linalg.norm(residual(g, sr.v)) <= 1e-12


@given(st.lists(st.floats(-10, 10), min_size=7, max_size=7).filter(lambda y: any(abs(t) > 1e-3 for t in y)))
@settings(max_examples=100)
def test_residual_orthogonal_to_probe(y):
    g = from_edge_list("7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n0 6\n1 5")
    y = np.array(y)
    r = residual(g, y)
    assert abs(float(r @ y)) <= 1e-10 * max(1.0, float(y @ y))


def test_angle_cos_examples():
    sr = perron(complete_bipartite(2, 3))
    assert angle_cos(sr.v, np.ones(5)) == pytest.approx(sr.S / math.sqrt(5), abs=1e-15)
    assert angle_cos([1, 2, 3], [1, 2, 3]) == 1.0
    assert angle_cos([1, 0], [0, 1]) == 0.0
    assert angle_cos([1, 0], [-1, 0]) == 1.0
    with pytest.raises(ValueError):
        angle_cos([0, 0], [1, 0])


def test_bound_formulas_degenerate_cases():
    assert a_priori_bound(3.0, -2.0, 1.0) == 0.0
    assert a_priori_bound(2.0, 2.0, 0.3) == 0.0
    assert a_posteriori_bound(0.0, 0.4) == 0.0
    assert a_posteriori_bound(1.7, 1.0) == 0.0
    with pytest.raises(ValueError):
        a_posteriori_bound(1.0, 0.0)


def test_a_priori_on_biclique():
    g = complete_bipartite(2, 3)
    sr = perron(g)
    rd = rayleigh_data(g, np.ones(5), sr)
    gap = sr.rho - 2.4
    assert gap == pytest.approx(0.04949, abs=1e-5)
    # both bounds are attained on bicliques (spectrum is +-rho and zeros)
    assert rd.a_priori() == pytest.approx(gap, abs=1e-12)
    assert rd.a_posteriori() == pytest.approx(gap, abs=1e-12)


@pytest.mark.parametrize("g", [g for g in CENSUS6 if g.n > 1], ids=repr)
def test_rayleigh_bounds_hold_for_probes(g):
    sr = perron(g)
    lm = lambda_min(g, sr)
    rng = np.random.default_rng(g.n * 1000 + g.m)
    probes = [np.ones(g.n)] + [rng.uniform(0.01, 1.0, g.n) for _ in range(100)]
    for y in probes:
        rd = rayleigh_data(g, y, sr, lm)
        err = abs(sr.rho - rd.quotient)
        assert err <= rd.a_priori() + 1e-9
        assert err <= rd.a_posteriori() + 1e-9
