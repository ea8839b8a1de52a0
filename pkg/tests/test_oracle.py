import math

import numpy as np
import pytest
from scipy.special import roots_laguerre

from afmspec.errors import ConvergenceError, DomainError, NoBoundState
from afmspec.exponential import exp_exact_critical_l0
from afmspec.oracle import (DimensionlessProblem, SolverConfig, bound_levels, bound_state_count,
                            exact_critical_height, exp_exact_l0_energy, laguerre_nodes, resolve_method, solve_radial,
                            zero_energy_counts)
from afmspec.special import bessel_j0_zero

SHOOT = SolverConfig(method="shooting")


def test_laguerre_nodes():
    assert np.allclose(laguerre_nodes(100), roots_laguerre(100)[0], rtol=1e-12)
    x = laguerre_nodes(400)
    assert np.all(np.diff(x) > 0) and x[0] > 0


def test_config_validation():
    with pytest.raises(DomainError):
        SolverConfig(mesh_size=10)
    with pytest.raises(DomainError):
        SolverConfig(eig_tol=0.0)
    with pytest.raises(DomainError):
        SolverConfig(method="spline")
    with pytest.raises(DomainError):
        DimensionlessProblem(1.0, -2.0)
    with pytest.raises(DomainError):
        DimensionlessProblem(0.0, 0.0)


@pytest.mark.parametrize("n, l", [(0, 0), (1, 0), (0, 1), (2, 2)])
def test_coulomb_sanity(n, l):
    g = 2.0
    res = solve_radial(DimensionlessProblem(g, -1.0, screened=False), n, l)
    assert res.epsilon == pytest.approx(-g * g / (4 * (n + l + 1) ** 2), abs=1e-8)


def test_exponential_g40_levels():
    p = DimensionlessProblem(40.0, 0.0)
    assert solve_radial(p, 0, 0).epsilon == pytest.approx(-17.53, abs=0.005)
    assert solve_radial(p, 1, 0).epsilon == pytest.approx(-6.88, abs=0.005)
    assert solve_radial(p, 0, 3).epsilon == pytest.approx(-1.55, abs=0.005)
    with pytest.raises(NoBoundState):
        solve_radial(p, 4, 0)


def test_yukawa_g30_levels():
    p = DimensionlessProblem(30.0, -1.0)
    assert solve_radial(p, 0, 0).epsilon == pytest.approx(-196.44, abs=0.005)
    assert solve_radial(p, 2, 1).epsilon == pytest.approx(-0.029, abs=0.0005)


@pytest.mark.parametrize("lam, g", [(0.0, 40.0), (-1.0, 30.0), (-1.0, 50.0)])
def test_levels_converged_and_ordered(lam, g):
    levels = bound_levels(DimensionlessProblem(g, lam))
    eps = {}
    for r in levels:
        assert r.residual <= 1e-6
        assert r.epsilon < 0
        assert (not r.converged) or r.residual <= SolverConfig().eig_tol
        eps[(r.n, r.l)] = r.epsilon
    for (n, l), e in eps.items():
        if (n + 1, l) in eps:
            assert eps[(n + 1, l)] > e
        if (n, l + 1) in eps:
            assert eps[(n, l + 1)] > e


@pytest.mark.parametrize("lam, g", [(0.0, 5.0), (0.0, 40.0), (-1.0, 5.0), (-1.0, 40.0)])
def test_mesh_and_shooting_agree(lam, g):
    p = DimensionlessProblem(g, lam)
    mesh = bound_levels(p, SolverConfig(method="mesh"))
    shoot = bound_levels(p, SHOOT)
    assert [(r.n, r.l) for r in mesh] == [(r.n, r.l) for r in shoot]
    for a, b in zip(mesh, shoot):
        assert a.epsilon == pytest.approx(b.epsilon, abs=1e-6)


def test_fractional_lambda_uses_shooting():
    p = DimensionlessProblem(10.0, -1.5)
    assert resolve_method(p, SolverConfig()) == "shooting"
    assert resolve_method(DimensionlessProblem(10.0, -1.0), SolverConfig()) == "mesh"
    res = solve_radial(p, 1, 0)
    assert res.epsilon == pytest.approx(-85.6377, abs=1e-3)
    with pytest.raises(ConvergenceError):
        solve_radial(p, 0, 0, SolverConfig(method="mesh"))


def test_bound_state_count_monotone_in_g():
    gs = np.linspace(0.5, 120.0, 60)
    for lam in (0.0, -1.0):
        for l in (0, 2):
            counts = zero_energy_counts(lam, l, gs)
            assert np.all(np.diff(counts) >= 0)
    with pytest.raises(DomainError):
        bound_state_count(DimensionlessProblem(2.0, -1.0, screened=False), 0)


@pytest.mark.parametrize("lam, n, l, expected", [
    (0.0, 0, 0, 1.446), (0.0, 1, 1, 16.921), (0.0, 3, 3, 94.838),
    (-1.0, 0, 0, 1.680), (-1.0, 1, 2, 34.420),
])
def test_exact_critical_height_examples(lam, n, l, expected):
    assert exact_critical_height(lam, n, l) == pytest.approx(expected, abs=0.0005)


@pytest.mark.parametrize("n", range(5))
def test_critical_heights_match_bessel_zeros(n):
    assert exact_critical_height(0.0, n, 0) == pytest.approx(bessel_j0_zero(n) ** 2 / 4, rel=1e-8)


def test_exact_critical_height_brackets_fractional_lambda():
    g = exact_critical_height(-1.5, 0, 0)
    p_below = DimensionlessProblem(g * 0.999, -1.5)
    p_above = DimensionlessProblem(g * 1.001, -1.5)
    assert bound_state_count(p_below, 0) == 0
    assert bound_state_count(p_above, 0) == 1


def test_bessel_route_examples():
    assert exp_exact_l0_energy(40.0, 0) == pytest.approx(-17.53, abs=0.005)
    g0 = exp_exact_critical_l0(0) * (1 + 1e-6)
    eps = exp_exact_l0_energy(g0, 0)
    assert -1e-5 < eps < 0.0
    count = bound_state_count(DimensionlessProblem(20.0, 0.0), 0)
    assert count == 3
    roots = [exp_exact_l0_energy(20.0, n) for n in range(3)]
    assert roots == sorted(roots) and roots[-1] < 0
    with pytest.raises(NoBoundState):
        exp_exact_l0_energy(20.0, 3)


@pytest.mark.parametrize("g", [5.0, 10.0, 20.0, 40.0])
def test_bessel_route_agrees_with_mesh(g):
    p = DimensionlessProblem(g, 0.0)
    for n in range(bound_state_count(p, 0)):
        assert exp_exact_l0_energy(g, n) == pytest.approx(solve_radial(p, n, 0).epsilon, abs=1e-6)
