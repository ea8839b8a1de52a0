import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from afmspec.calibration import oracle_levels
from afmspec.errors import DomainError, NoBoundState
from afmspec.nmodel import ABCD_YUK, BC_YUK
from afmspec.yukawa import (FBAR, GOLDEN, XBAR, critical_shape_parameter, empirical_critical_height,
                            envelope_upper_bound, f_lower, hulthen_critical_estimate, yukawa_critical_height,
                            yukawa_energy, yukawa_energy_empirical, yukawa_energy_physical, yukawa_x0_exact,
                            yukawa_x0_fit, yukawa_ybar)

E = math.e


def test_geometry_constants():
    assert XBAR == pytest.approx(0.190975, abs=1e-6)
    assert FBAR == pytest.approx(0.309005, abs=1e-6)
    assert abs(FBAR / XBAR - GOLDEN) <= 1e-14
    assert f_lower(XBAR) == pytest.approx(FBAR, rel=1e-13)


def test_x0_fit_endpoints():
    for A in (0.0, 2.0, 2.87):
        assert yukawa_x0_fit(0.0, A) == pytest.approx(1 / E)
        assert yukawa_x0_fit(FBAR, A) == pytest.approx(XBAR)
    with pytest.raises(DomainError):
        yukawa_x0_fit(FBAR * 1.01)
    with pytest.raises(DomainError):
        yukawa_x0_fit(0.2, A=40.0)


def test_critical_shape_parameter():
    a_c = critical_shape_parameter()
    assert a_c == pytest.approx(2.87, abs=0.005)
    y = 2 / E ** 2
    assert yukawa_x0_fit(y, a_c) == pytest.approx(y, rel=1e-13)
    for N in (1.0, 2.5):
        assert abs(yukawa_energy(E * N * N, N, "fit", a_c)) < 1e-8


def test_x0_exact():
    assert yukawa_x0_exact(0.0) == pytest.approx(1 / E)
    assert yukawa_x0_exact(FBAR) == pytest.approx(XBAR)
    x0 = yukawa_x0_exact(0.2)
    assert XBAR <= x0 <= 1 / E
    assert abs(f_lower(x0) - 0.2) < 1e-12


def test_fit_close_to_exact():
    ys = np.linspace(0.0, FBAR, 1001)
    assert max(abs(yukawa_x0_fit(y) - yukawa_x0_exact(y)) for y in ys) <= 0.01


def test_table_values_g30():
    assert yukawa_energy(30.0, BC_YUK(30.0, 0, 0)) == pytest.approx(-196.41, abs=0.01)
    assert yukawa_energy(30.0, 1.0) == pytest.approx(-194.82, abs=0.01)
    assert yukawa_energy(30.0, ABCD_YUK(30.0, 0, 1)) == pytest.approx(-30.89, abs=0.01)


def test_unbound_and_bad_source():
    with pytest.raises(NoBoundState):
        yukawa_energy(1.0, 1.0)
    with pytest.raises(DomainError):
        yukawa_energy(30.0, 1.0, x0="bogus")


def test_coulomb_limit():
    N = 2.0
    g = 1e7
    assert yukawa_energy(g, N, "exact") == pytest.approx(-g * g / (4 * N * N), rel=1e-5)
    assert envelope_upper_bound(g, N) == pytest.approx(-g * g / (4 * N * N), rel=1e-5)
    m, alpha = 1.0, 1.0
    assert yukawa_energy_physical(m, alpha, 1e-6, 1.0, "exact") == pytest.approx(-alpha ** 2 * m / 2, rel=1e-5)


def test_envelope_matches_afm_example():
    # The envelope equals the exact-root AFM value; -194.82 is the A=2 fit.
    assert envelope_upper_bound(30.0, 1.0) == pytest.approx(yukawa_energy(30.0, 1.0, "exact"), rel=1e-12)
    assert envelope_upper_bound(30.0, 1.0) == pytest.approx(-195.98, abs=0.01)
    with pytest.raises(NoBoundState):
        envelope_upper_bound(1.0, 1.0)


@settings(max_examples=200, deadline=None)
@given(g=st.floats(3.0, 200.0), N=st.floats(0.5, 4.0))
def test_envelope_equivalence(g, N):
    try:
        afm = yukawa_energy(g, N, "exact")
    except NoBoundState:
        return
    if afm >= 0.0:
        return
    assert envelope_upper_bound(g, N) == pytest.approx(afm, abs=1e-10 * max(1.0, abs(afm)))


@pytest.mark.parametrize("g", [10.0, 20.0, 30.0, 50.0])
def test_upper_bound_property(g):
    for (n, l), exact in oracle_levels(g, -1.0).items():
        try:
            afm = yukawa_energy(g, n + l + 1.0, "exact")
        except NoBoundState:
            continue
        assert afm >= exact - 1e-6


def test_ybar_critical_height_relation():
    N, g = 2.0, 25.0
    assert yukawa_ybar(g, N) == pytest.approx(2 / E ** 2 * (E * N * N) / g)


def test_critical_height_models():
    assert yukawa_critical_height(0, 0, "empirical") == pytest.approx(2 * 0.839908)
    assert yukawa_critical_height(0, 0, "sqrtnl") == pytest.approx(1.296 ** 2)
    assert yukawa_critical_height(0, 0, "afm", N=1.0) == pytest.approx(E)
    assert yukawa_critical_height(2, 1, "calibrated_exact") == pytest.approx((1.243 * 2 + 1.649 + 1.296) ** 2)
    assert yukawa_critical_height(2, 1, "calibrated_variational") == pytest.approx((1.291 * 2 + 1.649 + 1.296) ** 2)
    assert yukawa_critical_height(2, 1, "empirical_asymptotic") == pytest.approx((1.248 * 2 + 1.652 + 1.296) ** 2)
    assert empirical_critical_height(1, 2, full_s=True) != empirical_critical_height(1, 2)
    with pytest.raises(DomainError):
        yukawa_critical_height(0, 0, "afm")


def test_empirical_energy():
    assert yukawa_energy_empirical(30.0, 0, 0) == pytest.approx(-196.36, abs=0.01)
    assert yukawa_energy_empirical(30.0, 2, 0) == pytest.approx(-5.67, abs=0.01)
    assert yukawa_energy_empirical(30.0, 2, 1) == pytest.approx(-0.019, abs=0.001)
    gg = empirical_critical_height(1, 1, full_s=True)
    assert yukawa_energy_empirical(gg * (1 + 1e-12), 1, 1) == pytest.approx(0.0, abs=1e-9)
    with pytest.raises(NoBoundState):
        yukawa_energy_empirical(gg, 1, 1)


def test_hulthen_constants():
    assert hulthen_critical_estimate(0) == pytest.approx(1.6801, abs=1e-4)
    assert hulthen_critical_estimate(1) == pytest.approx(6.6931, abs=1e-4)
    assert hulthen_critical_estimate(0, one_parameter=True) == pytest.approx(1.73803, abs=1e-5)
    with pytest.raises(DomainError):
        hulthen_critical_estimate(2)
