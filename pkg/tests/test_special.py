import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from afmspec.errors import DomainError, NumericalError
from afmspec.special import (Branch, RootConfig, bessel_j, bessel_j0_zero, find_root, lambert_w,
                             lambert_w_array, solve_shifted_exponential)

E = math.e


def test_lambert_fixed_points():
    assert lambert_w(Branch.PRINCIPAL, 0.0) == 0.0
    assert lambert_w(Branch.PRINCIPAL, -1 / E) == pytest.approx(-1.0, abs=1e-7)
    assert lambert_w(Branch.LOWER, -1 / E) == pytest.approx(-1.0, abs=1e-7)
    assert lambert_w(Branch.PRINCIPAL, E) == pytest.approx(1.0, rel=1e-15)


def test_lambert_lower_branch_value():
    w = lambert_w(Branch.LOWER, -0.1)
    assert w < -1.0
    assert w * math.exp(w) == pytest.approx(-0.1, rel=1e-14)
    assert w == pytest.approx(sp.lambertw(-0.1, -1).real, rel=1e-14)


def test_lambert_domain_errors():
    with pytest.raises(DomainError):
        lambert_w(Branch.PRINCIPAL, -0.5)
    with pytest.raises(DomainError):
        lambert_w(Branch.LOWER, 0.0)
    with pytest.raises(DomainError):
        lambert_w(Branch.LOWER, 0.3)


def test_branch_coerce_accepts_ints():
    assert Branch.coerce(0) is Branch.PRINCIPAL
    assert Branch.coerce(-1) is Branch.LOWER


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=-1 / E, max_value=1e6))
def test_principal_residual(z):
    w = lambert_w(Branch.PRINCIPAL, z)
    assert w >= -1.0
    assert abs(w * math.exp(w) - z) <= 1e-13 * max(1.0, abs(z))


@settings(max_examples=300, deadline=None)
@given(st.floats(min_value=-1 / E, max_value=-1e-300))
def test_lower_residual(z):
    w = lambert_w(Branch.LOWER, z)
    assert w <= -1.0
    assert abs(w * math.exp(w) - z) <= 1e-13 * max(1.0, abs(z))


def test_branch_ordering_on_overlap():
    for z in np.linspace(-1 / E + 1e-9, -1e-6, 50):
        assert lambert_w(Branch.PRINCIPAL, z) >= -1.0 >= lambert_w(Branch.LOWER, z)


@pytest.mark.parametrize("branch, lo, hi", [(Branch.PRINCIPAL, -0.35, 5.0), (Branch.LOWER, -0.35, -0.01)])
def test_derivative_identity(branch, lo, hi):
    for z in np.linspace(lo, hi, 100):
        h = 1e-6 * max(1.0, abs(z))
        fd = (lambert_w(branch, z + h) - lambert_w(branch, z - h)) / (2 * h)
        w = lambert_w(branch, z)
        assert fd == pytest.approx(w / (z * (1 + w)) if z != 0 else 1.0, rel=1e-6)


def test_lambert_array_matches_scalar():
    z = np.linspace(-1 / E, 3.0, 41)
    got = lambert_w_array(Branch.PRINCIPAL, z)
    assert np.allclose(got, [lambert_w(Branch.PRINCIPAL, v) for v in z], rtol=1e-14, atol=1e-14)
    with pytest.raises(DomainError):
        lambert_w_array(Branch.LOWER, np.array([-0.1, 0.2]))


def test_shifted_exponential_examples():
    assert solve_shifted_exponential(1.0, 0.0, 1.0, 0.0, Branch.PRINCIPAL) == 0.0
    z = solve_shifted_exponential(1.0, 0.0, 2.0, math.exp(-1.0), Branch.PRINCIPAL)
    assert z * z * math.exp(-z) == pytest.approx(math.exp(-1.0), rel=1e-12)


def test_shifted_exponential_inverts_k_of_x():
    # x = -1 - W_{-1}(-nu/(e g)) inverts nu = g e^{-x} (x + 1): theta = nu/g, a=1, b=+1.
    g = 7.0
    for x in (0.2, 1.0, 3.5, 9.0):
        nu = g * math.exp(-x) * (x + 1.0)
        z = solve_shifted_exponential(1.0, 1.0, 1.0, nu / g, Branch.LOWER)
        assert z == pytest.approx(x, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(a=st.floats(0.2, 3.0), b=st.floats(-2.0, 2.0), n=st.sampled_from([1.0, 2.0, 3.0, 0.5, 1.5]),
       frac=st.floats(0.01, 0.99), lower=st.booleans())
def test_shifted_exponential_round_trip(a, b, n, frac, lower):
    # theta chosen inside the domain: (1/(a n)) (e^{-b/a} theta)^{1/n} = frac/e
    theta = (a * n * frac / E) ** n * math.exp(b / a)
    branch = Branch.LOWER if lower else Branch.PRINCIPAL
    z = solve_shifted_exponential(a, b, n, theta, branch)
    lhs = (a * z + b) ** n * math.exp(-z)
    assert lhs == pytest.approx(theta, rel=1e-11)


def test_shifted_exponential_errors():
    with pytest.raises(DomainError):
        solve_shifted_exponential(0.0, 1.0, 1.0, 0.1, Branch.PRINCIPAL)
    with pytest.raises(DomainError):
        solve_shifted_exponential(1.0, 0.0, 1.0, 5.0, Branch.PRINCIPAL)
    with pytest.raises(NumericalError):
        solve_shifted_exponential(1.0, 0.0, 2.0, -0.1, Branch.PRINCIPAL)


def test_bessel_examples():
    assert bessel_j(0.0, 0.0) == 1.0
    assert bessel_j(1.0, 0.0) == 0.0
    assert abs(bessel_j(0.0, bessel_j0_zero(0))) < 1e-14
    with pytest.raises(DomainError):
        bessel_j(-1.0, 1.0)
    with pytest.raises(DomainError):
        bessel_j(0.0, -1.0)


def test_bessel_against_scipy_grid():
    nus = np.linspace(0.0, 20.0, 41)
    xs = np.linspace(0.0, 50.0, 101)
    worst = max(abs(bessel_j(nu, x) - sp.jv(nu, x)) for nu in nus for x in xs)
    assert worst < 1e-10


def test_j0_zeros():
    assert bessel_j0_zero(0) == pytest.approx(2.404825557695773, abs=1e-12)
    assert np.allclose([bessel_j0_zero(n) for n in range(20)], sp.jn_zeros(0, 20), atol=1e-10)
    r = bessel_j0_zero(1)
    assert 4.0 < r < 7.0
    gaps = [abs(bessel_j0_zero(n) - math.pi * (n + 0.75)) for n in range(12)]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))


def test_root_config_validation():
    with pytest.raises(DomainError):
        RootConfig(abs_tol=0.0)
    with pytest.raises(DomainError):
        RootConfig(max_iter=0)
    with pytest.raises(DomainError):
        RootConfig(bracket=(1.0, 1.0))


def test_find_root_requires_bracket():
    assert find_root(lambda x: x * x - 2.0, 0.0, 2.0) == pytest.approx(math.sqrt(2.0), abs=1e-14)
    with pytest.raises(NumericalError):
        find_root(lambda x: x * x + 1.0, -1.0, 1.0)
