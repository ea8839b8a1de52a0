"""Auxiliary-field spectrum of ``q^2 - g x^lam e^{-x}`` for general ``lam``.

The auxiliary potential is ``sgn(lam) x^lam``.  The elimination condition
``nu = K(x) = g e^{-x} (x - lam) / |lam|`` is inverted with Lambert W, and
the optimal field is expressed through ``x0`` solving

    x0 [lam - W(-x0)]^(lam+2) = Y,   Y = 2 N^2 e^lam / g.

Only ``-2 < lam <= -1`` is supported for the energy, where the lower branch
``W_{-1}`` is the unambiguous choice; ``lam = 0`` lives in
:mod:`afmspec.exponential` and is reproduced here only as a limit check.
"""
from __future__ import annotations

import math

from .errors import DomainError, NoBoundState, UnsupportedLambda
from .special import Branch, RootConfig, find_root, lambert_w


def _check_lam(lam: float):
    if not lam > -2.0:
        raise DomainError(f"lambda must exceed -2, got {lam}")


def _check_supported(lam: float):
    _check_lam(lam)
    if lam > -1.0:
        raise UnsupportedLambda(f"no branch prescription for lambda={lam} > -1")


def _pow(x: float, p: float) -> float:
    if not x > 0.0:
        raise DomainError(f"real power needs a positive base, got {x}")
    return math.exp(p * math.log(x))


def a_lambda(lam: float) -> float:
    return 0.5 * (math.sqrt(9.0 + 4.0 * lam) + 3.0)


def xbar_lambda(lam: float) -> float:
    a = a_lambda(lam)
    return a * math.exp(-a)


def fbar_lambda(lam: float) -> float:
    a = a_lambda(lam)
    return a * math.exp(-a) * (lam + a) ** (lam + 2.0)


def x0_at_zero(lam: float) -> float:
    """Non-trivial root at ``Y = 0``: ``|lam| e^lam``."""
    return abs(lam) * math.exp(lam)


def y_lambda(g: float, lam: float, N: float) -> float:
    if not (g > 0 and N > 0):
        raise DomainError("g and N must be positive")
    return 2.0 * N * N * math.exp(lam) / g


def k_of_x(x: float, g: float, lam: float) -> float:
    """Auxiliary field as a function of position, ``g e^{-x} (x - lam) / |lam|``."""
    if lam == 0.0:
        raise DomainError("K(x) is defined for lambda != 0")
    return g * math.exp(-x) * (x - lam) / abs(lam)


def i_lambda(nu: float, g: float, lam: float, branch=Branch.LOWER) -> float:
    """Inverse of :func:`k_of_x`: ``lam - W(-e^lam |lam| nu / g)``."""
    _check_lam(lam)
    if lam == 0.0:
        raise DomainError("I_lambda is defined for lambda != 0")
    branch = Branch.coerce(branch)
    if -2.0 < lam <= -1.0 and branch is not Branch.LOWER:
        raise DomainError("for -2 < lambda <= -1 only the lower branch is admissible")
    return lam - lambert_w(branch, -math.exp(lam) * abs(lam) * nu / g)


def f_lambda(x0: float, lam: float) -> float:
    """``x0 [lam - W_{-1}(-x0)]^(lam+2)``."""
    return x0 * _pow(lam - lambert_w(Branch.LOWER, -x0), lam + 2.0)


def _f_of_w(w: float, lam: float) -> float:
    # Same function with x0 = -w e^w, so that W_{-1}(-x0) = w exactly.
    if w >= lam:
        return 0.0
    return -w * math.exp(w) * _pow(lam - w, lam + 2.0)


def solve_x0_general(y: float, lam: float) -> float:
    """Physical root of ``x0 [lam - W_{-1}(-x0)]^(lam+2) = Y``, continuous with ``|lam| e^lam``.

    The root is searched in ``w = W_{-1}(-x0)`` on ``[-a_lam, lam]``, the
    monotone segment between the maximum and the ``Y = 0`` endpoint.
    """
    _check_supported(lam)
    fbar = fbar_lambda(lam)
    if not 0.0 <= y <= fbar:
        raise DomainError(f"Y={y:.6g} outside [0, {fbar:.6g}]")
    a = a_lambda(lam)
    if y == 0.0:
        return x0_at_zero(lam)
    if y == fbar:
        return xbar_lambda(lam)
    w = find_root(lambda w: _f_of_w(w, lam) - y, -a, lam, RootConfig(abs_tol=1e-16, max_iter=200))
    return -w * math.exp(w)


def a_shape(lam: float) -> float:
    """Shape parameter of the closed-form fit, ``-(109 + 196 lam + 85 lam^2)``."""
    return -(109.0 + 196.0 * lam + 85.0 * lam * lam)


def x0_fit_general(y: float, lam: float) -> float:
    _check_supported(lam)
    fbar = fbar_lambda(lam)
    if not 0.0 <= y <= fbar:
        raise DomainError(f"Y={y:.6g} outside [0, {fbar:.6g}]")
    xbar = xbar_lambda(lam)
    rad = 1.0 - (y / fbar) ** 2 + a_shape(lam) * y * (y - fbar)
    if rad < 0.0:
        if rad > -1e-14:
            rad = 0.0
        else:
            raise DomainError(f"negative radicand {rad:.3g}")
    return xbar + (x0_at_zero(lam) - xbar) * math.sqrt(rad)


def energy_from_x0(g: float, lam: float, y: float, x0: float) -> float:
    p = lam + 2.0
    xr = _pow(x0, 1.0 / p)
    yr = _pow(y, 1.0 / p)
    ratio = (p * xr - yr) / (yr - lam * xr)
    return -g / (2.0 * math.exp(lam)) * _pow(x0, 2.0 / p) * _pow(y, lam / p) * ratio


def general_energy(g: float, lam: float, N: float, x0: str = "exact") -> float:
    """Dimensionless energy for ``-2 < lam <= -1``; ``x0`` is ``"exact"`` or ``"fit"``."""
    _check_supported(lam)
    y = y_lambda(g, lam, N)
    if y > fbar_lambda(lam):
        raise NoBoundState(f"Y={y:.6g} exceeds the maximum {fbar_lambda(lam):.6g}")
    if x0 == "exact":
        root = solve_x0_general(y, lam)
    elif x0 == "fit":
        root = x0_fit_general(y, lam)
    else:
        raise DomainError(f"x0 source must be 'exact' or 'fit', got {x0!r}")
    return energy_from_x0(g, lam, y, root)


def general_critical_height(lam: float, N: float) -> float:
    """``(e / (lam + 2))^(lam + 2) N^2``."""
    _check_lam(lam)
    if not N > 0:
        raise DomainError("N must be positive")
    p = lam + 2.0
    return (math.e / p) ** p * N * N


def lambda_zero_limit_check(g: float, N: float) -> float:
    """The ``lam -> 0`` form of the general energy, evaluated independently.

    Uses ``x0 = -3 W(-Z) e^{3 W(-Z)}``, ``Y0 = (3Z)^3`` and
    ``eps0 = -g x0 [sqrt(x0 / Y0) - 1/2]``; must agree with
    :func:`afmspec.exponential.exp_energy`.
    """
    if not (g > 0 and N > 0):
        raise DomainError("g and N must be positive")
    z = (2.0 * N * N / g) ** (1.0 / 3.0) / 3.0
    if z > math.exp(-1.0):
        raise NoBoundState(f"Z={z:.6g} exceeds 1/e")
    w = lambert_w(Branch.PRINCIPAL, -z)
    x0 = -3.0 * w * math.exp(3.0 * w)
    y0 = (3.0 * z) ** 3
    return -g * x0 * (math.sqrt(x0 / y0) - 0.5)
