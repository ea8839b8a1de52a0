"""Auxiliary-field spectrum of the Yukawa potential ``-g e^{-x}/x``.

With ``Y = 2 N^2 / (e g)`` the energy is

    eps = -g e x0^2 (x0 - Y) / (2 Y (x0 + Y)),

where ``x0`` solves ``-x0 [1 + W_{-1}(-x0)] = Y`` on the branch starting at
``x0(0) = 1/e``.  The root can be taken exactly or from the one-parameter
ellipse-like fit ``x0(Y, A)``; ``A = 2`` is the recommended shape.

Empirical baselines (the fitted critical heights ``g^G`` and the fitted
energy formula) are included for comparison; they are fits, not AFM output.
"""
from __future__ import annotations

import math

from .errors import DomainError, NoBoundState, NumericalError
from .special import Branch, RootConfig, find_root, lambert_w

E = math.e
INV_E = 1.0 / E
SQRT5 = math.sqrt(5.0)
GOLDEN = (1.0 + SQRT5) / 2.0

# Maximum of F(x) = -x [1 + W_{-1}(-x)] on [0, 1/e].
_A = (3.0 + SQRT5) / 2.0
XBAR = _A * math.exp(-_A)
FBAR = (2.0 + SQRT5) * math.exp(-_A)
DEFAULT_A = 2.0


def yukawa_ybar(g: float, N: float) -> float:
    if not (g > 0 and N > 0):
        raise DomainError("g and N must be positive")
    return 2.0 * N * N / (E * g)


def f_lower(x0: float) -> float:
    """``F(x0) = -x0 [1 + W_{-1}(-x0)]`` for ``x0`` in ``(0, 1/e]``."""
    if not 0.0 < x0 <= INV_E:
        raise DomainError(f"x0 must lie in (0, 1/e], got {x0}")
    return -x0 * (1.0 + lambert_w(Branch.LOWER, -x0))


def _check_y(ybar: float):
    if not 0.0 <= ybar <= FBAR:
        raise DomainError(f"Y={ybar:.6g} outside [0, {FBAR:.6g}]")


def yukawa_x0_fit(ybar: float, A: float = DEFAULT_A) -> float:
    """Closed-form approximation of the physical root ``x0(Y)``."""
    _check_y(ybar)
    rad = 1.0 - (ybar / FBAR) ** 2 + A * ybar * (ybar - FBAR)
    if rad < 0.0:
        if rad > -1e-14:
            rad = 0.0
        else:
            raise DomainError(f"negative radicand {rad:.3g} for Y={ybar}, A={A}")
    return XBAR + (INV_E - XBAR) * math.sqrt(rad)


def yukawa_x0_exact(ybar: float) -> float:
    """Root of ``F(x0) = Y`` on the decreasing segment ``[XBAR, 1/e]``."""
    _check_y(ybar)
    if ybar == 0.0:
        return INV_E
    if ybar == FBAR:
        return XBAR
    return find_root(lambda x: f_lower(x) - ybar, XBAR, INV_E, RootConfig(abs_tol=1e-16, max_iter=200))


def critical_shape_parameter() -> float:
    """``A_c`` such that ``x0_fit(2/e^2, A_c) = 2/e^2`` (energy zero at ``g = e N^2``)."""
    y = 2.0 / E ** 2
    root = ((y - XBAR) / (INV_E - XBAR)) ** 2
    return (root - 1.0 + (y / FBAR) ** 2) / (y * (y - FBAR))


def yukawa_energy_from_x0(g: float, ybar: float, x0: float) -> float:
    den = 2.0 * ybar * (x0 + ybar)
    if den == 0.0:
        raise NumericalError("x0 + Y underflow")
    return -g * E * x0 * x0 * (x0 - ybar) / den


def yukawa_energy(g: float, N: float, x0: str = "fit", A: float = DEFAULT_A) -> float:
    """Dimensionless Yukawa energy; ``x0`` is ``"fit"`` (with shape ``A``) or ``"exact"``.

    Raises :class:`NoBoundState` when ``Y > FBAR``.
    """
    y = yukawa_ybar(g, N)
    if y > FBAR:
        raise NoBoundState(f"Y={y:.6g} exceeds {FBAR:.6g}")
    if x0 == "fit":
        root = yukawa_x0_fit(y, A)
    elif x0 == "exact":
        root = yukawa_x0_exact(y)
    else:
        raise DomainError(f"x0 source must be 'fit' or 'exact', got {x0!r}")
    return yukawa_energy_from_x0(g, y, root)


def yukawa_energy_physical(m: float, alpha: float, beta: float, N: float, x0: str = "fit",
                           A: float = DEFAULT_A) -> float:
    g = 2.0 * m * alpha / beta
    return beta ** 2 / (2.0 * m) * yukawa_energy(g, N, x0, A)


def envelope_upper_bound(g: float, N: float) -> float:
    """``min_{x>0} N^2/x^2 - g e^{-x}/x`` by solving the stationarity condition.

    The minimiser satisfies ``x (x+1) e^{-x} = 2 N^2 / g`` on ``(0, golden]``.
    """
    if not (g > 0 and N > 0):
        raise DomainError("g and N must be positive")
    target = 2.0 * N * N / g
    peak = GOLDEN * (GOLDEN + 1.0) * math.exp(-GOLDEN)
    if target > peak:
        raise NoBoundState("no stationary point: envelope minimum does not exist")

    def h(x):
        return x * (x + 1.0) * math.exp(-x) - target

    theta = GOLDEN if target == peak else find_root(h, 0.0, GOLDEN, RootConfig(abs_tol=1e-16, max_iter=200))
    value = N * N / theta ** 2 - g * math.exp(-theta) / theta
    if value >= 0.0:
        raise NoBoundState("envelope minimum is not negative")
    return value


# --------------------------------------------------------------------------
# Critical heights
# --------------------------------------------------------------------------

Z0, ALPHA_Z, BETA_Z = 0.839908, 2.7359, 1.6242
S0, GAMMA_S, DELTA_S = 1.1335, 0.019102, -0.001684

YUKAWA_CRITICAL_MODELS = ("afm", "calibrated_exact", "calibrated_variational", "sqrtnl",
                          "empirical", "empirical_full", "empirical_asymptotic")


def empirical_critical_height(n: int, l: int, full_s: bool = False) -> float:
    """Empirical fit form ``2 (sqrt(Z_l) + n / S_l)^2``.

    By default ``S_l`` is replaced by ``S_0``; ``full_s=True`` keeps the
    quadratic ``l`` dependence.
    """
    zl = Z0 * (1.0 + ALPHA_Z * l + BETA_Z * l * l)
    sl = S0 * (1.0 + GAMMA_S * l + DELTA_S * l * l) if full_s else S0
    return 2.0 * (math.sqrt(zl) + n / sl) ** 2


def calibrated_critical_height(n: int, l: int, g00: float, g10: float) -> float:
    """``([sqrt(g10) - sqrt(g00)] n + sqrt(e) l + sqrt(g00))^2``."""
    return ((math.sqrt(g10) - math.sqrt(g00)) * n + math.sqrt(E) * l + math.sqrt(g00)) ** 2


def yukawa_critical_height(n: int, l: int, model: str = "sqrtnl", N: float | None = None) -> float:
    """Critical coupling of level ``(n, l)`` for ``-g e^{-x}/x``.

    ``afm`` is ``e N^2``; the remaining models are the calibrated forms with
    fixed coefficients and the empirical fits.
    """
    if n < 0 or l < 0:
        raise DomainError("quantum numbers must be non-negative")
    if model == "afm":
        if N is None or not N > 0:
            raise DomainError("model 'afm' needs a positive N")
        return E * N * N
    if model == "calibrated_exact":
        return (1.243 * n + 1.649 * l + 1.296) ** 2
    if model == "calibrated_variational":
        return (1.291 * n + 1.649 * l + 1.296) ** 2
    if model == "sqrtnl":
        return (1.247 * n + 1.680 * l - 0.054 * math.sqrt(n * l) + 1.296) ** 2
    if model == "empirical":
        return empirical_critical_height(n, l)
    if model == "empirical_full":
        return empirical_critical_height(n, l, full_s=True)
    if model == "empirical_asymptotic":
        return (1.248 * n + 1.652 * l + 1.296) ** 2
    raise DomainError(f"unknown critical-height model {model!r}")


A_PRIME, B_PRIME, SIGMA = 1.9875, 1.2464, 0.003951


def yukawa_energy_empirical(g: float, n: int, l: int, full_s: bool = True) -> float:
    """Empirical energy fit (not AFM) with ``N = n + l + 1``.

    The embedded critical height keeps the ``l``-dependent ``S_l`` unless
    ``full_s`` is false.
    """
    N = n + l + 1.0
    gg = empirical_critical_height(n, l, full_s)
    if g <= gg:
        raise NoBoundState(f"g={g} below fitted critical height {gg:.6g}")
    two_b = 2.0 * B_PRIME * N * N
    return (-g / (4.0 * N * N) * (g - gg) * (g - 2.0 * A_PRIME * (N + SIGMA) ** 2 + two_b)
            / (g - gg + two_b))


def hulthen_critical_estimate(n: int, one_parameter: bool = False) -> float:
    """Variational estimates of the l=0 critical heights for ``n`` in {0, 1}."""
    if one_parameter:
        if n != 0:
            raise DomainError("the one-parameter estimate exists for n=0 only")
        return 1.0 / math.log(16.0 / 9.0)
    if n == 0:
        return 17.0 / (6.0 * math.log(27.0 / 5.0))
    if n == 1:
        return 1.0 / (60.0 * math.log(2.0) - 26.0 * math.log(3.0) - 8.0 * math.log(5.0))
    raise DomainError(f"Hulthen estimates exist for n in {{0, 1}}, got {n}")
