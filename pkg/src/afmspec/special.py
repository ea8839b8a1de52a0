"""Real special functions: Lambert W branches, Bessel J of real order, zeros of J0.

Everything here is scalar and pure.  The Lambert W iteration itself lives in
:mod:`afmspec.kernels` so it can be compiled; this module adds domain checks
and the higher-level solvers built on it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from . import kernels
from .errors import DomainError, NumericalError

INV_E = math.exp(-1.0)
BRANCH_POINT = -INV_E


class Branch(enum.Enum):
    """Real branch of the Lambert W function."""

    PRINCIPAL = 0  # W0, defined on [-1/e, inf), values >= -1
    LOWER = -1  # W-1, defined on [-1/e, 0), values <= -1

    @classmethod
    def coerce(cls, value) -> "Branch":
        if isinstance(value, cls):
            return value
        if value in (0, "0", "principal", "W0"):
            return cls.PRINCIPAL
        if value in (-1, "-1", "lower", "W-1"):
            return cls.LOWER
        raise ValueError(f"unknown Lambert W branch {value!r}")


@dataclass(frozen=True)
class RootConfig:
    abs_tol: float = 1e-14
    max_iter: int = 100
    bracket: Optional[Tuple[float, float]] = None

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if self.max_iter < 1:
            raise DomainError("max_iter must be at least 1")
        if self.bracket is not None and not self.bracket[0] < self.bracket[1]:
            raise DomainError("bracket endpoints must be strictly increasing")


def find_root(f: Callable[[float], float], lo: float, hi: float,
              cfg: RootConfig = RootConfig(), rtol: float = 4 * np.finfo(float).eps) -> float:
    """Bracketed root of ``f`` on ``[lo, hi]`` (Brent: bisection with secant/IQI steps)."""
    if cfg.bracket is not None:
        lo, hi = cfg.bracket
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0) == (fhi < 0):
        raise NumericalError(f"root not bracketed on [{lo}, {hi}]: f = ({flo}, {fhi})")
    try:
        return brentq(f, lo, hi, xtol=cfg.abs_tol, rtol=rtol, maxiter=cfg.max_iter)
    except RuntimeError as exc:
        raise NumericalError(str(exc)) from exc


def lambert_w(branch, z: float, tol: float = 1e-15, max_iter: int = 100) -> float:
    """Real Lambert W, the inverse of ``w * exp(w)``.

    ``branch`` is a :class:`Branch` (or 0 / -1).  The principal branch is
    defined for ``z >= -1/e`` and returns ``w >= -1``; the lower branch is
    defined on ``[-1/e, 0)`` and returns ``w <= -1``.
    """
    branch = Branch.coerce(branch)
    z = float(z)
    if not math.isfinite(z):
        raise DomainError(f"Lambert W argument must be finite, got {z}")
    if z < BRANCH_POINT:
        raise DomainError(f"Lambert W undefined for z={z} < -1/e")
    if branch is Branch.LOWER and z >= 0.0:
        raise DomainError(f"lower Lambert branch requires z < 0, got {z}")
    return kernels.lambertw_scalar(z, branch is Branch.LOWER, tol, max_iter)


def lambert_w_array(branch, z, tol: float = 1e-15, max_iter: int = 100) -> np.ndarray:
    """Vectorised :func:`lambert_w` over a 1-D array."""
    branch = Branch.coerce(branch)
    z = np.ascontiguousarray(np.atleast_1d(z), dtype=float)
    if np.any(z < BRANCH_POINT) or not np.all(np.isfinite(z)):
        raise DomainError("Lambert W argument below -1/e or not finite")
    if branch is Branch.LOWER and np.any(z >= 0.0):
        raise DomainError("lower Lambert branch requires z < 0")
    return kernels.lambertw_array(z, branch is Branch.LOWER, tol, max_iter)


def _real_root(base: float, n: float) -> float:
    if base >= 0.0:
        return base ** (1.0 / n)
    # Negative base: only odd integer n gives a real n-th root.
    if float(n).is_integer() and int(n) % 2 == 1:
        return -((-base) ** (1.0 / n))
    raise NumericalError(f"({base})^(1/{n}) is not real")


def solve_shifted_exponential(a: float, b: float, n: float, theta: float, branch) -> float:
    """Solve ``(a z + b)^n exp(-z) = theta`` for ``z`` with the chosen W branch.

    Returns ``z = -b/a - n W[-(1/(a n)) (exp(-b/a) theta)^(1/n)]``.
    """
    if a == 0 or n == 0:
        raise DomainError("a and n must be non-zero")
    root = _real_root(math.exp(-b / a) * theta, n)
    arg = -root / (a * n)
    return -b / a - n * lambert_w(branch, arg)


# --------------------------------------------------------------------------
# Bessel J_nu(x), real nu >= 0, x >= 0
# --------------------------------------------------------------------------

def _bessel_series(nu: float, x: float) -> float:
    half = 0.5 * x
    q = -half * half
    term = math.exp(nu * math.log(half) - math.lgamma(nu + 1.0)) if x > 0 else 0.0
    total = term
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + nu))
        total += term
        if abs(term) < 1e-17 * max(abs(total), 1e-300) and k > half:
            return total
        if k > 500:  # pragma: no cover
            raise NumericalError("Bessel series did not converge")


def _bessel_miller(nu: float, x: float) -> float:
    # Backward recurrence f_{k-1} = 2(nu+k)/x f_k - f_{k+1}, f_k ~ J_{nu+k},
    # normalised by (x/2)^nu = sum_j (nu+2j) Gamma(nu+j)/j! J_{nu+2j}.
    start = int(x + 30 + 3 * math.sqrt(x) + nu)
    start += start % 2
    f_next, f = 0.0, 1e-300
    norm = 0.0
    # log of Gamma(nu+j)/j! * (nu+2j); j = k/2
    for k in range(start, 0, -1):
        if k % 2 == 0:
            j = k // 2
            coeff = (nu + 2 * j) * math.exp(math.lgamma(nu + j) - math.lgamma(j + 1.0))
            norm += coeff * f
        f_prev = 2.0 * (nu + k) / x * f - f_next
        f_next, f = f, f_prev
        if abs(f) > 1e250:
            f *= 1e-250
            f_next *= 1e-250
            norm *= 1e-250
    norm += math.gamma(nu + 1.0) * f  # j = 0 term, nu*Gamma(nu) -> Gamma(nu+1)
    return f * math.exp(nu * math.log(0.5 * x)) / norm


def bessel_j(nu: float, x: float) -> float:
    """Bessel function of the first kind ``J_nu(x)`` for real ``nu, x >= 0``.

    Uses the ascending series while cancellation is harmless (small ``x``)
    and Miller's backward recurrence otherwise.
    """
    nu = float(nu)
    x = float(x)
    if not (math.isfinite(nu) and math.isfinite(x)):
        raise DomainError("Bessel arguments must be finite")
    if nu < 0 or x < 0:
        raise DomainError(f"bessel_j needs nu >= 0 and x >= 0, got nu={nu}, x={x}")
    if x == 0.0:
        return 1.0 if nu == 0.0 else 0.0
    if x <= 8.0 or x < 0.5 * nu:
        return _bessel_series(nu, x)
    return _bessel_miller(nu, x)


def bessel_j0_zero(n: int, cfg: RootConfig = RootConfig(abs_tol=1e-13)) -> float:
    """The ``(n+1)``-th positive zero of ``J_0``.

    Starts from the large-order estimate ``pi (n + 3/4)`` and refines inside a
    bracket of half-width 0.4, which always isolates one zero.
    """
    n = int(n)
    if n < 0:
        raise DomainError("zero index must be non-negative")
    guess = math.pi * (n + 0.75)
    # McMahon: j_n = beta + 1/(8 beta) - ..., beta = guess; the correction is < 0.06.
    lo, hi = guess - 0.1, guess + 0.3
    return find_root(lambda r: bessel_j(0.0, r), lo, hi, RootConfig(abs_tol=cfg.abs_tol, max_iter=cfg.max_iter))
