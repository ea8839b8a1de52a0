"""Auxiliary-field spectrum of the pure exponential potential ``-g e^{-x}``.

The auxiliary potential is linear, which gives the closed form

    eps = -g exp(3 W0(-Z)) [1 + 3/2 W0(-Z)],   Z = (1/3) (2 N^2 / g)^(1/3),

valid while ``Z <= 1/e``.  Critical heights follow from ``eps = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, NoBoundState
from .special import Branch, bessel_j0_zero, lambert_w

E = math.e
INV_E = 1.0 / E
# Z at which the energy crosses zero: 2 e^(-2/3) / 3.
Z_CRITICAL = 2.0 * math.exp(-2.0 / 3.0) / 3.0


@dataclass(frozen=True)
class PhysicalPotential:
    """``H = p^2/2m - alpha r^lam e^{-beta r}`` in physical units."""

    m: float
    alpha: float
    beta: float
    lam: float = 0.0

    def __post_init__(self):
        if not (self.m > 0 and self.alpha > 0 and self.beta > 0):
            raise DomainError("m, alpha and beta must be positive")

    @property
    def g(self) -> float:
        return 2.0 * self.m * self.alpha / self.beta ** (self.lam + 2.0)

    @property
    def energy_unit(self) -> float:
        """Factor ``beta^2 / 2m`` converting dimensionless to physical energies."""
        return self.beta ** 2 / (2.0 * self.m)


def exp_z(g: float, N: float) -> float:
    if not (g > 0 and N > 0):
        raise DomainError("g and N must be positive")
    return (2.0 * N * N / g) ** (1.0 / 3.0) / 3.0


def exp_energy_from_z(g: float, z: float) -> float:
    if z > INV_E:
        raise NoBoundState(f"Z={z:.6g} exceeds 1/e: no auxiliary-field solution")
    w = lambert_w(Branch.PRINCIPAL, -z)
    return -g * math.exp(3.0 * w) * (1.0 + 1.5 * w)


def exp_energy(g: float, N: float) -> float:
    """Dimensionless energy of ``q^2 - g e^{-x}`` for effective number ``N``.

    Raises :class:`NoBoundState` when ``Z > 1/e``.  A positive value is
    returned as is: callers decide whether it counts as bound.
    """
    return exp_energy_from_z(g, exp_z(g, N))


def exp_nu0(g: float, N: float) -> float:
    """Optimal auxiliary field ``nu0 = g x0^3`` with ``x0 = exp(W0(-Z))``."""
    z = exp_z(g, N)
    if z > INV_E:
        raise NoBoundState(f"Z={z:.6g} exceeds 1/e")
    return g * math.exp(3.0 * lambert_w(Branch.PRINCIPAL, -z))


def exp_energy_physical(p: PhysicalPotential, N: float) -> float:
    if p.lam != 0.0:
        raise DomainError("exp_energy_physical needs lam = 0")
    return p.energy_unit * exp_energy(p.g, N)


def exp_bracket_poly(z: float) -> float:
    """Polynomial stand-in for ``exp(3 W0(-Z)) [1 + 3/2 W0(-Z)]`` on ``[0, 1/e]``."""
    if not 0.0 <= z <= INV_E:
        raise DomainError(f"Z must lie in [0, 1/e], got {z}")
    return math.exp(-3.0 * z) / 100.0 * (100.0 - 150.0 * z - 580.0 * z * z + 524.0 * z ** 3)


def exp_bracket_exact(z: float) -> float:
    if not 0.0 <= z <= INV_E:
        raise DomainError(f"Z must lie in [0, 1/e], got {z}")
    w = lambert_w(Branch.PRINCIPAL, -z)
    return math.exp(3.0 * w) * (1.0 + 1.5 * w)


EXP_CRITICAL_MODELS = ("afm", "bessel", "linear", "sqrtnl")


def exp_critical_height(n: int, l: int, model: str = "sqrtnl", N: float | None = None) -> float:
    """Critical coupling above which level ``(n, l)`` of ``-g e^{-x}`` is bound.

    ``afm``     ``(e^2/4) N^2`` for an explicit ``N``;
    ``bessel``  ``(pi^2/4)(n + 3/4)^2``, large-n form of the l=0 zeros (``l`` ignored);
    ``linear``  ``((pi/2) n + (e/2) l + 3 pi/8)^2``;
    ``sqrtnl``  ``(1.566 n + 1.393 l - 0.125 sqrt(n l) + 1.202)^2``.
    """
    if n < 0 or l < 0:
        raise DomainError("quantum numbers must be non-negative")
    if model == "afm":
        if N is None or not N > 0:
            raise DomainError("model 'afm' needs a positive N")
        return E * E / 4.0 * N * N
    if model == "bessel":
        return math.pi ** 2 / 4.0 * (n + 0.75) ** 2
    if model == "linear":
        return (math.pi / 2.0 * n + E / 2.0 * l + 3.0 * math.pi / 8.0) ** 2
    if model == "sqrtnl":
        return (1.566 * n + 1.393 * l - 0.125 * math.sqrt(n * l) + 1.202) ** 2
    raise DomainError(f"unknown critical-height model {model!r}")


def exp_exact_critical_l0(n: int) -> float:
    """Exact l=0 critical height ``j_n^2 / 4`` from the zeros of ``J_0``."""
    return bessel_j0_zero(n) ** 2 / 4.0
