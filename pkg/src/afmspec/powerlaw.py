"""Power-law spectra and the effective quantum number N.

For ``H = p^2/2m + a sgn(eta) r^eta`` the auxiliary-field energies are

    e = (2+eta)/(2 eta) * (a |eta|)^(2/(eta+2)) * (N^2/m)^(eta/(eta+2))

with ``N = b(eta) n + l + c(eta)``.  ``N`` is kept a plain real input so
that callers can substitute any :mod:`afmspec.nmodel` rule.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class QuantumNumbers:
    n: int
    l: int

    def __post_init__(self):
        if int(self.n) != self.n or int(self.l) != self.l:
            raise DomainError("quantum numbers must be integers")
        if self.n < 0 or self.l < 0:
            raise DomainError(f"quantum numbers must be non-negative, got {self}")


def b_eta(eta: float) -> float:
    return (41.0 * eta + 86.0) / (13.0 * eta + 58.0)


def c_eta(eta: float) -> float:
    return (5.0 * eta + 17.0) / (2.0 * eta + 14.0)


def n_eta(eta: float, n: int, l: int) -> float:
    """Effective quantum number ``b(eta) n + l + c(eta)``.

    Exact for the oscillator (``eta=2``: ``2n + l + 3/2``) and for Coulomb
    (``eta=-1``: ``n + l + 1``).
    """
    if not eta > -2.0:
        raise DomainError(f"eta must exceed -2, got {eta}")
    QuantumNumbers(n, l)
    return b_eta(eta) * n + l + c_eta(eta)


def power_law_energy(m: float, a: float, eta: float, N: float) -> float:
    """Eigenvalue of ``p^2/2m + a sgn(eta) r^eta`` for effective number ``N``."""
    if eta == 0.0 or not eta > -2.0:
        raise DomainError(f"eta must lie in (-2, 0) or (0, inf), got {eta}")
    if not (m > 0 and a > 0 and N > 0):
        raise DomainError("m, a and N must be positive")
    p = eta + 2.0
    return (p / (2.0 * eta)) * (a * abs(eta)) ** (2.0 / p) * (N * N / m) ** (eta / p)
