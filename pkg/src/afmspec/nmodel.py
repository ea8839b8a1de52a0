"""Rules for the effective quantum number ``N(g; n, l)``.

Every model is a small frozen dataclass with ``__call__(g, n, l)``.  The
presets are the g-dependent hyperbola parameterisations calibrated against
numerical spectra of the pure exponential and Yukawa potentials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

from .errors import DomainError
from .powerlaw import b_eta, c_eta

_POLE_EPS = 1e-12


@dataclass(frozen=True)
class Hyperbola:
    """``d(g) = (p g + q) / (g + r)``; the pole sits at ``g = -r``."""

    p: float
    q: float
    r: float

    def __call__(self, g: float) -> float:
        den = g + self.r
        if abs(den) <= _POLE_EPS * max(1.0, abs(g)):
            raise DomainError(f"hyperbola evaluated at its pole g={-self.r}")
        return (self.p * g + self.q) / den

    @property
    def pole(self) -> float:
        return -self.r


@dataclass(frozen=True)
class Quadratic:
    a2: float
    a1: float
    a0: float

    def __call__(self, g: float) -> float:
        return (self.a2 * g + self.a1) * g + self.a0


@dataclass(frozen=True)
class EtaRational:
    """``N_eta = b(eta) n + l + c(eta)``, independent of ``g``."""

    eta: float

    def __call__(self, g, n, l):
        return b_eta(self.eta) * n + l + c_eta(self.eta)


@dataclass(frozen=True)
class FixedBC:
    b: float
    c: float

    def __call__(self, g, n, l):
        return self.b * n + l + self.c


@dataclass(frozen=True)
class FixedSqrtNL:
    """``N = b n + lc l + c + s sqrt(n l)`` with constant coefficients."""

    b: float
    lc: float
    c: float
    s: float

    def __call__(self, g, n, l):
        return self.b * n + self.lc * l + self.c + self.s * math.sqrt(n * l)


def CoulombLike() -> FixedBC:
    """``N_{-1} = n + l + 1``."""
    return FixedBC(1.0, 1.0)


@dataclass(frozen=True)
class HyperbolaBC:
    """``N = b(g) n + l + c(g)``."""

    b: Hyperbola
    c: Hyperbola

    def __call__(self, g, n, l):
        return self.b(g) * n + l + self.c(g)


@dataclass(frozen=True)
class HyperbolaSqrtNL:
    """``N = b(g) n + lc(g) l + c(g) + s(g) sqrt(n l)`` with quadratic ``s``."""

    b: Hyperbola
    lc: Hyperbola
    c: Hyperbola
    s: Quadratic

    def __call__(self, g, n, l):
        return self.b(g) * n + self.lc(g) * l + self.c(g) + self.s(g) * math.sqrt(n * l)


BC_EXP = HyperbolaBC(Hyperbola(1.42, -12.76, -8.62), Hyperbola(1.32, 16.88, 14.95))
ABCD_EXP = HyperbolaSqrtNL(
    Hyperbola(1.44, -11.17, -6.86),
    Hyperbola(0.95, -1.36, -0.33),
    Hyperbola(1.43, 23.09, 20.60),
    Quadratic(6.69e-6, -0.00019, -0.126),
)
BC_YUK = HyperbolaBC(Hyperbola(0.99, -5.92, -5.08), Hyperbola(1.00, -1.68, -1.58))
ABCD_YUK = HyperbolaSqrtNL(
    Hyperbola(0.99, -7.16, -6.64),
    Hyperbola(1.00, 2.51, 3.16),
    Hyperbola(1.00, -1.89, -1.79),
    Quadratic(-0.000233, 0.0202, -0.480),
)

PRESETS = {
    "bcexp": BC_EXP,
    "abcdexp": ABCD_EXP,
    "bcyuk": BC_YUK,
    "abcdyuk": ABCD_YUK,
    "coulomb": CoulombLike(),
}


def _floats(text: str, count: int) -> Tuple[float, ...]:
    parts = [float(v) for v in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"expected {count} comma-separated numbers, got {text!r}")
    return tuple(parts)


def parse_nmodel(spec: str):
    """Parse ``bcdef:ETA``, ``fixed:B,C`` or a preset name."""
    key = spec.strip().lower()
    if key in PRESETS:
        return PRESETS[key]
    if key.startswith("bcdef:"):
        return EtaRational(float(key.split(":", 1)[1]))
    if key.startswith("fixed:"):
        b, c = _floats(key.split(":", 1)[1], 2)
        return FixedBC(b, c)
    raise ValueError(f"unknown N model {spec!r}")
