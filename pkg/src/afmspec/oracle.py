"""Numerical reference spectra of ``q^2 - g x^lam e^{-x}``.

Two independent routes:

* a regularised Lagrange-Laguerre mesh, diagonalised densely, which returns
  every level of a partial wave at once (the default);
* Numerov shooting on the logarithmic grid ``x = e^t`` with Sturm node
  counting, used to verify the mesh, to count bound states and to locate
  critical heights from the zero-energy solution.

Energies are dimensionless (``2m = 1``); multiply by ``beta^2 / 2m`` for
physical units.
"""
from __future__ import annotations

import functools
import logging
import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from scipy.linalg import eigh, eigh_tridiagonal

from . import kernels
from .errors import ConvergenceError, DomainError, NoBoundState
from .general import general_critical_height
from .powerlaw import n_eta
from .special import RootConfig, bessel_j, find_root

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DimensionlessProblem:
    """``q^2 - g x^lam e^{-x}``; ``screened=False`` drops the exponential."""

    g: float
    lam: float
    screened: bool = True

    def __post_init__(self):
        if not self.g > 0:
            raise DomainError("g must be positive")
        if not self.lam > -2.0:
            raise DomainError("lambda must exceed -2")

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        v = -self.g * x ** self.lam
        return v * np.exp(-x) if self.screened else v


@dataclass(frozen=True)
class SolverConfig:
    method: str = "auto"  # "mesh", "shooting", or "auto": mesh for integer lam
    mesh_size: int = 400
    domain_scale: Optional[float] = None
    eig_tol: float = 1e-9
    conv_tol: float = 1e-6
    numerov_step: float = 1e-3

    def __post_init__(self):
        if self.method not in ("auto", "mesh", "shooting"):
            raise DomainError(f"unknown method {self.method!r}")
        if self.mesh_size < 50:
            raise DomainError("mesh_size must be at least 50")
        if not (self.eig_tol > 0 and self.conv_tol > 0):
            raise DomainError("tolerances must be positive")


@dataclass(frozen=True)
class LevelResult:
    n: int
    l: int
    epsilon: float
    converged: bool
    residual: float


DEFAULT_CONFIG = SolverConfig()


# --------------------------------------------------------------------------
# Lagrange-Laguerre mesh
# --------------------------------------------------------------------------

@functools.lru_cache(maxsize=16)
def laguerre_nodes(n: int) -> np.ndarray:
    """Zeros of ``L_n`` from the Jacobi matrix, polished by Newton steps."""
    k = np.arange(1, n, dtype=float)
    x = eigh_tridiagonal(2.0 * np.arange(n) + 1.0, -k, eigvals_only=True)
    for _ in range(2):
        # Ratio L_n / L_n' by the three-term recurrence, rescaled against overflow.
        p_prev = np.ones_like(x)
        p = 1.0 - x
        for j in range(1, n):
            p_next = ((2 * j + 1 - x) * p - j * p_prev) / (j + 1)
            p_prev, p = p, p_next
            s = np.maximum(np.abs(p), 1.0)
            p_prev = p_prev / s
            p = p / s
        dp = n * (p - p_prev) / x
        x = x - p / dp
    x.flags.writeable = False
    return x


@functools.lru_cache(maxsize=512)
def _mesh_eigenvalues(problem: DimensionlessProblem, l: int, size: int, h: float) -> np.ndarray:
    x = laguerre_nodes(size)
    t = kernels.laguerre_kinetic(np.ascontiguousarray(x))
    r = h * x
    ham = t / (h * h)
    ham[np.diag_indices(size)] += l * (l + 1) / (r * r) + problem.potential(r)
    vals = eigh(ham, eigvals_only=True, subset_by_value=(-np.inf, 0.0), check_finite=False)
    vals.flags.writeable = False
    return vals


def mesh_eigenvalues(problem: DimensionlessProblem, l: int, size: int = 400, h: float = 0.1) -> np.ndarray:
    """Negative eigenvalues of one partial wave on an ``size``-point mesh of scale ``h``."""
    return _mesh_eigenvalues(problem, int(l), int(size), float(h))


_H_START = 0.1
_H_MAX = 12.8


def _mesh_level(problem, n, l, cfg):
    scales = [cfg.domain_scale] if cfg.domain_scale else []
    if not scales:
        h = _H_START
        while h <= _H_MAX:
            scales.append(h)
            h *= 2.0
    best = None
    for h in scales:
        coarse = mesh_eigenvalues(problem, l, cfg.mesh_size, h)
        fine = mesh_eigenvalues(problem, l, 2 * cfg.mesh_size, h)
        if len(coarse) <= n or len(fine) <= n:
            continue
        res = abs(coarse[n] - fine[n])
        if best is None or res < best.residual:
            best = LevelResult(n, l, float(fine[n]), res <= cfg.eig_tol, float(res))
        if res <= cfg.eig_tol:
            break
    return best


# --------------------------------------------------------------------------
# Numerov on the logarithmic grid
# --------------------------------------------------------------------------

def _x_min(problem: DimensionlessProblem, l: int) -> float:
    # Potential term x^2 V must be negligible against (l+1/2)^2 at the start.
    p = problem.lam + 2.0
    x = (1e-7 * (l + 0.5) ** 2 / problem.g) ** (1.0 / p)
    return min(1e-6, max(x, 1e-250))


def _x_flat(problem: DimensionlessProblem) -> float:
    # Beyond this point g x^(lam+2) e^-x < 1e-18.
    x = 30.0
    while math.log(problem.g) + (problem.lam + 2.0) * math.log(x) - x > math.log(1e-18):
        x += 5.0
    return x


@functools.lru_cache(maxsize=64)
def _log_grid(lam: float, screened: bool, t0: float, t1: float, dt: float):
    t = np.arange(t0, t1 + 0.5 * dt, dt)
    x = np.exp(t)
    logp = (lam + 2.0) * t - (x if screened else 0.0)
    pot = np.exp(logp)
    x2 = x * x
    pot.flags.writeable = False
    x2.flags.writeable = False
    return t, pot, x2


def _sweep(problem, l, t0, t1, dt, gs, es):
    t, pot, x2 = _log_grid(problem.lam, problem.screened, t0, t1, dt)
    k = l + 0.5
    nodes, tail = kernels.numerov_sweep(pot, x2, k * k, dt, np.asarray(gs, dtype=float),
                                        np.asarray(es, dtype=float), 1.0, math.exp(k * dt))
    return t, nodes, tail


def _bisect_monotone(count_fn, lo, hi, target, rel_tol, batch):
    """Smallest ``v`` in ``[lo, hi]`` with ``count_fn(v) >= target`` (count non-decreasing)."""
    while hi - lo > rel_tol * max(abs(lo), abs(hi), 1e-300):
        probes = np.linspace(lo, hi, batch + 2)[1:-1]
        counts = count_fn(probes)
        above = np.nonzero(counts >= target)[0]
        if above.size:
            i = above[0]
            hi = probes[i]
            if i > 0:
                lo = probes[i - 1]
        else:
            lo = probes[-1]
    return 0.5 * (lo + hi)


def zero_energy_counts(problem_lam: float, l: int, gs, dt: float = 1e-3, screened: bool = True) -> np.ndarray:
    """Number of bound ``l``-wave states for each coupling in ``gs``.

    Counts the nodes of the regular zero-energy solution, including the one
    that the asymptotic form ``a x^(l+1) + b x^(-l)`` places beyond the grid.
    """
    gs = np.atleast_1d(np.asarray(gs, dtype=float))
    probe = DimensionlessProblem(float(np.max(gs)), problem_lam, screened)
    t0 = math.log(_x_min(probe, l))
    t1 = math.log(_x_flat(probe))
    t, nodes, tail = _sweep(probe, l, t0, t1, dt, gs, np.zeros_like(gs))
    k = l + 0.5
    t_last = t[-1]
    t_prev = t[-2]
    # phi = a e^{k t} + b e^{-k t} on the last two points.
    a = tail[:, 1] * math.exp(-k * (t_prev - t_last)) - tail[:, 0]
    return nodes + ((a * tail[:, 1]) < 0.0)


def bound_state_count(problem: DimensionlessProblem, l: int, dt: float = 1e-3) -> int:
    if not problem.screened:
        raise DomainError("unscreened potentials with lam < 0 bind infinitely many states")
    return int(zero_energy_counts(problem.lam, l, [problem.g], dt)[0])


def _shoot_counts(problem, l, t0, t1, dt, es):
    es = np.atleast_1d(es)
    _, nodes, _ = _sweep(problem, l, t0, t1, dt, np.full(es.shape, problem.g), es)
    return nodes


def _turning_point(problem, l, eps):
    x = np.geomspace(1e-4, 1e5, 4000)
    veff = problem.potential(x) + l * (l + 1) / (x * x)
    allowed = np.nonzero(veff < eps)[0]
    return float(x[allowed[-1]]) if allowed.size else 1.0


def shoot_level(problem: DimensionlessProblem, n: int, l: int, dt: float = 1e-3) -> float:
    """Energy of level ``(n, l)`` by node-counting bisection with a hard wall far out."""
    batch = kernels.SWEEP_BATCH
    t0 = math.log(_x_min(problem, l))
    x_max = 40.0
    for _ in range(12):
        t1 = math.log(x_max)

        def count(es):
            return _shoot_counts(problem, l, t0, t1, dt, es)

        if count([-1e-300])[0] < n + 1:
            x_max *= 2.0
            continue
        lo = -1.0
        while count([lo])[0] > n:
            lo *= 4.0
        eps = _bisect_monotone(count, lo, -1e-300, n + 1, 1e-14, batch)
        kappa = math.sqrt(-eps)
        needed = _turning_point(problem, l, eps) + 40.0 / kappa
        if needed <= x_max:
            return eps
        x_max = needed * 1.2
    raise NoBoundState(f"level (n={n}, l={l}) not found at g={problem.g}")


def _shoot_result(problem, n, l, cfg):
    e1 = shoot_level(problem, n, l, cfg.numerov_step)
    e2 = shoot_level(problem, n, l, cfg.numerov_step / 2.0)
    # Numerov is fourth order: error of the finer value from the step-halving difference.
    res = abs(e1 - e2) / 15.0
    return LevelResult(n, l, e2, res <= cfg.eig_tol, res)


def resolve_method(problem: DimensionlessProblem, cfg: SolverConfig) -> str:
    """``auto`` picks the mesh when ``x^lam`` is analytic in ``x`` (integer ``lam``).

    For fractional ``lam`` the wave function carries a non-analytic
    ``x^(lam+2)`` factor that the Laguerre mesh resolves only algebraically.
    """
    if cfg.method != "auto":
        return cfg.method
    return "mesh" if float(problem.lam).is_integer() else "shooting"


# --------------------------------------------------------------------------
# Public entry points
# --------------------------------------------------------------------------

def solve_radial(problem: DimensionlessProblem, n: int, l: int, cfg: SolverConfig = DEFAULT_CONFIG) -> LevelResult:
    """The ``(n+1)``-th negative eigenvalue of the ``l`` wave.

    Raises :class:`NoBoundState` when fewer than ``n+1`` levels exist and
    :class:`ConvergenceError` when refinement (mesh doubling, or halving the
    Numerov step) moves the level by more than ``cfg.conv_tol``.
    """
    if n < 0 or l < 0:
        raise DomainError("quantum numbers must be non-negative")
    if problem.screened and n >= bound_state_count(problem, l):
        raise NoBoundState(f"g={problem.g}, lam={problem.lam}: level (n={n}, l={l}) is unbound")
    if resolve_method(problem, cfg) == "mesh":
        result = _mesh_level(problem, n, l, cfg)
    else:
        result = _shoot_result(problem, n, l, cfg)
    if result is None:
        raise NoBoundState(f"level (n={n}, l={l}) not resolved")
    if result.residual > cfg.conv_tol:
        raise ConvergenceError(f"level (n={n}, l={l}) moved by {result.residual:.3g} under refinement")
    return result


def bound_levels(problem: DimensionlessProblem, cfg: SolverConfig = DEFAULT_CONFIG) -> List[LevelResult]:
    """Every bound level of a screened problem, ordered by ``l`` then ``n``."""
    out = []
    l = 0
    while True:
        count = bound_state_count(problem, l)
        if count == 0:
            break
        out.extend(solve_radial(problem, n, l, cfg) for n in range(count))
        l += 1
    return out


def exact_critical_height(lam: float, n: int, l: int, cfg: SolverConfig = DEFAULT_CONFIG,
                          rel_tol: float = 1e-10) -> float:
    """Coupling at which level ``(n, l)`` reaches zero energy.

    Brackets start at 0.5x and 2x the auxiliary-field estimate and widen
    geometrically; the zero-energy node count is then bisected.
    """
    if n < 0 or l < 0:
        raise DomainError("quantum numbers must be non-negative")
    if not lam > -2.0:
        raise DomainError("lambda must exceed -2")
    guess = general_critical_height(lam, n_eta(lam, n, l) if lam > -2.0 else 1.0)
    dt = cfg.numerov_step

    def count(gs):
        return zero_energy_counts(lam, l, gs, dt)

    lo, hi = 0.5 * guess, 2.0 * guess
    for _ in range(60):
        if count([lo])[0] <= n:
            break
        lo *= 0.5
    else:
        raise ConvergenceError("could not bracket the critical height from below")
    for _ in range(60):
        if count([hi])[0] >= n + 1:
            break
        hi *= 2.0
    else:
        raise ConvergenceError("could not bracket the critical height from above")
    return float(_bisect_monotone(count, lo, hi, n + 1, rel_tol, kernels.SWEEP_BATCH))


@functools.lru_cache(maxsize=1024)
def cached_critical_height(lam: float, n: int, l: int) -> float:
    return exact_critical_height(lam, n, l)


def exp_exact_l0_energy(g: float, n: int, step: float = 0.02) -> float:
    """``l = 0`` level of ``-g e^{-x}`` from ``J_{2 sqrt(-eps)}(2 sqrt g) = 0``.

    Roots are located in ``nu = 2 sqrt(-eps)`` by a sign scan of
    ``bessel_j(nu, 2 sqrt g)`` and ordered from the deepest.
    """
    if not g > 0:
        raise DomainError("g must be positive")
    if n < 0:
        raise DomainError("n must be non-negative")
    x = 2.0 * math.sqrt(g)
    grid = np.arange(x + 1.0, 0.0, -step)
    grid = np.append(grid, 0.0)

    def f(nu):
        return bessel_j(nu, x)

    roots = []
    prev_nu, prev_f = grid[0], f(grid[0])
    for nu in grid[1:]:
        cur = f(nu)
        if cur == 0.0 and nu > 0.0:
            roots.append(nu)
        elif (cur < 0.0) != (prev_f < 0.0) and prev_f != 0.0:
            roots.append(find_root(f, nu, prev_nu, RootConfig(abs_tol=1e-15)))
        if len(roots) > n:
            break
        prev_nu, prev_f = nu, cur
    if len(roots) <= n:
        raise NoBoundState(f"g={g}: no l=0 level with n={n}")
    nu = roots[n]
    return -nu * nu / 4.0
