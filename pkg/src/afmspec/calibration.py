"""Calibration of ``N(g)`` against oracle spectra, and comparison reports.

``chi(g)`` sums squared deviations over bound levels whose approximate
energy is real and strictly negative; other levels are skipped.  Per-g
optima come from a Nelder-Mead search and are then fitted across ``g`` by
sections of hyperbola ``(p g + q) / (g + r)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import least_squares, minimize

from . import oracle
from .errors import AfmError, DomainError, EmptySum, NoBoundState, SingularFit
from .exponential import exp_critical_height, exp_energy
from .general import general_energy
from .nmodel import FixedBC, FixedSqrtNL, Hyperbola, PRESETS, parse_nmodel
from .yukawa import DEFAULT_A, yukawa_critical_height, yukawa_energy, yukawa_energy_empirical

Levels = Mapping[Tuple[int, int], float]

NEAR_ZERO = 1e-3

DEFAULT_G_GRID = {
    0.0: (5.0, 8.0, 10.0, 15.0, 20.0, 30.0, 40.0, 60.0, 80.0, 100.0),
    -1.0: (3.0, 5.0, 8.0, 10.0, 15.0, 20.0, 30.0, 40.0, 50.0),
}


def approx_energy(g: float, lam: float, N: float, x0: str = "fit", A: float = DEFAULT_A) -> Optional[float]:
    """AFM energy, or ``None`` when it is not real and strictly negative."""
    if not N > 0:
        return None
    try:
        if lam == 0.0:
            eps = exp_energy(g, N)
        elif lam == -1.0:
            eps = yukawa_energy(g, N, x0, A)
        else:
            eps = general_energy(g, lam, N, "exact" if x0 == "exact" else "fit")
    except (NoBoundState, DomainError):
        return None
    if not (math.isfinite(eps) and eps < 0.0):
        return None
    return eps


@dataclass(frozen=True)
class AfmApproximant:
    """AFM energies with a given ``N`` model."""

    lam: float
    nmodel: Callable
    label: str = "afm"
    x0: str = "fit"
    A: float = DEFAULT_A

    def __call__(self, g: float, n: int, l: int) -> Optional[float]:
        try:
            N = self.nmodel(g, n, l)
        except DomainError:
            return None
        return approx_energy(g, self.lam, N, self.x0, self.A)


@dataclass(frozen=True)
class EmpiricalYukawa:
    """The empirical Yukawa energy fit."""

    label: str = "empirical"

    def __call__(self, g: float, n: int, l: int) -> Optional[float]:
        try:
            eps = yukawa_energy_empirical(g, n, l)
        except NoBoundState:
            return None
        return eps if eps < 0.0 else None


def make_approximant(name: str, lam: float, x0: str = "fit", A: float = DEFAULT_A):
    """``empirical`` or any N-model spec accepted by :func:`parse_nmodel`."""
    if name.strip().lower() == "empirical":
        if lam != -1.0:
            raise DomainError("the empirical energy formula is Yukawa only")
        return EmpiricalYukawa()
    return AfmApproximant(lam, parse_nmodel(name), name.strip().lower(), x0, A)


def _as_nmodel(coeffs):
    if callable(coeffs):
        return coeffs
    coeffs = tuple(float(v) for v in coeffs)
    if len(coeffs) == 2:
        return FixedBC(*coeffs)
    if len(coeffs) == 4:
        return FixedSqrtNL(*coeffs)
    raise DomainError("raw coefficients must be (b, c) or (b, lc, c, s)")


def chi_measure(g: float, lam: float, nmodel, levels: Levels, x0: str = "fit", A: float = DEFAULT_A) -> float:
    """``sum (eps_num - eps_app)^2`` over qualifying levels; ``EmptySum`` if none qualify."""
    approx = AfmApproximant(lam, _as_nmodel(nmodel), x0=x0, A=A)
    total = 0.0
    used = 0
    for (n, l), eps in levels.items():
        app = approx(g, n, l)
        if app is None:
            continue
        total += (eps - app) ** 2
        used += 1
    if used == 0:
        raise EmptySum(f"no level qualifies at g={g}")
    return total


def oracle_levels(g: float, lam: float, cfg: oracle.SolverConfig = oracle.DEFAULT_CONFIG) -> Dict[Tuple[int, int], float]:
    problem = oracle.DimensionlessProblem(g, lam)
    return {(r.n, r.l): r.epsilon for r in oracle.bound_levels(problem, cfg)}


@dataclass(frozen=True)
class CoefficientFit:
    coeffs: Tuple[float, ...]
    chi: float
    n_levels: int
    degenerate: bool


def _default_start(lam: float, sqrtnl: bool) -> Tuple[float, ...]:
    b, c = (1.5, 1.3) if lam == 0.0 else (1.0, 1.0)
    return (b, 1.0, c, 0.0) if sqrtnl else (b, c)


def optimize_bc(g: float, lam: float, levels: Levels, start: Optional[Sequence[float]] = None,
                sqrtnl: bool = False, restarts: int = 3, x0: str = "fit", seed: int = 0) -> CoefficientFit:
    """Minimise :func:`chi_measure` over ``(b, c)`` or ``(b, lc, c, s)``.

    Nelder-Mead from ``start`` and ``restarts`` perturbed copies of it; the
    best optimum wins.  With fewer than two levels the fit is flagged
    degenerate, since only ``N`` of the ground state is then constrained.
    """
    start = tuple(start) if start is not None else _default_start(lam, sqrtnl)
    chi_measure(g, lam, start, levels, x0)  # EmptySum surfaces here

    def objective(p):
        try:
            return chi_measure(g, lam, tuple(p), levels, x0)
        except EmptySum:
            return math.inf

    rng = np.random.default_rng(seed)
    starts = [np.asarray(start, dtype=float)]
    starts += [starts[0] * (1.0 + 0.1 * rng.standard_normal(len(start))) for _ in range(restarts)]
    best = None
    for s in starts:
        res = minimize(objective, s, method="Nelder-Mead",
                       options={"xatol": 1e-8, "fatol": 1e-12, "maxiter": 4000, "maxfev": 8000})
        if best is None or res.fun < best.fun:
            best = res
    return CoefficientFit(tuple(float(v) for v in best.x), float(best.fun), len(levels), len(levels) < 2)


@dataclass(frozen=True)
class HyperbolaFit:
    hyperbola: Hyperbola
    residual: float
    degenerate: bool = False


def fit_hyperbola(g_values: Sequence[float], d_values: Sequence[float]) -> HyperbolaFit:
    """Least-squares ``d(g) = (p g + q) / (g + r)``.

    A linear solve of ``p g + q - r d = d g`` seeds a nonlinear refinement
    of the actual residuals.  Constant data give the flagged family
    ``p = d, q = d r`` (returned with ``r = 0``).
    """
    g = np.asarray(g_values, dtype=float)
    d = np.asarray(d_values, dtype=float)
    if g.shape != d.shape or g.size < 4:
        raise DomainError("need at least 4 paired samples")
    if np.any(np.diff(g) <= 0.0):
        raise DomainError("g values must be strictly increasing")
    spread = np.ptp(d)
    if spread <= 1e-12 * max(1.0, float(np.max(np.abs(d)))):
        c0 = float(np.mean(d))
        return HyperbolaFit(Hyperbola(c0, 0.0, 0.0), 0.0, True)
    design = np.column_stack([g, np.ones_like(g), -d])
    sv = np.linalg.svd(design, compute_uv=False)
    if sv[-1] <= 1e-12 * sv[0]:
        raise SingularFit("samples are collinear in the linearised problem")
    p, q, r = np.linalg.lstsq(design, d * g, rcond=None)[0]

    def resid(x):
        return d - (x[0] * g + x[1]) / (g + x[2])

    if np.all(np.abs(g + r) > 1e-9):
        refined = least_squares(resid, [p, q, r], xtol=1e-15, ftol=1e-15, gtol=1e-15)
        if refined.success and np.sum(refined.fun ** 2) <= np.sum(resid([p, q, r]) ** 2):
            p, q, r = refined.x
    residual = float(np.sum(resid([p, q, r]) ** 2))
    return HyperbolaFit(Hyperbola(float(p), float(q), float(r)), residual)


@dataclass
class FitDataset:
    """Per-g optimal coefficients and their hyperbola fits."""

    lam: float
    g_values: List[float]
    names: Tuple[str, ...]
    d_min: Dict[str, List[float]] = field(default_factory=dict)
    chi: List[float] = field(default_factory=list)
    constrained: Dict[str, List[bool]] = field(default_factory=dict)
    fits: Dict[str, HyperbolaFit] = field(default_factory=dict)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.g_values, self.g_values[1:])):
            raise DomainError("g values must be strictly increasing")


def refit(lam: float, g_values: Optional[Sequence[float]] = None, sqrtnl: bool = False,
          cfg: oracle.SolverConfig = oracle.DEFAULT_CONFIG) -> FitDataset:
    """Optimise coefficients on each ``g`` and fit every coefficient across ``g``.

    Each optimisation starts from the previous optimum once one exists.  A
    coefficient is left out of its fit at a ``g`` where no bound level
    depends on it (``b`` needs an ``n >= 1`` level, ``lc`` an ``l >= 1`` one).
    The ``sqrt(n l)`` coefficient is quadratic in ``g`` and is not fitted here.
    """
    g_values = list(g_values if g_values is not None else DEFAULT_G_GRID[lam])
    names = ("b", "lc", "c", "s") if sqrtnl else ("b", "c")
    data = FitDataset(lam, g_values, names, {k: [] for k in names}, constrained={k: [] for k in names})
    start = None
    for g in g_values:
        levels = oracle_levels(g, lam, cfg)
        res = optimize_bc(g, lam, levels, start=start, sqrtnl=sqrtnl)
        start = res.coeffs
        data.chi.append(res.chi)
        has_n = any(n > 0 for n, _ in levels)
        has_l = any(l > 0 for _, l in levels)
        needs = {"b": has_n, "lc": has_l, "c": True, "s": any(n > 0 and l > 0 for n, l in levels)}
        for name, value in zip(names, res.coeffs):
            data.d_min[name].append(value)
            data.constrained[name].append(needs[name])
    for name in names:
        if name == "s":
            continue
        mask = data.constrained[name]
        gs = [g for g, ok in zip(g_values, mask) if ok]
        if len(gs) >= 4:
            ds = [d for d, ok in zip(data.d_min[name], mask) if ok]
            data.fits[name] = fit_hyperbola(gs, ds)
    return data


# --------------------------------------------------------------------------
# Comparison reports
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    n: int
    l: int
    exact: float
    approx: Tuple[Optional[float], ...]

    @property
    def near_zero(self) -> bool:
        return abs(self.exact) < NEAR_ZERO


@dataclass(frozen=True)
class ApproximantStats:
    label: str
    found: int
    total: int
    delta_min: Optional[float]
    delta_max: Optional[float]
    delta_mean: Optional[float]


@dataclass(frozen=True)
class ComparisonReport:
    g: float
    lam: float
    labels: Tuple[str, ...]
    rows: Tuple[ReportRow, ...]
    stats: Tuple[ApproximantStats, ...]


def _rel_err_pct(exact: float, approx: float) -> float:
    return 100.0 * abs(approx - exact) / abs(exact)


def summarize(label: str, pairs: Sequence[Tuple[float, Optional[float]]], total: int) -> ApproximantStats:
    errs = [_rel_err_pct(e, a) for e, a in pairs if a is not None and a < 0.0]
    if not errs:
        return ApproximantStats(label, 0, total, None, None, None)
    return ApproximantStats(label, len(errs), total, min(errs), max(errs), sum(errs) / len(errs))


def build_report(g: float, lam: float, approximants: Sequence, levels: Optional[Levels] = None,
                 cfg: oracle.SolverConfig = oracle.DEFAULT_CONFIG) -> ComparisonReport:
    """Rows for every bound level plus ``(R, delta_min, delta_max, delta_mean)`` per approximant."""
    if levels is None:
        levels = oracle_levels(g, lam, cfg)
    keys = sorted(levels, key=lambda k: (k[1], k[0]))
    rows = tuple(ReportRow(n, l, levels[(n, l)], tuple(a(g, n, l) for a in approximants)) for n, l in keys)
    labels = tuple(getattr(a, "label", f"approx{i}") for i, a in enumerate(approximants))
    stats = tuple(summarize(lab, [(r.exact, r.approx[i]) for r in rows], len(rows))
                  for i, lab in enumerate(labels))
    return ComparisonReport(g, lam, labels, rows, stats)


# --------------------------------------------------------------------------
# Critical heights
# --------------------------------------------------------------------------

def critical_height_model(lam: float, model: str) -> Callable[[int, int], float]:
    if lam == 0.0:
        if model == "afm":
            raise DomainError("use an explicit N model for 'afm'")
        return lambda n, l: exp_critical_height(n, l, model)
    if lam == -1.0:
        return lambda n, l: yukawa_critical_height(n, l, model)
    raise DomainError("critical-height models exist for lambda in {0, -1}")


def critical_height_stats(lam: float, model, n_range: Sequence[int], l_range: Sequence[int],
                          digits: Optional[int] = None) -> Tuple[float, float, float]:
    """(min, max, mean) relative error in percent of ``model`` against oracle critical heights.

    ``digits`` rounds the exact values first, as when comparing against a
    reference table.
    """
    fn = critical_height_model(lam, model) if isinstance(model, str) else model
    errs = []
    for n in n_range:
        for l in l_range:
            exact = oracle.cached_critical_height(float(lam), int(n), int(l))
            if digits is not None:
                exact = round(exact, digits)
            errs.append(_rel_err_pct(exact, fn(n, l)))
    return min(errs), max(errs), sum(errs) / len(errs)


__all__ = [
    "AfmApproximant", "EmpiricalYukawa", "make_approximant", "approx_energy", "chi_measure",
    "optimize_bc", "fit_hyperbola", "FitDataset", "refit", "ComparisonReport", "ReportRow",
    "ApproximantStats", "build_report", "summarize", "critical_height_stats", "oracle_levels",
    "CoefficientFit", "HyperbolaFit", "DEFAULT_G_GRID", "PRESETS", "AfmError",
]
