"""``afmspec`` command line: AFM levels, critical heights, oracle spectra and fits.

Tables go to stdout as CSV (``*`` marks an absent value) or JSON.  Exit
status is 0 on success, 2 when a requested state is unbound and 1 on any
other error.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import numbers
import sys
from typing import List, Optional, Sequence

from . import calibration, oracle
from .errors import AfmError, NoBoundState
from .exponential import PhysicalPotential, exp_critical_height, exp_energy
from .general import general_critical_height, general_energy
from .nmodel import EtaRational, parse_nmodel
from .yukawa import hulthen_critical_estimate, yukawa_critical_height, yukawa_energy

EXIT_OK, EXIT_ERROR, EXIT_UNBOUND = 0, 1, 2
ABSENT = "*"

POTENTIALS = {"exp": 0.0, "yukawa": -1.0}

log = logging.getLogger("afmspec")


class Table:
    def __init__(self, columns: Sequence[str], rows: Optional[List[list]] = None, extra: Optional[dict] = None):
        self.columns = list(columns)
        self.rows = rows or []
        self.extra = extra or {}

    def emit(self, fmt: str, out=None):
        out = out or sys.stdout
        if fmt == "json":
            payload = {"rows": [dict(zip(self.columns, r)) for r in self.rows]}
            payload.update(self.extra)
            json.dump(payload, out, indent=2, default=_json_default)
            out.write("\n")
            return
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.columns)
        for r in self.rows:
            writer.writerow([_csv_cell(v) for v in r])


def _json_default(obj):
    if hasattr(obj, "item"):
        return obj.item()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _csv_cell(v):
    if v is None:
        return ABSENT
    if isinstance(v, numbers.Integral):
        return int(v)
    if isinstance(v, numbers.Real):
        v = float(v)
        return repr(v) if math.isfinite(v) else ABSENT
    return v


def _lam(args) -> float:
    if args.potential == "general":
        if args.lam is None:
            raise AfmError("--potential general needs --lambda")
        return float(args.lam)
    return POTENTIALS[args.potential]


def _x0(text: str):
    """``fit``, ``fit:A`` or ``exact`` -> (source, A)."""
    if text == "exact":
        return "exact", 2.0
    if text == "fit":
        return "fit", 2.0
    if text.startswith("fit:"):
        return "fit", float(text[4:])
    raise argparse.ArgumentTypeError(f"bad --x0 value {text!r}")


def _nmodel(text: Optional[str], lam: float):
    return parse_nmodel(text) if text else EtaRational(lam)


def afm_energy(g: float, lam: float, N: float, x0=("fit", 2.0)) -> float:
    """Dimensionless AFM energy; raises NoBoundState when absent or non-negative."""
    if lam == 0.0:
        eps = exp_energy(g, N)
    elif lam == -1.0:
        eps = yukawa_energy(g, N, x0[0], x0[1])
    else:
        eps = general_energy(g, lam, N, x0[0])
    if not eps < 0.0:
        raise NoBoundState(f"energy {eps:.6g} is not negative")
    return eps


def _level_or_none(g, lam, N, x0):
    try:
        return afm_energy(g, lam, N, x0)
    except (NoBoundState, ValueError):
        return None


# --------------------------------------------------------------------------
# subcommands
# --------------------------------------------------------------------------

def cmd_levels(args) -> Table:
    lam = _lam(args)
    model = _nmodel(args.nmodel, lam)
    x0 = _x0(args.x0)
    table = Table(["n", "l", "N", "eps"])
    if not args.all_bound:
        N = model(args.g, args.n, args.l)
        table.rows.append([args.n, args.l, N, afm_energy(args.g, lam, N, x0)])
        return table
    l = 0
    while l <= args.max_quantum:
        n = 0
        while n <= args.max_quantum:
            N = model(args.g, n, l)
            eps = _level_or_none(args.g, lam, N, x0)
            if eps is None:
                break
            table.rows.append([n, l, N, eps])
            n += 1
        if n == 0:
            break
        l += 1
    return table


def cmd_physical(args) -> Table:
    pot = PhysicalPotential(args.m, args.alpha, args.beta, args.lam)
    lam = float(args.lam)
    N = _nmodel(args.nmodel, lam)(pot.g, args.n, args.l)
    eps = afm_energy(pot.g, lam, N, _x0(args.x0))
    return Table(["n", "l", "g", "N", "eps", "energy"],
                 [[args.n, args.l, pot.g, N, eps, pot.energy_unit * eps]])


def _critical(lam: float, model: str, n: int, l: int, nmodel):
    if model == "exact":
        return oracle.exact_critical_height(lam, n, l)
    if model == "afm":
        return general_critical_height(lam, nmodel(0.0, n, l))
    if model == "hulthen":
        if lam != -1.0 or l != 0 or n > 1:
            return None
        return hulthen_critical_estimate(n)
    if lam == 0.0:
        return exp_critical_height(n, l, model)
    if lam == -1.0:
        return yukawa_critical_height(n, l, model)
    raise AfmError(f"model {model!r} exists only for the exponential and Yukawa potentials")


def cmd_critical(args) -> Table:
    lam = _lam(args)
    nmodel = _nmodel(args.nmodel, lam)
    table = Table(["n", "l", "g_crit"])
    for n in range(args.nmax + 1):
        for l in range(args.lmax + 1):
            table.rows.append([n, l, _critical(lam, args.model, n, l, nmodel)])
    return table


def _solver(args) -> oracle.SolverConfig:
    return oracle.SolverConfig(method=args.oracle, mesh_size=args.mesh)


def cmd_compare(args) -> Table:
    lam = _lam(args)
    x0 = _x0(args.x0)
    approximants = [calibration.make_approximant(name, lam, x0[0], x0[1])
                    for name in args.approximants.split(",") if name.strip()]
    report = calibration.build_report(args.g, lam, approximants, cfg=_solver(args))
    stats = [dict(label=s.label, found=s.found, total=s.total, delta_min=s.delta_min,
                  delta_max=s.delta_max, delta_mean=s.delta_mean) for s in report.stats]
    if args.stats:
        return Table(["label", "found", "total", "delta_min", "delta_max", "delta_mean"],
                     [list(s.values()) for s in stats])
    cols = ["n", "l", "eps_exact"] + [f"eps_{lab}" for lab in report.labels]
    cols += [f"rel_err_pct_{lab}" for lab in report.labels] + ["near_zero"]
    rows = []
    for r in report.rows:
        errs = [None if a is None else 100.0 * abs(a - r.exact) / abs(r.exact) for a in r.approx]
        rows.append([r.n, r.l, r.exact, *r.approx, *errs, int(r.near_zero)])
    return Table(cols, rows, {"stats": stats})


def cmd_fit(args) -> Table:
    lam = _lam(args)
    g_list = [float(v) for v in args.g_list.split(",")] if args.g_list else None
    data = calibration.refit(lam, g_list, sqrtnl=args.sqrtnl, cfg=_solver(args))
    per_g = [dict(g=g, chi=chi, **{k: data.d_min[k][i] for k in data.names})
             for i, (g, chi) in enumerate(zip(data.g_values, data.chi))]
    if args.per_g:
        return Table(["g", *data.names, "chi"], [[d["g"], *(d[k] for k in data.names), d["chi"]] for d in per_g])
    rows = [[name, f.hyperbola.p, f.hyperbola.q, f.hyperbola.r, f.residual, int(f.degenerate)]
            for name, f in data.fits.items()]
    return Table(["coefficient", "p", "q", "r", "residual", "degenerate"], rows, {"per_g": per_g})


def cmd_oracle(args) -> Table:
    lam = _lam(args)
    res = oracle.solve_radial(oracle.DimensionlessProblem(args.g, lam), args.n, args.l, _solver(args))
    return Table(["n", "l", "eps", "converged", "residual"],
                 [[res.n, res.l, res.epsilon, int(res.converged), res.residual]])


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

def _add_potential(p, with_g=True):
    p.add_argument("--potential", choices=("exp", "yukawa", "general"), required=True)
    p.add_argument("--lambda", dest="lam", type=float, help="exponent for --potential general")
    if with_g:
        p.add_argument("--g", type=float, required=True, help="dimensionless coupling 2m alpha / beta^(lam+2)")


def _add_oracle(p):
    p.add_argument("--oracle", choices=("auto", "mesh", "shooting"), default="auto",
                   help="auto: mesh for integer lambda, shooting otherwise")
    p.add_argument("--mesh", type=int, default=400, help="Lagrange mesh size")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="afmspec", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("levels", help="AFM energies of q^2 - g x^lam e^-x")
    _add_potential(p)
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--l", type=int, default=0)
    p.add_argument("--all-bound", action="store_true", help="list every level with a negative AFM energy")
    p.add_argument("--max-quantum", type=int, default=50, help=argparse.SUPPRESS)
    p.add_argument("--nmodel", help="bcdef:ETA | coulomb | bcexp | abcdexp | bcyuk | abcdyuk | fixed:B,C")
    p.add_argument("--x0", default="fit", help="fit | fit:A | exact (Yukawa and general only)")
    p.set_defaults(func=cmd_levels)

    p = sub.add_parser("physical", help="AFM energy in physical units, E = beta^2 eps / 2m")
    for name in ("m", "alpha", "beta"):
        p.add_argument(f"--{name}", type=float, required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--nmodel")
    p.add_argument("--x0", default="fit")
    p.set_defaults(func=cmd_physical)

    p = sub.add_parser("critical", help="critical heights for n <= nmax, l <= lmax")
    _add_potential(p, with_g=False)
    p.add_argument("--model", required=True,
                   choices=("afm", "bessel", "linear", "sqrtnl", "empirical", "empirical_full", "empirical_asymptotic",
                            "calibrated_exact", "calibrated_variational", "hulthen", "exact"))
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--lmax", type=int, default=3)
    p.add_argument("--nmodel", help="N model for --model afm (default bcdef:LAMBDA)")
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("compare", help="approximate vs oracle spectrum with quality statistics")
    _add_potential(p)
    p.add_argument("--approximants", required=True, help="comma-separated N models and/or 'empirical'")
    p.add_argument("--x0", default="fit")
    p.add_argument("--stats", action="store_true", help="print the (R, delta) summary instead of rows")
    _add_oracle(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("fit", help="refit N(g) coefficients against oracle spectra")
    _add_potential(p, with_g=False)
    p.add_argument("--g-list", help="comma-separated g grid (default depends on the potential)")
    p.add_argument("--sqrtnl", action="store_true", help="fit b, lc, c and the sqrt(nl) coefficient")
    p.add_argument("--per-g", action="store_true", help="print per-g optima instead of fitted hyperbolas")
    _add_oracle(p)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("oracle", help="numerical eigenvalue of one level")
    _add_potential(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    _add_oracle(p)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        table = args.func(args)
    except NoBoundState as exc:
        print(f"afmspec: unbound: {exc}", file=sys.stderr)
        return EXIT_UNBOUND
    except (AfmError, ValueError, argparse.ArgumentTypeError) as exc:
        print(f"afmspec: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    table.emit(args.format)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
