"""Auxiliary-field approximations for bound states of ``-alpha r^lam e^{-beta r}``.

Dimensionless Hamiltonian ``q^2 - g x^lam e^{-x}`` with ``g = 2 m alpha / beta^(lam+2)``;
energies convert back with ``E = beta^2 eps / 2m``.
"""
from .errors import (AfmError, ConvergenceError, DomainError, EmptySum, NoBoundState, NumericalError,
                     SingularFit, UnsupportedLambda)
from .special import Branch, RootConfig, bessel_j, bessel_j0_zero, find_root, lambert_w, lambert_w_array, \
    solve_shifted_exponential
from .powerlaw import QuantumNumbers, b_eta, c_eta, n_eta, power_law_energy
from .nmodel import (ABCD_EXP, ABCD_YUK, BC_EXP, BC_YUK, PRESETS, CoulombLike, EtaRational, FixedBC,
                     FixedSqrtNL, Hyperbola, HyperbolaBC, HyperbolaSqrtNL, Quadratic, parse_nmodel)
from .exponential import (PhysicalPotential, exp_bracket_exact, exp_bracket_poly, exp_critical_height,
                          exp_energy, exp_energy_physical, exp_exact_critical_l0, exp_nu0, exp_z)
from .yukawa import (FBAR, XBAR, critical_shape_parameter, envelope_upper_bound, hulthen_critical_estimate,
                     yukawa_critical_height, yukawa_energy, yukawa_energy_empirical, yukawa_energy_physical,
                     yukawa_x0_exact, yukawa_x0_fit, yukawa_ybar)
from .general import (fbar_lambda, general_critical_height, general_energy, i_lambda, lambda_zero_limit_check,
                      solve_x0_general, x0_fit_general, xbar_lambda)
from .oracle import (DimensionlessProblem, LevelResult, SolverConfig, bound_levels, bound_state_count,
                     exact_critical_height, exp_exact_l0_energy, solve_radial)
from .calibration import (ComparisonReport, FitDataset, build_report, chi_measure, critical_height_stats,
                          fit_hyperbola, make_approximant, optimize_bc, refit)
from ._backend import backend_name

__version__ = "0.1.0"
