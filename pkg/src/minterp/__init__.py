"""Minimal surfaces interpolating a real-analytic curve and a translate of a
nearby curve, computed with Chebyshev series on a Bernstein ellipse."""

from .analytic import (
    AnalyticCurve3,
    AnalyticScalar,
    BranchSpec,
    DomainSpec,
    arcsin_series,
    compose,
    cross,
    dot,
    fit,
    sqrt_branch,
)
from .bjorling import BaseDatum, IsotropicCurve, build_base, schwartz_solve
from .bounds import BoundsReport, ProbeConfig, compute_eta, probe_epsilon0
from .normal_field import IndexPermutation, NormalFieldPack, choose_permutation, construct, validate_conditions
from .solver import (
    InterpolationResult,
    NewtonState,
    PerturbPack,
    SolverConfig,
    apply_DF,
    apply_DF_inverse,
    build_CV,
    build_V,
    chord_newton,
    interpolate,
    realign_translation,
)
from .verification import (
    SurfaceGrid,
    compare_closed_form,
    interpolation_residuals,
    isotropy_residual,
    surface_checks,
)
