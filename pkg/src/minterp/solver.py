"""Interpolating a nearby curve: isotropic extension and the chord iteration.

The unknowns are a reparametrisation ``gamma`` and a curve ``d`` whose slots
i and j are real on I.  We solve ``(a - i d) o gamma = C_V`` by iterating

    (gamma, d) <- (gamma, d) - DF0^{-1} ((a - i d) o gamma - C_V)

with the derivative frozen at ``(id, d0)``, where its inverse is explicit.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .analytic import AnalyticCurve3, AnalyticScalar, cross, sqrt_branch
from .bjorling import BaseDatum, IsotropicCurve, build_base
from .errors import (
    B0Vanishes,
    ImaginaryDerivativeResidual,
    MinterpError,
    NonConvergence,
    RangeEscape,
    ZeroOnDomain,
)
from .normal_field import IndexPermutation, NormalFieldPack, construct

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    max_iter: int = 50
    tol: float = 1e-11
    min_step: float = 2.0 ** -10
    range_margin: float = 0.05
    realign_tol: float = 1e-7
    strict_realign: bool = True
    printed_v3_sign: bool = False


@dataclass(frozen=True)
class PerturbPack:
    l: AnalyticCurve3
    B0: AnalyticScalar
    B: AnalyticScalar
    V: AnalyticCurve3


@dataclass(frozen=True)
class NewtonState:
    gamma: AnalyticScalar
    d: AnalyticCurve3
    residual: AnalyticCurve3
    residual_norm: float
    iter: int
    target: IsotropicCurve
    history: tuple = ()


@dataclass(frozen=True)
class InterpolationResult:
    gamma: AnalyticScalar
    D: AnalyticCurve3
    v0: np.ndarray
    surface: IsotropicCurve
    residual_on_I: float
    interp_residual: float
    iterations: int
    residual_norm: float = float("nan")
    history: tuple = ()
    extras: dict = field(default_factory=dict)


def build_V(l: AnalyticCurve3, nf: NormalFieldPack, anchor_u0: float | None = None,
            printed_v3_sign: bool = False) -> PerturbPack:
    """Unit normal along the nearby curve ``l``, built like ``n0``.

    ``printed_v3_sign=True`` drops the minus sign in the k-slot component;
    that variant is neither unit-orthogonal to ``l'`` nor close to ``n0`` and
    exists only for comparison.
    """
    u0 = nf.anchor_u0 if anchor_u0 is None else anchor_u0
    p = nf.perm
    dl = l.derivative()
    li, lj, lk = dl[p.i], dl[p.j], dl[p.k]
    c, s = nf.cos_theta, nf.sin_theta
    mix = AnalyticScalar.map(lambda x, y, cc, ss: x * cc + y * ss, li, lj, c, s)
    B0 = lk * lk + mix * mix
    try:
        B, _ = sqrt_branch(B0, u0, alpha0=nf.q0_branch.alpha0)
    except ZeroOnDomain as exc:
        raise B0Vanishes(str(exc)) from exc
    third = mix / B if printed_v3_sign else -mix / B
    V = p.assemble(lk * c / B, lk * s / B, third)
    return PerturbPack(l=l, B0=B0, B=B, V=V)


def build_CV(l: AnalyticCurve3, pp: PerturbPack, u0: float) -> IsotropicCurve:
    """``C_V = l - i * int_{u0}^w V x l'``."""
    integral = cross(pp.V, l.derivative()).antiderivative(u0)
    return IsotropicCurve(l - integral * 1j, u0)


def apply_DF(base: BaseDatum, V: AnalyticScalar, d: AnalyticCurve3) -> AnalyticCurve3:
    """Derivative at ``(id, d0)``: ``a' V - i V d0' - i d``."""
    comps = []
    for m in range(3):
        comps.append(AnalyticScalar.map(
            lambda am, dm, v, e: (am - 1j * dm) * v - 1j * e,
            base.da[m], base.dd0[m], V, d[m],
        ))
    return AnalyticCurve3(comps)


def apply_DF_inverse(base: BaseDatum, rhs: AnalyticCurve3) -> tuple[AnalyticScalar, AnalyticCurve3]:
    """Closed-form inverse of :func:`apply_DF`.

    The real parts of ``rhs`` in slots i, j are taken on I and continued
    holomorphically (coefficient-wise real part), which fixes ``V``; then
    ``d_m = i (rhs_m - (a_m' - i d0_m') V)``.
    """
    p = base.perm
    ref = rhs.sup_norm()
    Ri = rhs[p.i].real_extension()
    Rj = rhs[p.j].real_extension()
    V = AnalyticScalar.map(
        lambda ri, rj, ai, aj, di, dj, den: ((rj * di - ri * dj) + 1j * (aj * ri - ai * rj)) / den,
        Ri, Rj, base.da[p.i], base.da[p.j], base.dd0[p.i], base.dd0[p.j], base.denom,
        ref_scale=ref,
    )
    d = []
    for m in range(3):
        d.append(AnalyticScalar.map(
            lambda r, am, dm, v: 1j * (r - (am - 1j * dm) * v),
            rhs[m], base.da[m], base.dd0[m], V, ref_scale=ref,
        ))
    return V, AnalyticCurve3(d)


def F_pointwise(base: BaseDatum, gamma: AnalyticScalar, d: AnalyticCurve3, w) -> np.ndarray:
    """``(a - i d)(gamma(w))`` evaluated without refitting."""
    g = gamma._eval(w)
    return base.a._eval(g) - 1j * d._eval(g)


def residual_curve(base, gamma, d, target: IsotropicCurve) -> AnalyticCurve3:
    ref = target.f.sup_norm()
    comps = []
    for m in range(3):
        am, dm, tm = base.a[m], d[m], target.f[m]
        comps.append(AnalyticScalar.from_function(
            lambda w, am=am, dm=dm, tm=tm: am._eval(gamma._eval(w)) - 1j * dm._eval(gamma._eval(w)) - tm._eval(w),
            base.domain, ref_scale=ref,
        ))
    return AnalyticCurve3(comps)


def _residual_norm(base, gamma, d, target) -> float:
    dom = base.domain
    pts = np.concatenate([dom.boundary(), dom.nodes()])
    r = F_pointwise(base, gamma, d, pts) - target.f._eval(pts)
    return float(np.max(np.abs(r)))


def _gamma_in_range(base, gamma, margin) -> bool:
    dom = base.domain
    return dom.contains(gamma._eval(dom.boundary()), margin)


def chord_newton(base: BaseDatum, target: IsotropicCurve, cfg: SolverConfig | None = None) -> NewtonState:
    """Frozen-derivative Newton iteration from ``(id, d0)``.

    Each step is halved until ``gamma`` stays inside the (margin-relaxed)
    ellipse and the residual norm decreases.  Raises RangeEscape when the
    halving floor is hit while out of range, NonConvergence otherwise.
    """
    cfg = cfg or SolverConfig()
    dom = base.domain
    gamma = AnalyticScalar.identity(dom)
    d = base.d0
    norm = _residual_norm(base, gamma, d, target)
    history = [norm]
    it = 0
    while norm >= cfg.tol:
        if it >= cfg.max_iter:
            raise NonConvergence(
                f"residual {norm:.3e} after {it} iterations (tol {cfg.tol:.1e})"
            ).with_stage("chord_newton")
        R = residual_curve(base, gamma, d, target)
        dV, dd = apply_DF_inverse(base, R)
        step = 1.0
        last_out_of_range = False
        while True:
            g_new = gamma - dV * step
            if _gamma_in_range(base, g_new, cfg.range_margin):
                d_new = d - dd * step
                new_norm = _residual_norm(base, g_new, d_new, target)
                last_out_of_range = False
                if np.isfinite(new_norm) and new_norm < norm:
                    break
            else:
                last_out_of_range = True
            step *= 0.5
            if step < cfg.min_step:
                exc_type = RangeEscape if last_out_of_range else NonConvergence
                raise exc_type(
                    f"step halving floor reached at iteration {it} (residual {norm:.3e})"
                ).with_stage("chord_newton")
        gamma, d, norm = g_new, d_new, new_norm
        it += 1
        history.append(norm)
        log.debug("chord iteration %d: residual %.3e, step %g", it, norm, step)
    R = residual_curve(base, gamma, d, target)
    return NewtonState(gamma=gamma, d=d, residual=R, residual_norm=norm, iter=it,
                       target=target, history=tuple(history))


def realign_translation(base: BaseDatum, state: NewtonState, u0: float | None = None,
                        tol: float = 1e-7, strict: bool = True) -> InterpolationResult:
    """Shift the free slot k of ``d`` so that the curve is real on I.

    With ``strict=False`` a large ``Im d_k'`` is recorded in
    ``extras["imag_dk_prime"]`` instead of raising; the residuals then show
    how far ``Re surface`` is from ``a`` on I.
    """
    dom = base.domain
    u0 = base.a0.anchor_u0 if u0 is None else float(u0)
    k = base.perm.k
    nodes = dom.nodes()
    dk_prime = state.d[k].derivative()
    imag = float(np.max(np.abs(np.imag(dk_prime._eval(nodes)))))
    if strict and imag > tol:
        raise ImaginaryDerivativeResidual(
            f"Im d_k' reaches {imag:.3e} on I (tol {tol:.1e})"
        ).with_stage("realign_translation")
    z0 = -complex(state.d[k]._eval(np.array([u0]))[0])
    D = state.d.replace(k, state.d[k] + z0)
    v0 = np.zeros(3)
    v0[k] = z0.imag + 0.0  # no negative zero
    surface = IsotropicCurve(base.a - D * 1j, u0)
    X_on_I = np.real(surface.f._eval(nodes))
    res_I = float(np.max(np.abs(X_on_I - base.a._eval(nodes).real)))
    g = state.gamma._eval(nodes)
    X_on_gamma = np.real(surface.f._eval(g))
    l_shifted = np.real(state.target.f._eval(nodes)) + v0[:, None]
    res_l = float(np.max(np.abs(X_on_gamma - l_shifted)))
    return InterpolationResult(
        gamma=state.gamma, D=D, v0=v0, surface=surface,
        residual_on_I=res_I, interp_residual=res_l, iterations=state.iter,
        residual_norm=state.residual_norm, history=state.history,
        extras={"imag_dk_prime": imag, "perm": base.perm.one_based()},
    )


def interpolate(a: AnalyticCurve3, l: AnalyticCurve3, cfg: SolverConfig | None = None,
                perm: IndexPermutation | None = None, u0: float | None = None) -> InterpolationResult:
    """Full pipeline; errors are re-raised tagged with the failing stage."""
    cfg = cfg or SolverConfig()
    stage = "normal_field"
    try:
        nf = construct(a, perm, u0)
        stage = "build_base"
        base = build_base(a, nf, u0)
        stage = "build_V"
        pp = build_V(l, nf, printed_v3_sign=cfg.printed_v3_sign)
        stage = "build_CV"
        target = build_CV(l, pp, base.a0.anchor_u0)
        stage = "chord_newton"
        state = chord_newton(base, target, cfg)
        stage = "realign_translation"
        return realign_translation(base, state, tol=cfg.realign_tol, strict=cfg.strict_realign)
    except MinterpError as exc:
        if exc.stage is None:
            exc.stage = stage
        raise
