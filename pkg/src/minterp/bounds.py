"""Explicit closeness radius for nearby curves, and an empirical probe for
the radius of the ball on which the chord iteration converges."""

from __future__ import annotations

import logging
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import brentq

from .analytic import AnalyticCurve3, AnalyticScalar
from .bjorling import BaseDatum, IsotropicCurve
from .errors import ConvergenceError, DegenerateConstants, MinterpError
from .normal_field import NormalFieldPack
from .solver import SolverConfig, chord_newton

log = logging.getLogger(__name__)

# (name, source symbol) in report order
REPORT_FIELDS = (
    ("M", "sup norm of a'"),
    ("r", "diameter of the closed domain"),
    ("tau", "inf |q0|"),
    ("M1", "sup |q0|"),
    ("M2", "sup |p01|"),
    ("Mc", "sup |cos theta|"),
    ("Ms", "sup |sin theta|"),
    ("epsilon0", "IFT ball radius (input or probe)"),
    ("epsilon", "target closeness of V to n0"),
    ("delta", "bound on |B0 - Q0|"),
    ("epsilon1", "sqrt of derivative closeness"),
    ("eta", "closeness radius for l"),
)


@dataclass(frozen=True)
class BoundsReport:
    M: float
    r: float
    tau: float
    M1: float
    M2: float
    Mc: float
    Ms: float
    epsilon0: float
    epsilon: float
    delta: float
    epsilon1: float
    eta: float
    safety: float = 0.9

    def P(self, t: float) -> float:
        return (2 * self.M + t * t) * (1 + (self.Mc + self.Ms) ** 2)

    def inequalities(self) -> dict[str, bool]:
        e1sq = self.epsilon1 ** 2
        return {
            "eta = min(epsilon0/2, epsilon1^2)": self.eta == min(self.epsilon0 / 2, e1sq),
            "delta < min(eps tau^3/(4 M2), tau^2/2)":
                self.delta < min(self.epsilon * self.tau ** 3 / (4 * self.M2), self.tau ** 2 / 2),
            "epsilon1^2 P(epsilon1) < delta": e1sq * self.P(self.epsilon1) < self.delta,
            "epsilon1^2 < min(tau^2 eps/(4 Mc M1), eps)":
                e1sq < min(self.tau ** 2 * self.epsilon / (4 * self.Mc * self.M1), self.epsilon),
            "0 < epsilon < min(1, epsilon0/(4(M+2)r))":
                0 < self.epsilon < min(1.0, self.epsilon0 / (4 * (self.M + 2) * self.r)),
            "all constants positive": all(
                v > 0 for k, v in asdict(self).items() if k not in ("Ms",)
            ) and self.Ms >= 0,
        }

    def all_hold(self) -> bool:
        return all(self.inequalities().values())


def compute_eta(nf: NormalFieldPack, a: AnalyticCurve3, epsilon0: float, safety: float = 0.9) -> BoundsReport:
    """Chain of choices epsilon -> delta -> epsilon1 -> eta.

    Strict inequalities are met by scaling each admissible upper bound by
    ``safety``; ``epsilon1`` is the root of ``t^2 P(t) = delta`` (bracketed
    and solved to 1e-12 relative), capped by the second constraint and
    nudged inward.
    """
    if not epsilon0 > 0:
        raise ValueError("epsilon0 must be positive")
    if not 0 < safety < 1:
        raise ValueError("safety must lie in (0, 1)")
    tau, M1, M2, Mc, Ms = nf.tau, nf.M1, nf.M2, nf.Mc, nf.Ms
    if tau <= 0 or M2 <= 0 or Mc <= 0 or M1 <= 0:
        raise DegenerateConstants(f"tau={tau:.3g} M1={M1:.3g} M2={M2:.3g} Mc={Mc:.3g}")
    M = a.derivative().sup_norm()
    r = a.domain.diameter

    eps = safety * min(1.0, epsilon0 / (4 * (M + 2) * r))
    delta = safety * min(eps * tau ** 3 / (4 * M2), tau ** 2 / 2)

    def excess(t):
        return t * t * (2 * M + t * t) * (1 + (Mc + Ms) ** 2) - delta

    hi = 1.0
    while excess(hi) < 0:
        hi *= 2
    t_root = brentq(excess, 0.0, hi, xtol=1e-300, rtol=1e-12)
    cap = np.sqrt(min(tau ** 2 * eps / (4 * Mc * M1), eps))
    eps1 = min(t_root, cap) * (1 - 1e-9)
    eta = min(epsilon0 / 2, eps1 ** 2)
    report = BoundsReport(M=M, r=r, tau=tau, M1=M1, M2=M2, Mc=Mc, Ms=Ms, epsilon0=epsilon0,
                          epsilon=eps, delta=delta, epsilon1=eps1, eta=eta, safety=safety)
    return report


@dataclass(frozen=True)
class ProbeConfig:
    s_max: float = 1.0
    bisect_tol: float = 1e-3
    solver: SolverConfig = SolverConfig(max_iter=30, tol=1e-10)
    direction: tuple = (1.0, 1.0, 1.0)


def _probe_target(base: BaseDatum, direction: AnalyticCurve3, s: float) -> IsotropicCurve:
    # the chord iteration accepts any holomorphic target, isotropic or not
    return IsotropicCurve(base.a0.f + direction * s, base.a0.anchor_u0)


def _converges(base, direction, s, solver_cfg) -> bool:
    try:
        chord_newton(base, _probe_target(base, direction, s), solver_cfg)
        return True
    except (ConvergenceError, MinterpError) as exc:
        log.debug("probe at s=%g failed: %s", s, exc)
        return False


def probe_epsilon0(base: BaseDatum, cfg: ProbeConfig | None = None,
                   direction: AnalyticCurve3 | None = None) -> float:
    """Largest perturbation size ``s`` (to ``bisect_tol``) for which the
    chord iteration still converges on ``a0 + s * direction``.

    ``direction`` defaults to the constant field ``cfg.direction`` scaled to
    unit sup norm.  The result is an empirical estimate; 0.0 means even the
    smallest tried size failed.
    """
    cfg = cfg or ProbeConfig()
    if direction is None:
        vec = np.asarray(cfg.direction, dtype=complex)
        vec = vec / np.max(np.abs(vec))
        direction = AnalyticCurve3.constant(base.domain, vec)
    else:
        direction = direction * (1.0 / direction.sup_norm())
    if _converges(base, direction, cfg.s_max, cfg.solver):
        return cfg.s_max
    lo, hi = 0.0, cfg.s_max
    while hi - lo > cfg.bisect_tol:
        mid = 0.5 * (lo + hi)
        if _converges(base, direction, mid, cfg.solver):
            lo = mid
        else:
            hi = mid
    return lo
