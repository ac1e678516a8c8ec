"""Schwarz's solution of Bjorling's problem and the base isotropic curve."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analytic import AnalyticCurve3, AnalyticScalar, cross, dot
from .errors import DenominatorVanishes, NotOrthogonal, NotUnitNormal
from .normal_field import NormalFieldPack

PRECONDITION_TOL = 1e-7


@dataclass(frozen=True)
class IsotropicCurve:
    """Holomorphic null curve ``f``; its real part is a minimal surface."""

    f: AnalyticCurve3
    anchor_u0: float

    @property
    def domain(self):
        return self.f.domain

    def isotropy_defect(self) -> AnalyticScalar:
        df = self.f.derivative()
        return dot(df, df)

    def surface(self, u, v) -> np.ndarray:
        """``X(u, v) = Re f(u + iv)``, stacked along the first axis."""
        w = np.asarray(u) + 1j * np.asarray(v)
        return np.real(self.f(w))


@dataclass(frozen=True)
class BaseDatum:
    """Linearisation point of the solver: ``gamma0 = id`` and ``d0``."""

    a: AnalyticCurve3
    nf: NormalFieldPack
    d0: AnalyticCurve3
    a0: IsotropicCurve
    denom: AnalyticScalar
    da: AnalyticCurve3
    dd0: AnalyticCurve3

    @property
    def domain(self):
        return self.a.domain

    @property
    def perm(self):
        return self.nf.perm


def schwartz_solve(a: AnalyticCurve3, n: AnalyticCurve3, u0: float | None = None) -> IsotropicCurve:
    """``f = a - i * int_{u0}^w n x a'``.

    Raises NotUnitNormal / NotOrthogonal if ``n`` is not a unit normal
    along ``a`` (checked at interval nodes).
    """
    dom = a.domain
    u0 = dom.center if u0 is None else float(u0)
    da = a.derivative()
    nodes = dom.nodes()
    nv = n._eval(nodes)
    av = da._eval(nodes)
    unit = np.max(np.abs(np.sum(nv * nv, axis=0) - 1.0))
    if unit > PRECONDITION_TOL:
        raise NotUnitNormal(f"<n, n> - 1 reaches {unit:.2e}")
    orth = np.max(np.abs(np.sum(nv * av, axis=0))) / max(1.0, np.max(np.abs(av)))
    if orth > PRECONDITION_TOL:
        raise NotOrthogonal(f"<n, a'> reaches {orth:.2e}")
    integral = cross(n, da).antiderivative(u0)
    return IsotropicCurve(a - integral * 1j, u0)


def build_base(a: AnalyticCurve3, nf: NormalFieldPack, u0: float | None = None, tol: float = 1e-8) -> BaseDatum:
    dom = a.domain
    u0 = nf.anchor_u0 if u0 is None else float(u0)
    da = a.derivative()
    dd0 = cross(nf.n0, da)
    d0 = dd0.antiderivative(u0)
    p = nf.perm
    denom = AnalyticScalar.map(
        lambda aj, di, ai, dj: aj * di - ai * dj, da[p.j], dd0[p.i], da[p.i], dd0[p.j]
    )
    inf = denom.inf_modulus()
    if inf <= tol:
        raise DenominatorVanishes(f"inf |a_j' d_i0' - a_i' d_j0'| = {inf:.2e}")
    return BaseDatum(
        a=a,
        nf=nf,
        d0=d0,
        a0=IsotropicCurve(a - d0 * 1j, u0),
        denom=denom,
        da=da,
        dd0=dd0,
    )
