"""Analytic unit normal along a curve, built from an arcsine angle.

For a permutation ``(i, j, k)`` of the coordinates the construction is

    theta = arcsin(a_j' / R),          R = sqrt(a_i'^2 + a_j'^2)
    Q0    = a_k'^2 + (a_i' cos(theta) + a_j' sin(theta))^2
    n0    = (p1, p2, p3) / q0,         q0 = sqrt(Q0)

with ``p1 = a_k' cos(theta)`` placed in slot i, ``p2 = a_k' sin(theta)`` in
slot j and ``p3 = -(a_i' cos(theta) + a_j' sin(theta))`` in slot k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .analytic import (
    AnalyticCurve3,
    AnalyticScalar,
    BranchSpec,
    arcsin_series,
    sqrt_branch,
)
from .errors import MinterpError, NoAdmissiblePermutation

MARGIN = 1e-8


@dataclass(frozen=True)
class IndexPermutation:
    """Zero-based coordinate roles ``(i, j, k)``."""

    i: int
    j: int
    k: int

    def __post_init__(self):
        if sorted((self.i, self.j, self.k)) != [0, 1, 2]:
            raise ValueError(f"not a permutation of (0, 1, 2): {(self.i, self.j, self.k)}")

    @classmethod
    def from_one_based(cls, perm) -> "IndexPermutation":
        i, j, k = (int(p) - 1 for p in perm)
        return cls(i, j, k)

    def one_based(self) -> tuple[int, int, int]:
        return (self.i + 1, self.j + 1, self.k + 1)

    def assemble(self, pi, pj, pk) -> AnalyticCurve3:
        """Place three scalars at coordinate slots i, j, k."""
        slots = [None, None, None]
        slots[self.i], slots[self.j], slots[self.k] = pi, pj, pk
        return AnalyticCurve3(slots)

    def __str__(self):
        return "({},{},{})".format(*self.one_based())


ALL_PERMUTATIONS = tuple(IndexPermutation(*p) for p in itertools.permutations(range(3)))


@dataclass(frozen=True)
class ConditionReport:
    perm: IndexPermutation
    pair_nonzero: bool
    sum_nonzero: bool
    ratio_in_disk: bool
    pair_margin: float
    sum_margin: float
    ratio_margin: float
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.pair_nonzero and self.sum_nonzero and self.ratio_in_disk


@dataclass(frozen=True)
class NormalFieldPack:
    perm: IndexPermutation
    theta: AnalyticScalar
    sin_theta: AnalyticScalar
    cos_theta: AnalyticScalar
    Q0: AnalyticScalar
    q0: AnalyticScalar
    q0_branch: BranchSpec
    n0: AnalyticCurve3
    p01: AnalyticScalar
    tau: float
    Mc: float
    Ms: float
    M1: float
    M2: float
    anchor_u0: float


def _signed_pair_root(ai, aj, u0):
    # The branch of R is signed like a_i' at the anchor so that
    # cos(theta) = a_i'/R; otherwise a_i' cos + a_j' sin != R.
    R, _ = sqrt_branch(ai * ai + aj * aj, u0)
    if np.real(ai(u0) / R(u0)) < 0:
        R = -R
    return R


def validate_conditions(a: AnalyticCurve3, perm: IndexPermutation, u0: float | None = None) -> ConditionReport:
    """Check the three non-degeneracy conditions for ``perm``; never raises."""
    dom = a.domain
    u0 = dom.center if u0 is None else u0
    da = a.derivative()
    ai, aj, ak = da[perm.i], da[perm.j], da[perm.k]
    pair = ai * ai + aj * aj
    total = pair + ak * ak
    pair_m = pair.inf_modulus()
    sum_m = total.inf_modulus()
    scale = max(1.0, da.sup_norm() ** 2)
    pair_ok = pair_m > MARGIN * scale
    sum_ok = sum_m > MARGIN * scale
    ratio_m = -np.inf
    msg = ""
    if pair_ok:
        try:
            R = _signed_pair_root(ai, aj, u0)
            z = aj / R
            sup = float(np.max(np.abs(z._eval(dom.check_points()))))
            ratio_m = 1.0 - sup
        except MinterpError as exc:
            msg = f"{type(exc).__name__}: {exc}"
    else:
        msg = "a_i'^2 + a_j'^2 vanishes"
    return ConditionReport(
        perm=perm,
        pair_nonzero=bool(pair_ok),
        sum_nonzero=bool(sum_ok),
        ratio_in_disk=bool(ratio_m > MARGIN),
        pair_margin=float(pair_m),
        sum_margin=float(sum_m),
        ratio_margin=float(ratio_m),
        message=msg,
    )


def choose_permutation(a: AnalyticCurve3, u0: float | None = None) -> IndexPermutation:
    reports = [validate_conditions(a, p, u0) for p in ALL_PERMUTATIONS]
    for r in reports:
        if r.ok:
            return r.perm
    summary = "; ".join(
        f"{r.perm}: pair={r.pair_margin:.2e} sum={r.sum_margin:.2e} ratio={r.ratio_margin:.2e}"
        for r in reports
    )
    raise NoAdmissiblePermutation(f"no coordinate permutation is admissible ({summary})")


def construct(a: AnalyticCurve3, perm: IndexPermutation | None = None, u0: float | None = None) -> NormalFieldPack:
    dom = a.domain
    u0 = dom.center if u0 is None else float(u0)
    if perm is None:
        perm = choose_permutation(a, u0)
    else:
        report = validate_conditions(a, perm, u0)
        if not report.ok:
            raise NoAdmissiblePermutation(
                f"permutation {perm} fails: pair={report.pair_margin:.2e} "
                f"sum={report.sum_margin:.2e} ratio={report.ratio_margin:.2e} {report.message}"
            )

    da = a.derivative()
    ai, aj, ak = da[perm.i], da[perm.j], da[perm.k]
    R = _signed_pair_root(ai, aj, u0)
    theta = arcsin_series(aj / R)
    sin_t = AnalyticScalar.map(np.sin, theta)
    cos_t, _ = sqrt_branch(1.0 - sin_t * sin_t, u0)

    mix = AnalyticScalar.map(lambda x, y, c, s: x * c + y * s, ai, aj, cos_t, sin_t)
    Q0 = ak * ak + mix * mix
    q0, branch = sqrt_branch(Q0, u0)
    p1 = ak * cos_t
    p2 = ak * sin_t
    p3 = -mix
    n0 = perm.assemble(p1 / q0, p2 / q0, p3 / q0)
    return NormalFieldPack(
        perm=perm,
        theta=theta,
        sin_theta=sin_t,
        cos_theta=cos_t,
        Q0=Q0,
        q0=q0,
        q0_branch=branch,
        n0=n0,
        p01=p1,
        tau=q0.inf_modulus(),
        Mc=cos_t.sup_norm(),
        Ms=sin_t.sup_norm(),
        M1=q0.sup_norm(),
        M2=p1.sup_norm(),
        anchor_u0=u0,
    )
