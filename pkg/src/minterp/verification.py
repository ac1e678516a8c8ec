"""Independent checks on produced surfaces.

Nothing here reuses solver internals: residuals are recomputed from the
returned curves, and minimality is certified through finite differences on
a parameter grid (conformal + harmonic).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .analytic import AnalyticCurve3, DomainSpec
from .bjorling import IsotropicCurve
from .errors import OutOfDomain, UnknownReference

MIN_GRID = 8


@dataclass(frozen=True)
class SurfaceGrid:
    """``points[a, b] = X(u_a, v_b)`` on a uniform rectangle inside the domain."""

    u_range: tuple[float, float]
    v_range: tuple[float, float]
    nu: int
    nv: int
    points: np.ndarray

    def __post_init__(self):
        if self.nu < MIN_GRID or self.nv < MIN_GRID:
            raise ValueError(f"grid must be at least {MIN_GRID}x{MIN_GRID}")
        if self.points.shape != (self.nu, self.nv, 3):
            raise ValueError(f"points shape {self.points.shape} != ({self.nu}, {self.nv}, 3)")

    @property
    def u(self) -> np.ndarray:
        return np.linspace(*self.u_range, self.nu)

    @property
    def v(self) -> np.ndarray:
        return np.linspace(*self.v_range, self.nv)

    @property
    def hu(self) -> float:
        return (self.u_range[1] - self.u_range[0]) / (self.nu - 1)

    @property
    def hv(self) -> float:
        return (self.v_range[1] - self.v_range[0]) / (self.nv - 1)

    @classmethod
    def sample(cls, surface: IsotropicCurve, nu: int = 64, nv: int = 32,
               u_range: tuple[float, float] | None = None,
               v_range: tuple[float, float] | None = None,
               fraction: float = 0.6) -> "SurfaceGrid":
        """Evaluate ``Re f`` on a grid; default rectangle is ``fraction`` of
        the ellipse semi-axes around the interval midpoint."""
        dom = surface.domain
        du, dv = default_ranges(dom, fraction)
        u_range = du if u_range is None else tuple(u_range)
        v_range = dv if v_range is None else tuple(v_range)
        corners = np.array([complex(u, v) for u in u_range for v in v_range])
        if not dom.contains(corners, margin=0.0):
            raise OutOfDomain(f"grid rectangle u={u_range} v={v_range} leaves the domain")
        u = np.linspace(*u_range, nu)
        v = np.linspace(*v_range, nv)
        w = u[:, None] + 1j * v[None, :]
        X = np.real(surface.f.evaluate(w))
        return cls(u_range=tuple(map(float, u_range)), v_range=tuple(map(float, v_range)),
                   nu=nu, nv=nv, points=np.moveaxis(X, 0, -1))


def default_ranges(dom: DomainSpec, fraction: float = 0.6):
    a, b = fraction * dom.semi_major, fraction * dom.semi_minor
    return (dom.center - a, dom.center + a), (-b, b)


def isotropy_residual(f: IsotropicCurve) -> float:
    dom = f.domain
    pts = np.concatenate([dom.nodes(), dom.boundary()])
    df = f.f.derivative()._eval(pts)
    return float(np.max(np.abs(np.sum(df * df, axis=0))))


@dataclass(frozen=True)
class SurfaceCheckReport:
    harmonicity: float
    conformality_diag: float
    conformality_cross: float
    mean_curvature: float | None = None

    def as_dict(self) -> dict[str, float]:
        out = {
            "harmonicity": self.harmonicity,
            "conformality_diag": self.conformality_diag,
            "conformality_cross": self.conformality_cross,
        }
        if self.mean_curvature is not None:
            out["mean_curvature"] = self.mean_curvature
        return out


def surface_checks(g: SurfaceGrid, mean_curvature: bool = False) -> SurfaceCheckReport:
    """Max over interior points of ``|Lap X|``, ``||X_u|^2 - |X_v|^2|`` and
    ``|<X_u, X_v>|`` (second-order central differences)."""
    X, hu, hv = g.points, g.hu, g.hv
    c = X[1:-1, 1:-1]
    Xu = (X[2:, 1:-1] - X[:-2, 1:-1]) / (2 * hu)
    Xv = (X[1:-1, 2:] - X[1:-1, :-2]) / (2 * hv)
    Xuu = (X[2:, 1:-1] - 2 * c + X[:-2, 1:-1]) / hu ** 2
    Xvv = (X[1:-1, 2:] - 2 * c + X[1:-1, :-2]) / hv ** 2
    E = np.sum(Xu * Xu, axis=-1)
    G = np.sum(Xv * Xv, axis=-1)
    F = np.sum(Xu * Xv, axis=-1)
    H = None
    if mean_curvature:
        Xuv = (X[2:, 2:] - X[2:, :-2] - X[:-2, 2:] + X[:-2, :-2]) / (4 * hu * hv)
        N = np.cross(Xu, Xv)
        N = N / np.linalg.norm(N, axis=-1, keepdims=True)
        e, f, gg = (np.sum(N * Y, axis=-1) for Y in (Xuu, Xuv, Xvv))
        H = float(np.max(np.abs((e * G - 2 * f * F + gg * E) / (2 * (E * G - F * F)))))
    return SurfaceCheckReport(
        harmonicity=float(np.max(np.linalg.norm(Xuu + Xvv, axis=-1))),
        conformality_diag=float(np.max(np.abs(E - G))),
        conformality_cross=float(np.max(np.abs(F))),
        mean_curvature=H,
    )


def interpolation_residuals(res, a: AnalyticCurve3, l: AnalyticCurve3) -> tuple[float, float]:
    """``(sup|Re X(u) - a(u)|, sup|Re X(gamma(u)) - l(u) - v0|)`` over I-nodes."""
    nodes = a.domain.nodes()
    f = res.surface.f
    on_I = np.max(np.abs(np.real(f._eval(nodes)) - np.real(a._eval(nodes))))
    g = res.gamma._eval(nodes)
    shifted = np.real(l._eval(nodes)) + np.asarray(res.v0, dtype=float)[:, None]
    on_l = np.max(np.abs(np.real(f._eval(g)) - shifted))
    return float(on_I), float(on_l)


def _plane(u, v):
    return np.stack([u, v, np.zeros_like(u)], axis=-1)


def _catenoid(u, v):
    return np.stack([np.cos(u) * np.cosh(v), np.sin(u) * np.cosh(v), -v], axis=-1)


def _helicoid(u, v):
    return np.stack([np.sin(u) * np.sinh(v), -np.cos(u) * np.sinh(v), u], axis=-1)


# closed forms of the Schwarz integral for the matching curve/normal data
REFERENCES: dict[str, Callable] = {
    "plane": _plane,          # a=(u,0,0), n=(0,0,1)
    "catenoid": _catenoid,    # a=(cos u, sin u, 0), n=(-cos u, -sin u, 0)
    "helicoid": _helicoid,    # a=(0,0,u), n=(cos u, sin u, 0)
}


def compare_closed_form(g: SurfaceGrid, reference: str) -> float:
    try:
        ref = REFERENCES[reference]
    except KeyError:
        raise UnknownReference(
            f"unknown reference {reference!r}; expected one of {sorted(REFERENCES)}"
        ) from None
    U, V = np.meshgrid(g.u, g.v, indexing="ij")
    return float(np.max(np.abs(g.points - ref(U, V))))
