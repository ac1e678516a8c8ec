"""Holomorphic functions on a closed Bernstein ellipse.

A function is stored as a truncated Chebyshev series in the variable
``x = (w - c) / h`` where ``[c - h, c + h]`` is the reference interval ``I``.
The series converges on the closed ellipse with foci ``c +- h`` and parameter
``rho``; that ellipse is the working domain for everything downstream.

Coefficients are computed from samples on the ellipse boundary rather than
from samples on ``I``.  Writing ``x = (z + 1/z)/2`` with ``|z| = rho`` turns a
Chebyshev series into a symmetric Laurent series, and the FFT of boundary
samples returns ``c_k rho^k / 2`` directly.  Errors are then controlled in
the sup norm over the ellipse, which is the norm the solver works in.
Continuing values from ``I`` outwards would amplify noise by ``rho^k``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
import scipy.fft
from numpy.polynomial import chebyshev as cheb

from .errors import (
    DomainMismatch,
    NoBranchGap,
    NonResolvable,
    OutOfDomain,
    RangeEscape,
    UnitDiskViolation,
    ZeroOnDomain,
)

__all__ = [
    "DomainSpec",
    "AnalyticScalar",
    "AnalyticCurve3",
    "BranchSpec",
    "fit",
    "sqrt_branch",
    "arcsin_series",
]


@dataclass(frozen=True)
class DomainSpec:
    """Closed Bernstein ellipse around ``[interval_lo, interval_hi]``.

    Besides the geometry this record carries the numerical knobs shared by
    every function living on the domain (fit tolerance, degree cap, sample
    counts), so two functions are compatible iff their specs compare equal.
    """

    interval_lo: float = -1.0
    interval_hi: float = 1.0
    rho: float = 1.2
    boundary_samples: int = 256
    grid_angles: int = 64
    grid_radii: int = 33
    fit_tol: float = 1e-13
    max_degree: int = 4096
    contain_tol: float = 1e-9
    fit_rho_factor: float = 1.0

    def __post_init__(self):
        if not self.interval_lo < self.interval_hi:
            raise ValueError("interval_lo must be < interval_hi")
        if not self.rho > 1.0:
            raise ValueError("rho must exceed 1")
        if self.boundary_samples < 64:
            raise ValueError("boundary_samples must be >= 64")
        if self.grid_angles < 4 or self.grid_radii < 2:
            raise ValueError("interior grid too coarse")
        if not 0 < self.fit_tol < 1:
            raise ValueError("fit_tol must lie in (0, 1)")
        if self.fit_rho_factor < 1.0:
            raise ValueError("fit_rho_factor must be >= 1")

    @property
    def center(self) -> float:
        return 0.5 * (self.interval_lo + self.interval_hi)

    @property
    def half_width(self) -> float:
        return 0.5 * (self.interval_hi - self.interval_lo)

    @property
    def fit_rho(self) -> float:
        """Parameter of the ellipse on which coefficients are sampled."""
        return self.rho * self.fit_rho_factor

    @property
    def semi_major(self) -> float:
        return 0.5 * self.half_width * (self.rho + 1.0 / self.rho)

    @property
    def semi_minor(self) -> float:
        return 0.5 * self.half_width * (self.rho - 1.0 / self.rho)

    @property
    def diameter(self) -> float:
        return 2.0 * self.semi_major

    def to_unit(self, w):
        return (np.asarray(w) - self.center) / self.half_width

    def from_unit(self, x):
        return self.center + self.half_width * np.asarray(x)

    def ellipse_measure(self, w):
        """Ratio of focal-distance sum to its boundary value; <= 1 inside."""
        x = self.to_unit(w)
        return (np.abs(x - 1) + np.abs(x + 1)) / (self.rho + 1.0 / self.rho)

    def contains(self, w, margin: float | None = None) -> bool:
        margin = self.contain_tol if margin is None else margin
        return bool(np.all(self.ellipse_measure(w) <= 1.0 + margin))

    def in_interval(self, u, tol: float = 1e-12) -> bool:
        u = np.asarray(u)
        if np.any(np.iscomplex(u)):
            return False
        span = tol * self.half_width
        return bool(np.all((u.real >= self.interval_lo - span) & (u.real <= self.interval_hi + span)))

    def boundary(self, n: int | None = None) -> np.ndarray:
        n = self.boundary_samples if n is None else n
        z = self.rho * np.exp(2j * np.pi * np.arange(n) / n)
        return self.from_unit(0.5 * (z + 1.0 / z))

    def interior_grid(self) -> np.ndarray:
        # elliptic coordinates: radius 1 is the interval itself, rho the boundary
        s = np.linspace(1.0, self.rho, self.grid_radii)
        phi = 2 * np.pi * np.arange(self.grid_angles) / self.grid_angles
        z = s[:, None] * np.exp(1j * phi[None, :])
        return self.from_unit(0.5 * (z + 1.0 / z)).ravel()

    def nodes(self, n: int = 64) -> np.ndarray:
        """First-kind Chebyshev points on I, in the DCT-II ordering."""
        k = np.arange(n)
        return self.from_unit(np.cos(np.pi * (k + 0.5) / n))

    def check_points(self) -> np.ndarray:
        """Boundary, interior grid and interval nodes combined."""
        return np.concatenate([self.boundary(), self.interior_grid(), self.nodes()])


def _next_pow2(n: int) -> int:
    return 1 << max(int(n) - 1, 1).bit_length()


class AnalyticScalar:
    """A holomorphic function on ``domain`` given by Chebyshev coefficients.

    Instances are immutable: the coefficient array is read-only and every
    operation returns a new object.
    """

    __slots__ = ("domain", "coeffs")

    def __init__(self, domain: DomainSpec, coeffs):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size == 0:
            raise ValueError("empty coefficient list")
        c.setflags(write=False)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "coeffs", c)

    def __setattr__(self, name, value):
        raise AttributeError("AnalyticScalar is immutable")

    def __repr__(self):
        return f"AnalyticScalar(degree={self.degree}, domain={self.domain.interval_lo, self.domain.interval_hi, self.domain.rho})"

    # ------------------------------------------------------------------
    # construction
    @classmethod
    def constant(cls, domain: DomainSpec, value: complex) -> "AnalyticScalar":
        return cls(domain, [value])

    @classmethod
    def identity(cls, domain: DomainSpec) -> "AnalyticScalar":
        return cls(domain, [domain.center, domain.half_width])

    @classmethod
    def from_values(cls, values, domain: DomainSpec) -> "AnalyticScalar":
        """Interpolate values given at ``domain.nodes(len(values))``."""
        v = np.asarray(values, dtype=complex).ravel()
        if v.size == 0:
            raise ValueError("empty sample list")
        n = v.size
        c = (scipy.fft.dct(v.real, type=2) + 1j * scipy.fft.dct(v.imag, type=2)) / n
        c[0] /= 2
        return cls(domain, _chop_trailing(c, domain.fit_tol))

    @classmethod
    def from_function(
        cls,
        fn: Callable[[np.ndarray], np.ndarray],
        domain: DomainSpec,
        degree_hint: int | None = None,
        ref_scale: float = 0.0,
    ) -> "AnalyticScalar":
        """Adaptively fit ``fn`` (vectorised over complex ``w``) on the ellipse.

        The sample count doubles until the top quarter of the weighted
        coefficients ``|c_k| rho^k`` drops below ``fit_tol`` times the
        boundary maximum (or ``ref_scale`` if larger, for functions that are
        small differences of larger ones).  Raises NonResolvable past
        ``max_degree``.
        """
        m = 32 if degree_hint is None else max(32, _next_pow2(2 * (degree_hint + 8)))
        cap = 2 * _next_pow2(domain.max_degree)
        while True:
            coeffs, weighted, scale = _laurent_coeffs(fn, domain, m)
            if not np.all(np.isfinite(weighted)):
                raise NonResolvable("non-finite samples while fitting")
            if scale == 0.0:
                return cls(domain, [0.0])
            scale = max(scale, ref_scale)
            tail = weighted[(3 * len(weighted)) // 4:]
            if tail.max() <= domain.fit_tol * scale:
                keep = np.nonzero(weighted > 0.1 * domain.fit_tol * scale)[0]
                n = 1 if keep.size == 0 else keep[-1] + 1
                return cls(domain, coeffs[:n])
            if m >= cap:
                raise NonResolvable(
                    f"no coefficient decay up to degree {m // 2}; "
                    f"tail/scale = {tail.max() / scale:.2e}"
                )
            m *= 2

    @classmethod
    def map(cls, fn, *args: "AnalyticScalar", degree_hint=None, ref_scale=0.0) -> "AnalyticScalar":
        """Fit ``w -> fn(f1(w), f2(w), ...)`` for scalars sharing a domain."""
        domain = _common_domain(args)
        return cls.from_function(
            lambda w: fn(*(a._eval(w) for a in args)), domain, degree_hint, ref_scale
        )

    # ------------------------------------------------------------------
    # evaluation
    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def _eval(self, w):
        return cheb.chebval(self.domain.to_unit(w), self.coeffs)

    def evaluate(self, w, margin: float | None = None):
        """Evaluate at complex points ``w`` of the closed domain."""
        w = np.asarray(w, dtype=complex)
        if not self.domain.contains(w, margin):
            worst = float(np.max(self.domain.ellipse_measure(w)))
            raise OutOfDomain(f"point outside the ellipse (measure {worst:.6g})")
        out = self._eval(w)
        return out if out.ndim else complex(out)

    __call__ = evaluate

    def node_values(self, n: int = 64) -> np.ndarray:
        return self._eval(self.domain.nodes(n))

    # ------------------------------------------------------------------
    # calculus
    def derivative(self) -> "AnalyticScalar":
        if self.coeffs.size == 1:
            return AnalyticScalar(self.domain, [0.0])
        return AnalyticScalar(self.domain, cheb.chebder(self.coeffs) / self.domain.half_width)

    def antiderivative(self, u0: float) -> "AnalyticScalar":
        """Primitive vanishing at the real anchor ``u0`` in I."""
        if not self.domain.in_interval(u0):
            raise OutOfDomain(f"anchor {u0!r} not in the interval")
        x0 = float(self.domain.to_unit(float(np.real(u0))))
        c = cheb.chebint(self.coeffs, lbnd=x0, scl=self.domain.half_width)
        c[0] -= cheb.chebval(x0, c)
        return AnalyticScalar(self.domain, c)

    def compose_with(self, inner: "AnalyticScalar", margin: float | None = None) -> "AnalyticScalar":
        return compose(self, inner, margin)

    def real_extension(self) -> "AnalyticScalar":
        """Holomorphic extension of ``Re f`` restricted to I."""
        return AnalyticScalar(self.domain, self.coeffs.real)

    def imag_extension(self) -> "AnalyticScalar":
        """Holomorphic extension of ``Im f`` restricted to I."""
        return AnalyticScalar(self.domain, self.coeffs.imag)

    # ------------------------------------------------------------------
    # norms
    def sup_norm(self) -> float:
        d = self.domain
        pts = np.concatenate([d.boundary(), d.nodes()])
        return float(np.max(np.abs(self._eval(pts))))

    def inf_modulus(self) -> float:
        """Estimate of ``inf |f|`` from boundary and interior-grid samples."""
        d = self.domain
        pts = np.concatenate([d.boundary(), d.interior_grid()])
        return float(np.min(np.abs(self._eval(pts))))

    # ------------------------------------------------------------------
    # algebra
    def _coerce(self, other):
        if isinstance(other, AnalyticScalar):
            if other.domain != self.domain:
                raise DomainMismatch("functions live on different domains")
            return other
        if np.isscalar(other) and np.isfinite(other):
            return None
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            c = self.coeffs.copy()
            c[0] += other
            return AnalyticScalar(self.domain, c)
        n = max(self.coeffs.size, o.coeffs.size)
        c = np.zeros(n, dtype=complex)
        c[: self.coeffs.size] += self.coeffs
        c[: o.coeffs.size] += o.coeffs
        return AnalyticScalar(self.domain, c)

    __radd__ = __add__

    def __neg__(self):
        return AnalyticScalar(self.domain, -self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return AnalyticScalar(self.domain, self.coeffs * other)
        if self.coeffs.size == 1:
            return o * complex(self.coeffs[0])
        if o.coeffs.size == 1:
            return self * complex(o.coeffs[0])
        return AnalyticScalar.map(np.multiply, self, o, degree_hint=self.degree + o.degree)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o is None:
            return AnalyticScalar(self.domain, self.coeffs / other)
        _require_nonvanishing(o)
        return AnalyticScalar.map(np.divide, self, o)

    def __rtruediv__(self, other):
        if not np.isscalar(other):
            return NotImplemented
        _require_nonvanishing(self)
        return AnalyticScalar.map(lambda g: other / g, self)

    def __pow__(self, k: int):
        if k != int(k) or k < 0:
            return NotImplemented
        out = AnalyticScalar.constant(self.domain, 1.0)
        for _ in range(int(k)):
            out = out * self
        return out


def _chop_trailing(c: np.ndarray, tol: float) -> np.ndarray:
    mag = np.abs(c)
    top = mag.max()
    if top == 0:
        return c[:1]
    keep = np.nonzero(mag > tol * top)[0]
    return c[: keep[-1] + 1]


def _laurent_coeffs(fn, domain: DomainSpec, m: int):
    rho = domain.fit_rho
    z = rho * np.exp(2j * np.pi * np.arange(m) / m)
    g = np.asarray(fn(domain.from_unit(0.5 * (z + 1.0 / z))), dtype=complex)
    if g.shape != z.shape:
        g = np.broadcast_to(g, z.shape)
    b = np.fft.fft(g)[: m // 2] / m
    k = np.arange(m // 2)
    weighted = 2.0 * np.abs(b)
    weighted[0] = abs(b[0])
    with np.errstate(under="ignore"):
        coeffs = 2.0 * b * rho ** (-k.astype(float))
    coeffs[0] = b[0]
    return coeffs, weighted, float(np.max(np.abs(g)))


def _common_domain(args) -> DomainSpec:
    if not args:
        raise ValueError("need at least one function")
    dom = args[0].domain
    for a in args[1:]:
        if a.domain != dom:
            raise DomainMismatch("functions live on different domains")
    return dom


def _require_nonvanishing(f: AnalyticScalar, tol: float = 1e-14):
    m = f.inf_modulus()
    if m <= tol * max(1.0, f.sup_norm()):
        raise ZeroOnDomain(f"divisor vanishes on the domain (inf |f| ~ {m:.3e})")


def fit(source, domain: DomainSpec, kind: str = "values") -> AnalyticScalar:
    """Build an :class:`AnalyticScalar` from a callable, samples or coefficients.

    ``kind`` selects how an array ``source`` is read: ``"values"`` means
    samples at ``domain.nodes(len(source))``; ``"coeffs"`` means Chebyshev
    coefficients.  Callables are fitted adaptively on the ellipse.
    """
    if callable(source):
        return AnalyticScalar.from_function(source, domain)
    if kind == "values":
        return AnalyticScalar.from_values(source, domain)
    if kind == "coeffs":
        return AnalyticScalar(domain, source)
    raise ValueError(f"unknown kind {kind!r}")


def compose(f: AnalyticScalar, g: AnalyticScalar, margin: float | None = None) -> AnalyticScalar:
    """``w -> f(g(w))``; ``g`` must map the closed ellipse into the domain.

    ``margin`` relaxes the range check (relative to the focal-distance sum),
    which is needed when ``g`` is a small perturbation of the identity.
    """
    dom = _common_domain((f, g))
    gb = g._eval(dom.boundary())
    if not dom.contains(gb, margin):
        worst = float(np.max(dom.ellipse_measure(gb)))
        raise RangeEscape(f"inner function leaves the domain (measure {worst:.6g})")
    return AnalyticScalar.from_function(lambda w: f._eval(g._eval(w)), dom)


class AnalyticCurve3:
    """Three :class:`AnalyticScalar` components on one domain."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[AnalyticScalar]):
        comps = tuple(components)
        if len(comps) != 3:
            raise ValueError("a curve has exactly three components")
        _common_domain(comps)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("AnalyticCurve3 is immutable")

    @classmethod
    def constant(cls, domain: DomainSpec, vec) -> "AnalyticCurve3":
        return cls([AnalyticScalar.constant(domain, v) for v in vec])

    @classmethod
    def from_functions(cls, fns, domain: DomainSpec) -> "AnalyticCurve3":
        return cls([AnalyticScalar.from_function(fn, domain) for fn in fns])

    @property
    def domain(self) -> DomainSpec:
        return self.components[0].domain

    def __getitem__(self, k: int) -> AnalyticScalar:
        return self.components[k]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return 3

    def __repr__(self):
        degs = [c.degree for c in self.components]
        return f"AnalyticCurve3(degrees={degs})"

    def evaluate(self, w, margin: float | None = None) -> np.ndarray:
        return np.array([c.evaluate(w, margin) for c in self.components])

    __call__ = evaluate

    def _eval(self, w) -> np.ndarray:
        return np.array([c._eval(w) for c in self.components])

    def node_values(self, n: int = 64) -> np.ndarray:
        return self._eval(self.domain.nodes(n))

    def derivative(self) -> "AnalyticCurve3":
        return AnalyticCurve3([c.derivative() for c in self.components])

    def antiderivative(self, u0: float) -> "AnalyticCurve3":
        return AnalyticCurve3([c.antiderivative(u0) for c in self.components])

    def real_extension(self) -> "AnalyticCurve3":
        return AnalyticCurve3([c.real_extension() for c in self.components])

    def compose_with(self, inner: AnalyticScalar, margin: float | None = None) -> "AnalyticCurve3":
        return AnalyticCurve3([compose(c, inner, margin) for c in self.components])

    def sup_norm(self) -> float:
        """Max over components of the sup over the closed domain."""
        return max(c.sup_norm() for c in self.components)

    def replace(self, k: int, value: AnalyticScalar) -> "AnalyticCurve3":
        comps = list(self.components)
        comps[k] = value
        return AnalyticCurve3(comps)

    def __add__(self, other):
        if isinstance(other, AnalyticCurve3):
            return AnalyticCurve3([a + b for a, b in zip(self, other)])
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, AnalyticCurve3):
            return AnalyticCurve3([a - b for a, b in zip(self, other)])
        return NotImplemented

    def __neg__(self):
        return AnalyticCurve3([-a for a in self])

    def __mul__(self, other):
        if isinstance(other, AnalyticCurve3):
            return NotImplemented
        return AnalyticCurve3([a * other for a in self])

    __rmul__ = __mul__


def _boundary_max(f: AnalyticScalar) -> float:
    return float(np.max(np.abs(f._eval(f.domain.boundary()))))


def _product_scale(u: AnalyticCurve3, v: AnalyticCurve3) -> float:
    # bilinear forms of unit/null vectors cancel to ~0; tolerances refer to
    # the size of the factors instead
    return 3.0 * max(_boundary_max(c) for c in u) * max(_boundary_max(c) for c in v)


def dot(u: AnalyticCurve3, v: AnalyticCurve3) -> AnalyticScalar:
    """Complex-bilinear inner product (no conjugation)."""
    args = tuple(u) + tuple(v)
    hint = max(a.degree for a in u) + max(b.degree for b in v)
    return AnalyticScalar.map(
        lambda u1, u2, u3, v1, v2, v3: u1 * v1 + u2 * v2 + u3 * v3, *args,
        degree_hint=hint, ref_scale=_product_scale(u, v),
    )


def cross(u: AnalyticCurve3, v: AnalyticCurve3) -> AnalyticCurve3:
    hint = max(a.degree for a in u) + max(b.degree for b in v)
    ref = _product_scale(u, v)
    u1, u2, u3 = u
    v1, v2, v3 = v

    def det(a, b, c, d):
        return AnalyticScalar.map(
            lambda p, q, r, s: p * s - q * r, a, b, c, d, degree_hint=hint, ref_scale=ref
        )

    return AnalyticCurve3([det(u2, u3, v2, v3), det(u3, u1, v3, v1), det(u1, u2, v1, v2)])


# ----------------------------------------------------------------------
# branches


@dataclass(frozen=True)
class BranchSpec:
    """Argument cut ``alpha0`` and the sign fixed at the anchor point."""

    alpha0: float
    sign_at_anchor: int


def _winding_number(values: np.ndarray) -> int:
    steps = np.angle(np.roll(values, -1) / values)
    return int(np.rint(steps.sum() / (2 * np.pi)))


def _largest_gap(args: np.ndarray) -> tuple[float, float]:
    a = np.sort(np.mod(args, 2 * np.pi))
    gaps = np.diff(np.append(a, a[0] + 2 * np.pi))
    k = int(np.argmax(gaps))
    return float(np.mod(a[k] + 0.5 * gaps[k] + np.pi, 2 * np.pi) - np.pi), float(gaps[k])


def sqrt_branch(
    Q: AnalyticScalar,
    anchor_u0: float,
    alpha0: float | None = None,
    zero_tol: float = 1e-8,
    min_gap: float = np.pi / 16,
) -> tuple[AnalyticScalar, BranchSpec]:
    """Holomorphic square root of a zero-free ``Q``.

    The argument cut ``alpha0`` defaults to the middle of the widest angular
    gap in the sampled image of ``Q``.  A supplied ``alpha0`` is used only
    if every sample keeps clear of it.  The branch is then signed so that
    its real part is non-negative at ``anchor_u0``.
    """
    dom = Q.domain
    pts = dom.check_points()
    vals = Q._eval(pts)
    scale = max(float(np.max(np.abs(vals))), 1e-300)
    if np.min(np.abs(vals)) <= zero_tol * max(1.0, scale):
        raise ZeroOnDomain(f"inf |Q| = {np.min(np.abs(vals)):.3e} on the samples")
    if _winding_number(Q._eval(dom.boundary(4 * dom.boundary_samples))) != 0:
        raise ZeroOnDomain("Q winds around 0 along the boundary")

    args = np.angle(vals)
    if alpha0 is not None:
        clearance = np.min(np.abs(np.angle(np.exp(1j * (args - alpha0)))))
        if clearance < 0.5 * min_gap:
            alpha0 = None
    if alpha0 is None:
        alpha0, gap = _largest_gap(args)
        if gap < min_gap:
            raise NoBranchGap(f"sampled arguments leave no gap (widest {gap:.3g} rad)")

    def branch(w, sign=1):
        q = Q._eval(w)
        theta = alpha0 + np.mod(np.angle(q) - alpha0, 2 * np.pi)
        return sign * np.sqrt(np.abs(q)) * np.exp(0.5j * theta)

    sign = 1 if np.real(branch(np.array([anchor_u0]))[0]) >= 0 else -1
    root = AnalyticScalar.from_function(lambda w: branch(w, sign), dom)

    nodes = dom.nodes()
    resid = np.max(np.abs(root._eval(nodes) ** 2 - Q._eval(nodes)))
    if resid > 1e-10 * scale:
        raise NonResolvable(f"square root residual {resid:.2e} too large")
    rb = root._eval(dom.boundary())
    if np.max(np.abs(np.angle(np.roll(rb, -1) / rb))) >= np.pi / 2:
        raise NoBranchGap("square root jumps along the boundary")
    return root, BranchSpec(alpha0=float(alpha0), sign_at_anchor=sign)


def _arcsin_pointwise(z: np.ndarray, switch: float = 0.9, term_tol: float = 1e-16) -> np.ndarray:
    # Maclaurin series of arcsin; slow near |z| = 1 so those points use
    # numpy's principal arcsin, which is the same function on the open disk.
    z = np.asarray(z, dtype=complex)
    out = np.arcsin(z)
    near = np.abs(z) <= switch
    if np.any(near):
        zz = z[near]
        z2 = zz * zz
        power = zz.copy()
        total = zz.copy()
        a = 1.0
        n = 0
        while True:
            a *= (2 * n + 1) / (2 * n + 2)
            n += 1
            power = power * z2
            term = a * power / (2 * n + 1)
            total += term
            if np.max(np.abs(term)) < term_tol:
                break
        out[near] = total
    return out


def arcsin_series(z: AnalyticScalar, margin: float = 1e-6) -> AnalyticScalar:
    """``theta`` with ``sin(theta) = z``, valid while ``|z| < 1 - margin``."""
    pts = z.domain.check_points()
    top = float(np.max(np.abs(z._eval(pts))))
    if top >= 1.0 - margin:
        raise UnitDiskViolation(f"sup |z| = {top:.6g} reaches the unit circle")
    return AnalyticScalar.from_function(lambda w: _arcsin_pointwise(z._eval(w)), z.domain)
