import cmath

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minterp.analytic import (
    AnalyticCurve3,
    AnalyticScalar,
    DomainSpec,
    arcsin_series,
    compose,
    cross,
    dot,
    fit,
    sqrt_branch,
)
from minterp.errors import (
    DomainMismatch,
    OutOfDomain,
    RangeEscape,
    UnitDiskViolation,
    ZeroOnDomain,
)

DOM = DomainSpec(-1.0, 1.0, 1.2)
SHIFTED = DomainSpec(-0.8, 0.8, 1.2)


def probe_points(dom, n=97):
    """Boundary, interval and interior points for oracle comparisons."""
    return np.concatenate([dom.boundary(n), dom.nodes(33), 0.7 * dom.boundary(n) + 0.3 * dom.center])


coeff_lists = st.lists(
    st.floats(-1, 1, allow_nan=False, allow_infinity=False), min_size=1, max_size=12
)


def test_domain_geometry():
    assert DOM.semi_major == pytest.approx(0.5 * (1.2 + 1 / 1.2))
    assert DOM.semi_minor == pytest.approx(0.5 * (1.2 - 1 / 1.2))
    assert DOM.diameter == pytest.approx(2 * DOM.semi_major)
    assert DOM.contains(DOM.boundary())
    assert not DOM.contains(np.array([1.1 * DOM.semi_major]), margin=0.0)
    assert DOM.contains(DOM.nodes())


@pytest.mark.parametrize("kw", [dict(interval_lo=1.0, interval_hi=0.0), dict(rho=1.0), dict(boundary_samples=32)])
def test_domain_rejects_bad_specs(kw):
    with pytest.raises(ValueError):
        DomainSpec(**kw)


@pytest.mark.parametrize("fn", [np.cos, np.exp, lambda w: 1 / (w - 3.0), lambda w: np.sin(3 * w) * w ** 2])
@pytest.mark.parametrize("dom", [DOM, SHIFTED])
def test_fit_matches_numpy_on_closed_ellipse(fn, dom):
    f = AnalyticScalar.from_function(fn, dom)
    pts = probe_points(dom)
    assert np.max(np.abs(f._eval(pts) - fn(pts))) < 1e-13


def test_identity_and_constant():
    x = AnalyticScalar.identity(SHIFTED)
    w = SHIFTED.boundary(17)
    assert np.allclose(x._eval(w), w, atol=1e-15)
    assert AnalyticScalar.constant(DOM, 2.5)(0.3) == 2.5


def test_sup_and_inf_on_ellipse():
    x = AnalyticScalar.identity(DOM)
    assert x.sup_norm() == pytest.approx(DOM.semi_major, rel=1e-12)
    assert (x + 5.0).inf_modulus() == pytest.approx(5.0 - DOM.semi_major, rel=1e-12)


def test_evaluate_outside_raises():
    f = AnalyticScalar.identity(DOM)
    with pytest.raises(OutOfDomain):
        f.evaluate(2.0)


def test_domain_mismatch():
    with pytest.raises(DomainMismatch):
        AnalyticScalar.identity(DOM) + AnalyticScalar.identity(SHIFTED)


def test_from_values_roundtrip():
    nodes = DOM.nodes(40)
    f = fit(np.exp(nodes), DOM, kind="values")
    w = probe_points(DOM)
    assert np.max(np.abs(f._eval(w) - np.exp(w))) < 1e-12


@given(coeff_lists)
def test_coeffs_evaluate_like_numpy_chebval(cs):
    f = fit(np.array(cs), SHIFTED, kind="coeffs")
    w = probe_points(SHIFTED, 31)
    x = (w - SHIFTED.center) / SHIFTED.half_width
    assert np.allclose(f._eval(w), np.polynomial.Chebyshev(cs)(x), atol=1e-13)


@given(coeff_lists, coeff_lists)
def test_product_matches_pointwise(c1, c2):
    f = AnalyticScalar(DOM, c1)
    g = AnalyticScalar(DOM, c2)
    w = probe_points(DOM, 31)
    scale = max(1.0, np.max(np.abs(f._eval(w))) * np.max(np.abs(g._eval(w))))
    assert np.max(np.abs((f * g)._eval(w) - f._eval(w) * g._eval(w))) < 1e-12 * scale


@given(coeff_lists, st.floats(-1, 1))
def test_antiderivative_inverts_derivative(cs, u0):
    f = AnalyticScalar(DOM, cs)
    F = f.antiderivative(u0)
    assert abs(F(u0)) < 1e-14
    w = probe_points(DOM, 31)
    assert np.allclose(F.derivative()._eval(w), f._eval(w), atol=1e-12)


def test_derivative_of_exp_and_scaled_interval():
    f = AnalyticScalar.from_function(lambda w: np.exp(2 * w), SHIFTED)
    w = probe_points(SHIFTED)
    assert np.max(np.abs(f.derivative()._eval(w) - 2 * np.exp(2 * w))) < 1e-11


def test_antiderivative_anchor_must_lie_on_interval():
    with pytest.raises(OutOfDomain):
        AnalyticScalar.identity(DOM).antiderivative(1.5)


def test_division_and_zero_divisor():
    f = AnalyticScalar.from_function(lambda w: w + 5.0, DOM)
    w = probe_points(DOM)
    assert np.max(np.abs((1.0 / f)._eval(w) - 1 / (w + 5))) < 1e-13
    with pytest.raises(ZeroOnDomain):
        1.0 / AnalyticScalar.identity(DOM)


def test_compose_and_range_check():
    g = AnalyticScalar.from_function(lambda w: 0.5 * w, DOM)
    f = AnalyticScalar.from_function(np.exp, DOM)
    h = compose(f, g)
    w = probe_points(DOM)
    assert np.max(np.abs(h._eval(w) - np.exp(0.5 * w))) < 1e-13
    with pytest.raises(RangeEscape):
        compose(f, AnalyticScalar.from_function(lambda w: 2 * w, DOM))


def test_real_extension_is_real_on_interval():
    f = AnalyticScalar.from_function(lambda w: np.exp(1j * w), DOM)
    r = f.real_extension()
    nodes = DOM.nodes()
    assert np.max(np.abs(r._eval(nodes) - np.cos(nodes))) < 1e-14
    w = probe_points(DOM)
    assert np.max(np.abs(r._eval(w) - np.cos(w))) < 1e-13


def test_dot_and_cross_against_numpy():
    u = AnalyticCurve3.from_functions([np.cos, np.sin, lambda w: w], DOM)
    v = AnalyticCurve3.from_functions([np.exp, lambda w: w ** 2, lambda w: 1 + 0 * w], DOM)
    w = probe_points(DOM)
    U, V = u._eval(w), v._eval(w)
    assert np.max(np.abs(dot(u, v)._eval(w) - np.sum(U * V, axis=0))) < 1e-12
    assert np.max(np.abs(cross(u, v)._eval(w) - np.cross(U, V, axis=0))) < 1e-12


def test_sqrt_branch_principal_case():
    Q = AnalyticScalar.from_function(lambda w: w + 5.0, DOM)
    q, spec = sqrt_branch(Q, 0.0)
    w = probe_points(DOM)
    oracle = np.array([cmath.sqrt(complex(x) + 5.0) for x in w])
    assert np.max(np.abs(q._eval(w) - oracle)) < 1e-13
    assert spec.sign_at_anchor == 1


def test_sqrt_branch_across_negative_axis():
    # values near -1: the principal root would jump, the branch must not
    Q = AnalyticScalar.from_function(lambda w: -1.0 + 0.3j * w, DOM)
    q, _ = sqrt_branch(Q, 0.0)
    w = probe_points(DOM)
    assert np.max(np.abs(q._eval(w) ** 2 - (-1.0 + 0.3j * w))) < 1e-13
    assert q(0.0).real >= 0


def test_sqrt_branch_anchor_sign():
    Q = AnalyticScalar.from_function(lambda w: (w + 3.0) ** 2, DOM)
    q, _ = sqrt_branch(Q, 0.0)
    assert q(0.0) == pytest.approx(3.0)
    w = probe_points(DOM)
    assert np.max(np.abs(q._eval(w) - (w + 3.0))) < 1e-12


@pytest.mark.parametrize("fn", [lambda w: w, lambda w: w ** 2 - 0.25])
def test_sqrt_branch_rejects_zeros(fn):
    with pytest.raises(ZeroOnDomain):
        sqrt_branch(AnalyticScalar.from_function(fn, DOM), 0.0)


def test_arcsin_matches_mpmath():
    z = AnalyticScalar.from_function(lambda w: 0.45 * w + 0.1j * w ** 2, DOM)
    th = arcsin_series(z)
    w = probe_points(DOM, 41)
    oracle = np.array([complex(mpmath.asin(complex(x))) for x in z._eval(w)])
    assert np.max(np.abs(th._eval(w) - oracle)) < 1e-13
    assert th(0.0) == pytest.approx(0.0)


def test_arcsin_of_half():
    th = arcsin_series(AnalyticScalar.constant(DOM, 0.5))
    assert th(0.2) == pytest.approx(np.pi / 6, abs=1e-15)


def test_arcsin_rejects_unit_circle():
    with pytest.raises(UnitDiskViolation):
        arcsin_series(AnalyticScalar.identity(DOM))


def test_immutability():
    f = AnalyticScalar.identity(DOM)
    with pytest.raises(AttributeError):
        f.coeffs = None
    with pytest.raises(ValueError):
        f.coeffs[0] = 1.0
