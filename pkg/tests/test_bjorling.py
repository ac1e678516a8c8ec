import numpy as np
import pytest

from minterp.analytic import AnalyticCurve3, DomainSpec
from minterp.bjorling import build_base, schwartz_solve
from minterp.errors import NotOrthogonal, NotUnitNormal
from minterp.normal_field import IndexPermutation, construct
from minterp.verification import isotropy_residual

from conftest import zero


def pts(dom):
    return np.concatenate([dom.nodes(), dom.boundary()])


def test_plane_from_line(unit_domain, line):
    n = AnalyticCurve3.constant(unit_domain, [0, 0, 1])
    f = schwartz_solve(line, n, 0.0)
    w = pts(unit_domain)
    # hand Schwarz integral: cross((0,0,1),(1,0,0)) = (0,1,0)
    assert np.max(np.abs(f.f._eval(w) - np.array([w, -1j * w, 0 * w]))) < 1e-14
    X = f.surface(0.3, 0.1)
    assert np.allclose(X, [0.3, 0.1, 0.0], atol=1e-14)


def test_catenoid_from_circle(circle_domain, circle):
    n = AnalyticCurve3.from_functions([lambda w: -np.cos(w), lambda w: -np.sin(w), zero], circle_domain)
    f = schwartz_solve(circle, n, 0.0)
    w = pts(circle_domain)
    assert np.max(np.abs(f.f._eval(w) - np.array([np.cos(w), np.sin(w), 1j * w]))) < 1e-13
    u, v = 0.4, 0.1
    assert np.allclose(f.surface(u, v), [np.cos(u) * np.cosh(v), np.sin(u) * np.cosh(v), -v], atol=1e-13)
    assert isotropy_residual(f) < 1e-10


def test_rejects_non_unit_or_non_normal(unit_domain, line):
    with pytest.raises(NotUnitNormal):
        schwartz_solve(line, AnalyticCurve3.constant(unit_domain, [0, 0, 2]), 0.0)
    with pytest.raises(NotOrthogonal):
        schwartz_solve(line, AnalyticCurve3.constant(unit_domain, [1, 0, 0]), 0.0)


def test_line_base(line, line_base, unit_domain):
    w = pts(unit_domain)
    assert np.max(np.abs(line_base.d0._eval(w) - np.array([0 * w, -w, 0 * w]))) < 1e-14
    assert np.max(np.abs(line_base.denom._eval(w) - 1)) < 1e-14


def test_catenoid_base(circle_base, circle_domain):
    w = pts(circle_domain)
    assert np.max(np.abs(circle_base.d0._eval(w) - np.array([0 * w, 0 * w, -w]))) < 1e-13
    a0 = circle_base.a0.f._eval(w)
    assert np.max(np.abs(a0 - np.array([np.cos(w), np.sin(w), 1j * w]))) < 1e-13


@pytest.mark.parametrize("fixture", ["circle_base", "line_base"])
def test_base_invariants(fixture, request):
    base = request.getfixturevalue(fixture)
    dom = base.domain
    nodes = dom.nodes()
    assert isotropy_residual(base.a0) < 1e-9
    assert np.max(np.abs(base.d0._eval(nodes).imag)) < 1e-9
    assert np.max(np.abs(base.a0.f._eval(nodes).real - base.a._eval(nodes).real)) < 1e-10
    # |denom| = |sum a'^2| |n0_k|
    da = base.da._eval(nodes)
    rhs = np.abs(np.sum(da * da, axis=0)) * np.abs(base.nf.n0[base.perm.k]._eval(nodes))
    assert np.max(np.abs(np.abs(base.denom._eval(nodes)) - rhs)) < 1e-8
    # splitting of isotropy into real and imaginary parts
    dd = base.dd0._eval(nodes)
    assert np.max(np.abs(np.sum(da * da, axis=0) - np.sum(dd * dd, axis=0))) < 1e-9
    assert np.max(np.abs(np.sum(da * dd, axis=0))) < 1e-9


def test_helix_base():
    dom = DomainSpec(-0.8, 0.8, 1.2)
    a = AnalyticCurve3.from_functions([np.cos, np.sin, lambda w: 0.5 * w], dom)
    nf = construct(a)
    base = build_base(a, nf)
    assert isotropy_residual(base.a0) < 1e-9
    assert base.denom.inf_modulus() > 1e-8
