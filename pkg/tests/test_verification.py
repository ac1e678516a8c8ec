import numpy as np
import pytest

from minterp.analytic import AnalyticCurve3
from minterp.bjorling import IsotropicCurve, schwartz_solve
from minterp.errors import OutOfDomain, UnknownReference
from minterp.solver import InterpolationResult
from minterp.verification import (
    SurfaceGrid,
    compare_closed_form,
    interpolation_residuals,
    isotropy_residual,
    surface_checks,
)

from conftest import zero


@pytest.fixture(scope="module")
def plane(unit_domain, line):
    return schwartz_solve(line, AnalyticCurve3.constant(unit_domain, [0, 0, 1]), 0.0)


@pytest.fixture(scope="module")
def catenoid(circle_domain, circle):
    n = AnalyticCurve3.from_functions([lambda w: -np.cos(w), lambda w: -np.sin(w), zero], circle_domain)
    return schwartz_solve(circle, n, 0.0)


def test_isotropy_residuals(plane, catenoid, unit_domain):
    assert isotropy_residual(plane) < 1e-14
    assert isotropy_residual(catenoid) < 1e-10
    f = IsotropicCurve(AnalyticCurve3.from_functions([lambda w: w, zero, zero], unit_domain), 0.0)
    assert isotropy_residual(f) == pytest.approx(1.0)


def test_grid_defaults_stay_inside(catenoid):
    g = SurfaceGrid.sample(catenoid, 64, 32)
    dom = catenoid.domain
    assert g.points.shape == (64, 32, 3)
    assert max(abs(x) for x in g.v_range) == pytest.approx(0.6 * dom.semi_minor)
    with pytest.raises(OutOfDomain):
        SurfaceGrid.sample(catenoid, 16, 16, v_range=(-dom.semi_minor, dom.semi_minor))
    with pytest.raises(ValueError):
        SurfaceGrid.sample(catenoid, 4, 16)


def test_plane_checks(plane):
    g = SurfaceGrid.sample(plane, 16, 16)
    r = surface_checks(g)
    assert max(r.harmonicity, r.conformality_diag, r.conformality_cross) < 1e-12
    assert compare_closed_form(g, "plane") < 1e-12


def test_catenoid_checks_converge_at_second_order(catenoid):
    coarse = surface_checks(SurfaceGrid.sample(catenoid, 33, 17))
    fine = surface_checks(SurfaceGrid.sample(catenoid, 65, 33))
    for name in ("harmonicity", "conformality_diag"):
        ratio = getattr(coarse, name) / getattr(fine, name)
        assert 3.5 < ratio < 4.5
    assert compare_closed_form(SurfaceGrid.sample(catenoid), "catenoid") < 1e-8


def test_mean_curvature_reported_on_request(catenoid):
    g = SurfaceGrid.sample(catenoid, 65, 33)
    assert surface_checks(g).mean_curvature is None
    assert surface_checks(g, mean_curvature=True).mean_curvature < 1e-4


def test_randomly_perturbed_grid_is_not_harmonic(catenoid):
    g = SurfaceGrid.sample(catenoid, 32, 16)
    rng = np.random.default_rng(0)
    noisy = SurfaceGrid(g.u_range, g.v_range, g.nu, g.nv, g.points + 1e-3 * rng.standard_normal(g.points.shape))
    assert surface_checks(noisy).harmonicity > 1.0


def test_helicoid(unit_domain):
    a = AnalyticCurve3.from_functions([zero, zero, lambda w: w], unit_domain)
    n = AnalyticCurve3.from_functions([np.cos, np.sin, zero], unit_domain)
    g = SurfaceGrid.sample(schwartz_solve(a, n, 0.0))
    assert compare_closed_form(g, "helicoid") < 1e-8


def test_unknown_reference(plane):
    with pytest.raises(UnknownReference):
        compare_closed_form(SurfaceGrid.sample(plane, 8, 8), "enneper")


def test_interpolation_residuals(circle, circle_base):
    from minterp.analytic import AnalyticScalar

    res = InterpolationResult(
        gamma=AnalyticScalar.identity(circle.domain), D=circle_base.d0, v0=np.zeros(3),
        surface=circle_base.a0, residual_on_I=0.0, interp_residual=0.0, iterations=0,
    )
    r1, r2 = interpolation_residuals(res, circle, circle)
    assert r1 < 1e-11 and r2 < 1e-11
    k = circle_base.perm.k
    v0 = np.zeros(3)
    v0[k] = 0.1
    wrong = InterpolationResult(
        gamma=res.gamma, D=res.D, v0=v0, surface=res.surface,
        residual_on_I=0.0, interp_residual=0.0, iterations=0,
    )
    assert interpolation_residuals(wrong, circle, circle)[1] == pytest.approx(0.1, abs=1e-12)
