import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from minterp.bjorling import build_base
from minterp.bounds import ProbeConfig, compute_eta, probe_epsilon0
from minterp.errors import DegenerateConstants
from minterp.normal_field import IndexPermutation, construct
from minterp.solver import SolverConfig


def hand_chain(M, r, tau, M1, M2, Mc, Ms, eps0, safety=0.9):
    """The recipe with eps1^2 from the quadratic in s = t^2."""
    eps = safety * min(1.0, eps0 / (4 * (M + 2) * r))
    delta = safety * min(eps * tau ** 3 / (4 * M2), tau ** 2 / 2)
    k = 1 + (Mc + Ms) ** 2
    # k s (2M + s) = delta
    s = (-2 * M * k + np.sqrt((2 * M * k) ** 2 + 4 * k * delta)) / (2 * k)
    s = min(s, min(tau ** 2 * eps / (4 * Mc * M1), eps))
    return eps, delta, s, min(eps0 / 2, s)


def test_circle_constants(circle_nf, circle):
    dom = circle.domain
    # max modulus of sin/cos over the ellipse, sampled densely
    w = dom.boundary(20000)
    M = max(np.max(np.abs(np.sin(w))), np.max(np.abs(np.cos(w))))
    M2 = np.max(np.abs(np.sin(w)))
    rep = compute_eta(circle_nf, circle, 0.1)
    assert rep.tau == pytest.approx(1.0, abs=1e-12)
    assert rep.M1 == pytest.approx(1.0, abs=1e-12)
    assert rep.Mc == pytest.approx(1.0) and rep.Ms == 0.0
    assert rep.M == pytest.approx(M, rel=1e-6)
    assert rep.M2 == pytest.approx(M2, rel=1e-6)
    assert rep.r == pytest.approx(2 * 0.8 * 0.5 * (1.2 + 1 / 1.2))
    eps, delta, e1sq, eta = hand_chain(rep.M, rep.r, 1.0, 1.0, rep.M2, 1.0, 0.0, 0.1)
    assert rep.epsilon == pytest.approx(eps, rel=1e-12)
    assert rep.delta == pytest.approx(delta, rel=1e-12)
    assert rep.epsilon1 ** 2 == pytest.approx(e1sq, rel=1e-8)
    assert rep.eta == pytest.approx(eta, rel=1e-8)
    assert rep.all_hold()


@given(st.floats(1e-6, 10.0))
def test_eta_monotone_in_epsilon0(circle_nf, circle, eps0):
    a = compute_eta(circle_nf, circle, eps0)
    b = compute_eta(circle_nf, circle, 2 * eps0)
    assert b.eta >= a.eta
    assert a.all_hold() and b.all_hold()


def test_safety_to_zero_forces_eta_to_zero(circle_nf, circle):
    etas = [compute_eta(circle_nf, circle, 0.1, safety=s).eta for s in (0.5, 1e-2, 1e-4, 1e-8)]
    assert all(x > y for x, y in zip(etas, etas[1:]))
    assert etas[-1] < 1e-8


def test_planar_normal_is_degenerate(circle):
    nf = construct(circle, IndexPermutation.from_one_based((2, 1, 3)))
    assert nf.M2 == 0.0
    with pytest.raises(DegenerateConstants):
        compute_eta(nf, circle, 0.1)


def test_rejects_bad_inputs(circle_nf, circle):
    with pytest.raises(ValueError):
        compute_eta(circle_nf, circle, 0.0)
    with pytest.raises(ValueError):
        compute_eta(circle_nf, circle, 0.1, safety=1.0)


def test_probe_on_line_base(line_base):
    s = probe_epsilon0(line_base, ProbeConfig(direction=(1.0, 0.0, 0.0)))
    assert s > 0


def test_probe_monotone_in_tolerance(line_base):
    strict = probe_epsilon0(line_base, ProbeConfig(solver=SolverConfig(max_iter=5, tol=1e-12)))
    loose = probe_epsilon0(line_base, ProbeConfig(solver=SolverConfig(max_iter=5, tol=1e-6)))
    assert loose >= strict >= 0


def test_probe_nonnegative_when_nothing_converges(line_base):
    cfg = ProbeConfig(solver=SolverConfig(max_iter=1, tol=1e-300), bisect_tol=0.1)
    assert probe_epsilon0(line_base, cfg) == 0.0
