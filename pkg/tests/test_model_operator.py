import math

import numpy as np
import pytest

from hc3.errors import BracketError, GridTooSmallError
from hc3.model_operator import (DEFAULT_GRID, HalfLineGrid, RegularizedResolvent,
                                compute_C1, find_xi0, golden_section, ground_state, mu,
                                mu_derivative, regularized_resolvent)


def test_grid_basics():
    g = HalfLineGrid(10.0, 101)
    assert g.spacing == pytest.approx(0.1)
    assert np.all(np.diff(g.nodes) > 0)
    assert g.nodes[0] == 0.0
    assert g.refined(2).points == 201
    with pytest.raises(GridTooSmallError):
        HalfLineGrid(10.0, 8)
    with pytest.raises(GridTooSmallError):
        HalfLineGrid(-1.0, 100)


def test_mu_at_zero_is_oscillator():
    assert mu(0.0) == pytest.approx(1.0, abs=1e-6)


def test_mu_far_left_tends_to_one(constants):
    # 1 - mu(-6) is ~1e-15, below the extrapolation noise, so strictness is
    # checked on the discrete eigenvalue
    assert constants.theta0 < mu(-6.0, extrapolate=False) < 1.0
    val = mu(-6.0)
    assert val == pytest.approx(1.0, abs=1e-4)
    assert val < 1.0 + 1e-10
    assert mu(-3.0) < mu(-4.0) < mu(-5.0)


def test_mu_near_minimum():
    assert mu(-0.768) == pytest.approx(0.768 ** 2, abs=1e-3)


def test_mu_unimodal_on_grid():
    zs = np.linspace(-3.0, 1.0, 81)
    d = np.diff([mu(z) for z in zs])
    assert np.count_nonzero(np.diff(np.sign(d)) != 0) == 1


def test_ground_state_at_zero_is_gaussian():
    u = ground_state(0.0)
    tau = u.grid.nodes
    ref = np.exp(-tau ** 2 / 2)
    ref /= u.grid.norm(ref)
    assert np.max(np.abs(u.samples - ref)) < 1e-4


def test_ground_state_invariants(constants):
    u = ground_state(constants.xi0)
    g = u.grid
    assert g.norm(u.samples) == pytest.approx(1.0, abs=1e-10)
    assert np.all(u.samples > 0)
    assert np.all(u.samples[g.nodes >= g.length / 2] < 1e-8)
    assert u.boundary_value == pytest.approx(math.sqrt(3 * 0.254), abs=2e-3)
    # Neumann end: one-sided slope vanishes to second order
    h = g.spacing
    assert abs((u.samples[1] - u.samples[0]) / h) < 10 * h
    assert u.residual() < 1e-8


def test_feynman_hellmann_derivative():
    z, eps = -0.3, 1e-4
    fd = (mu(z + eps) - mu(z - eps)) / (2 * eps)
    assert mu_derivative(z) == pytest.approx(fd, abs=1e-6)


def test_find_xi0(constants):
    xi0, theta0 = find_xi0()
    assert xi0 == pytest.approx(-0.768, abs=1e-3)
    assert abs(theta0 - xi0 ** 2) <= 1e-6
    assert 0.5 < theta0 < 1
    u = ground_state(xi0)
    assert abs(u.grid.inner((u.grid.nodes + xi0) * u.samples, u.samples)) < 1e-6


def test_find_xi0_grid_consistency():
    coarse, _ = find_xi0(HalfLineGrid(10.0, 200), extrapolate=False)
    fine, _ = find_xi0(HalfLineGrid(20.0, 3200), extrapolate=False)
    assert abs(coarse - fine) <= 1e-3


def test_discrete_and_extrapolated_minimizers(constants):
    raw, theta_raw = find_xi0(extrapolate=False)
    assert abs(raw - constants.xi0) < 1e-5
    assert abs(theta_raw - raw ** 2) < 1e-5


def test_find_xi0_bad_bracket():
    with pytest.raises(BracketError):
        find_xi0(bracket=(0.0, 2.0))


def test_too_short_grid():
    with pytest.raises(GridTooSmallError):
        mu(-9.0, HalfLineGrid(10.0, 200))


def test_golden_section_parabola():
    a, b = golden_section(lambda x: (x - 0.3) ** 2, -1.0, 2.0, 1e-8)
    assert 0.5 * (a + b) == pytest.approx(0.3, abs=1e-7)


def test_second_order_convergence():
    vals = [mu(-0.7, HalfLineGrid(12.0, n), extrapolate=False) for n in (301, 601, 1201)]
    ratio = (vals[0] - vals[1]) / (vals[1] - vals[2])
    assert ratio == pytest.approx(4.0, rel=0.05)


def test_C1(constants):
    u = ground_state(constants.xi0)
    c1 = compute_C1(u)
    assert c1 == pytest.approx(0.254, abs=1e-3)
    scaled = type(u)(u.zeta, u.mu, 3.7 * u.samples, u.grid)
    assert compute_C1(scaled) == pytest.approx(c1, rel=1e-14)
    fine = ground_state(constants.xi0, DEFAULT_GRID.refined(2))
    assert abs(compute_C1(fine) - c1) <= 1e-4


def test_constant_inequalities(constants):
    assert 3 * constants.C1 * abs(constants.xi0) < 1
    assert constants.theta0 - 1.5 * constants.C1 * abs(constants.xi0) > 0.29


def test_resolvent(constants):
    u = ground_state(constants.xi0)
    R = RegularizedResolvent(u)
    g = u.grid
    assert np.max(np.abs(R(u.samples))) < 1e-10
    rng = np.random.default_rng(0)
    tau = g.nodes
    phi = sum(rng.normal() * tau ** k for k in range(4)) * np.exp(-tau ** 2 / 3)
    w = R(phi)
    assert abs(g.inner(w, u.samples)) < 1e-10
    # (h0 - Theta0) w reproduces the projected input away from the wall
    from hc3.model_operator import apply_h0
    back = apply_h0(u.zeta, w, g) - u.mu * w
    assert np.max(np.abs((back - R.project(phi))[:-5])) < 1e-6
    a = (tau + constants.xi0) * u.samples
    I2 = g.inner(a, regularized_resolvent(a, u))
    assert abs((1 - 4 * I2) - 3 * constants.C1 * math.sqrt(constants.theta0)) < 1e-4
