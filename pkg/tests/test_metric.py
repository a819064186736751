from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unidensity.errors import InvariantError
from unidensity.families import logblocks
from unidensity.intervals import Periodic, Scale
from unidensity.metric import (
    METRIC_HORIZON,
    BranchSet,
    Cone2D,
    Euclidean,
    FullSpace,
    HalfSpace,
    IndicatorSet,
    IntegerLattice,
    IntegerSet,
    RadialSet,
    Tree3,
    K_A,
    alpha_X,
    center_independence_residual,
    euclidean_reduction_residual,
    r_minus,
    r_plus,
    rho_bar,
    tree_branch_densities,
    xi_bar,
)

R2 = Euclidean(2)
HALF = HalfSpace([1.0, 0.0])
ANNULI = RadialSet(logblocks(1, F(1, 2)))


# ball growth inversion


def test_r_minus_examples():
    assert r_minus(Euclidean(1), 6) == pytest.approx(3, rel=1e-9)
    assert r_plus(Euclidean(1), 6) == pytest.approx(4, rel=1e-9)
    assert r_minus(R2, math.pi) == pytest.approx(1, rel=1e-9)
    assert r_minus(R2, 0) == 0


@given(st.floats(1e-3, 1e12))
def test_r_minus_inverts_h(u):
    r = r_minus(R2, u)
    assert R2.h(r) <= u * (1 + 1e-12)
    assert R2.h(r * (1 + 1e-8)) > u


def test_integer_lattice_growth():
    Z = IntegerLattice()
    assert [Z.h(r) for r in (0.5, 1, 1.5, 2, 3)] == [1, 1, 3, 3, 5]
    assert r_minus(Z, 7) == pytest.approx(4, rel=1e-9)


# rho_bar


def test_rho_bar_examples():
    assert rho_bar(R2, FullSpace(), 1e4) == 1
    for u in (1.0, 1e3, 1e8):
        assert rho_bar(R2, HALF, u) == pytest.approx(0.5, abs=1e-12)
    assert rho_bar(Euclidean(1), HalfSpace([1.0]), 100) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_halfspace_fraction_against_monte_carlo(n):
    # two independent routes: incomplete beta closed form and stratified sampling
    sp = Euclidean(n, samples=40_000)
    A = HalfSpace([1.0] + [0.0] * (n - 1), offset=0.4)
    c = np.zeros(n)
    exact = float(sp.exact_fraction(A, c, 1.0))
    mc = sp.mc_fraction(A, c, 1.0, seed=3)
    assert abs(exact - mc.value) <= 4 * mc.error + 1e-3


def test_radial_fraction_against_monte_carlo():
    sp = Euclidean(2, samples=40_000)
    r = math.exp(3.3)
    exact = float(sp.exact_fraction(ANNULI, sp.origin(), r)[0])
    mc = sp.mc_fraction(ANNULI, sp.origin(), r, seed=5)
    assert abs(exact - mc.value) <= 4 * mc.error + 1e-3


def test_integer_set_counts_against_brute_force():
    Z = IntegerLattice()
    A = IntegerSet(Periodic(3, [(0, 1)]))
    for c, r in [(0, 10), (5, 7.5), (-20, 4), (100, 30)]:
        got = Z.ball_set_measure(c, r, A).value
        R = math.ceil(r) - 1
        want = sum(1 for j in range(c - R, c + R + 1) if abs(j) % 3 == 0)
        assert got == want


# K_A


def test_K_A_examples():
    assert K_A(ANNULI, math.exp(0.25)).value == 1.0
    assert K_A(ANNULI, math.exp(0.75)).value == 0.0
    for r in (0.1, 1.0, 1e3):
        assert K_A(HALF, r).value == 0.5
    assert K_A(Cone2D(0.0, math.pi / 2), 7.0).value == 0.25


def test_K_A_methods_agree():
    cone = Cone2D(0.3, 2.0)
    exact = K_A(cone, 3.0).value
    mc = K_A(cone, 3.0, method="mc", seed=1)
    ang = K_A(cone, 3.0, method="angle", samples=20_000)
    assert abs(mc.value - exact) <= 4 * mc.error
    assert abs(ang.value - exact) <= 1e-3


def test_K_A_rejects_negative_radius():
    with pytest.raises(InvariantError):
        K_A(HALF, -1.0)


# xi_bar and alpha_X


def test_xi_bar_full_and_half():
    assert xi_bar(R2, FullSpace(), 1e6, 10.0).value == pytest.approx(1.0, abs=1e-9)
    assert xi_bar(R2, HALF, 1e6, 10.0).value == pytest.approx(0.5, abs=1e-9)


def test_alpha_X_examples():
    full = alpha_X(R2, FullSpace())
    half = alpha_X(R2, HALF)
    assert full.convergent and full.value == pytest.approx(1.0, abs=1e-9)
    assert half.convergent and half.value == pytest.approx(0.5, abs=1e-9)


def test_alpha_X_log_annuli():
    rep = alpha_X(R2, ANNULI)
    assert rep.convergent
    assert rep.value == pytest.approx(0.5, abs=1e-2)


def test_transported_profile():
    # r -> pi r^2 maps the log-annuli profile to a scaled logblocks(2,1)
    t = ANNULI.transported(2)
    assert isinstance(t, Scale)
    for u in (5.0, 80.0, 3e4):
        assert float(t.prefix(u)) / u == pytest.approx(rho_bar(R2, ANNULI, u), abs=1e-9)


# center independence


def test_center_residual_half_plane():
    u = 1e4
    res = center_independence_residual(R2, HALF, np.zeros(2), np.array([1.0, 0.0]), [u])
    r = r_minus(R2, u)
    assert res.residuals[0] <= res.bounds[0]
    assert res.bounds[0] == pytest.approx(4 / r, rel=0.1)


def test_center_residual_same_point():
    us = [1e2, 1e4, 1e6]
    res = center_independence_residual(R2, HALF, np.zeros(2), np.zeros(2), us)
    assert all(v == pytest.approx(0.0, abs=1e-12) for v in res.residuals)
    assert res.bounds == sorted(res.bounds, reverse=True)


def test_tree_branch_residuals_do_not_converge():
    T = Tree3()
    A = BranchSet(0, 1)
    res = center_independence_residual(T, A, 0, 1, [10.0 ** k for k in range(2, 6)])
    assert min(res.residuals) > 0.3


# Euclidean reduction


def test_reduction_full_space():
    est = euclidean_reduction_residual(R2, FullSpace(), math.exp(10), math.e)
    assert est.value == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("A", [ANNULI, HALF], ids=["annuli", "half-plane"])
def test_reduction_bound(A):
    est = euclidean_reduction_residual(R2, A, math.exp(10), math.e)
    assert est.value <= 1 / 10 + 3 * est.error


def test_reduction_with_sampled_set():
    # an indicator set forces the Monte Carlo route on both sides
    A = IndicatorSet(lambda p: p[:, 1] >= 0, name="upper")
    est = euclidean_reduction_residual(R2, A, math.exp(4), math.e, samples=4000)
    assert est.value <= 1 / 4 + 3 * est.error


# tree


def test_tree_structure():
    T = Tree3()
    assert [T.parent(v) for v in (1, 2, 3, 4, 5, 8)] == [0, 0, 0, 1, 1, 3]
    assert T.distance(4, 6) == 4 and T.distance(4, 5) == 2 and T.distance(0, 9) == 2
    for r in (1, 2, 3.5, 8):
        assert len(T.ball(0, r)) == T.h(r) == len(T.ball(5, r))


def test_tree_ball_distances():
    T = Tree3()
    ball = T.ball(4, 4)
    assert all(T.distance(4, v) < 4 for v in ball)
    assert len(set(ball.tolist())) == len(ball)


def test_tree_branch_densities():
    out = tree_branch_densities(20)
    assert out["sizes_match"]
    assert out["density_x"] == pytest.approx(1 / 3, abs=1e-2)
    assert out["density_y"] == pytest.approx(2 / 3, abs=1e-2)


def test_branch_set_requires_edge():
    with pytest.raises(InvariantError):
        BranchSet(0, 5).contains_points([0])


def test_metric_horizon_is_coarser():
    assert METRIC_HORIZON.tol == 1e-2
