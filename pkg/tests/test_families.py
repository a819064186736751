from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, strategies as st

from unidensity.errors import InvariantError
from unidensity.families import LogBlocks, PowerBlocks, Squares, builtin_families, logblocks, powerblocks
from unidensity.intervals import Periodic, _rho_direct, log_image, materialize


def test_squares_blocks():
    assert materialize(Squares(), 26).pairs() == [(0, 1), (3, 4), (8, 9), (15, 16), (24, 25)]


def test_powerblocks_blocks():
    assert materialize(powerblocks(2, 2), 300).pairs() == [(1, 2), (4, 8), (16, 32), (64, 128), (256, 300)]


def test_powerblocks_rho_extremes_brute_force():
    # oracle: the prefix at x = 4^k and 2 4^k summed block by block
    A = powerblocks(2, 2)
    for k in range(1, 21):
        s = sum(4 ** n for n in range(k))
        assert A.prefix(4 ** k) == s
        assert A.prefix(2 * 4 ** k) == s + 4 ** k
    assert float(A.prefix(2 * 4 ** 20)) / (2 * 4 ** 20) == pytest.approx(2 / 3, abs=1e-9)
    assert float(A.prefix(4 ** 20)) / 4 ** 20 == pytest.approx(1 / 3, abs=1e-9)


def test_logblocks_blocks():
    e = math.e
    got = materialize(logblocks(2, 1), 1e4).pairs()
    want = [(1.0, e), (e ** 2, e ** 3), (e ** 4, e ** 5), (e ** 6, e ** 7), (e ** 8, e ** 9)]
    assert np.allclose(np.ravel(got), np.ravel(want), rtol=1e-12, atol=0)


def test_logblocks_validation():
    with pytest.raises(InvariantError):
        LogBlocks(1, 2)
    with pytest.raises(InvariantError):
        LogBlocks(2, 0)


def test_powerblocks_validation():
    with pytest.raises(InvariantError):
        PowerBlocks(1, 1)


@pytest.mark.parametrize("name", sorted(builtin_families(real=True)))
def test_rho_exp_matches_direct(name):
    A = builtin_families(real=True)[name]
    ts = np.linspace(0.0, 30.0, 301)
    np.testing.assert_allclose(A.rho_exp(ts), _rho_direct(A, ts), atol=1e-9)


def test_closed_form_rho_beyond_direct_range():
    # rho(e^t) of logblocks(2,1) is 2-periodic in t up to O(e^-t)
    far = LogBlocks(2, 1).rho_exp(np.array([800.5, 1001.0]))
    near = _rho_direct(LogBlocks(2, 1), np.array([200.5, 201.0]))
    np.testing.assert_allclose(far, near, rtol=1e-9)
    ts = np.array([800.0, 1000.0 + math.log(2) / 2])
    r = PowerBlocks(2, 2).rho_exp(ts)
    assert np.all((r >= 1 / 3 - 1e-12) & (r <= 2 / 3 + 1e-12))


def test_log_images_are_periodic():
    L = log_image(logblocks(2, 1))
    assert isinstance(L, Periodic) and L.density == F(1, 2)
    P = log_image(powerblocks(2, 2))
    assert isinstance(P, Periodic)
    assert P.period == pytest.approx(2 * math.log(2))
    assert float(P.density) == pytest.approx(0.5)


@given(st.floats(0.5, 40.0))
def test_logblocks_log_prefix_matches_pieces(t):
    A = logblocks(2, 1)
    direct = sum(math.log(q) - math.log(p) for p, q in A.pieces(1.0, math.exp(t)))
    assert log_image(A).prefix(t) == pytest.approx(direct, abs=1e-9)


def test_builtin_names_parse():
    from unidensity.dsl import parse
    for name in builtin_families():
        if name != "full":
            parse(name)
