"""Acceptance criteria 1-13, each at its stated tolerance."""
from __future__ import annotations

import math
import time
from fractions import Fraction as F

import numpy as np

from unidensity.density import (
    DEFAULT_HORIZON,
    Ustar_estimate,
    _log_sweep,
    alpha,
)
from unidensity.families import LogBlocks, PowerBlocks, Squares, builtin_families
from unidensity.harness import (
    PASS,
    check_decomposition,
    check_ineqforB,
    check_P1,
    check_rho_thin_identity,
    check_sandwich,
    check_translation,
    counterexample_closed_form,
    counterexample_exact_form,
    counterexample_paper_form,
    random_finite,
    random_periodic,
    random_window_seq,
    thinnability_counterexample,
)
from unidensity.intervals import Complement, Periodic, materialize, tail, thin
from unidensity.metric import (
    Euclidean,
    HalfSpace,
    RadialSet,
    euclidean_reduction_residual,
    tree_branch_densities,
)
from unidensity.families import logblocks

M1 = Periodic(2, [(0, 1)])
LB = LogBlocks(2, 1)
P = PowerBlocks(2, 2)


def test_criterion_01_thinning_exactness(criterion):
    ab = materialize(thin(M1, Squares()), 80).pairs()[:6]
    ba = materialize(thin(Squares(), M1), 130).pairs()[:6]
    want_ab = [(0, 1), (6, 7), (16, 17), (30, 31), (48, 49), (70, 71)]
    want_ba = [(0, 1), (8, 9), (24, 25), (48, 49), (80, 81), (120, 121)]
    exact = all(isinstance(v, (int, F)) for pair in ab + ba for v in pair)
    ok = ab == want_ab and ba == want_ba and exact
    show = lambda ps: " ".join(f"[{p},{q})" for p, q in ps)
    criterion(1, ok, f"A o B = {show(ab)}; B o A = {show(ba)}")
    assert ok


def test_criterion_02_alpha_logblocks(criterion):
    t0 = time.perf_counter()
    sym = alpha(LB, method="symbolic")
    num = alpha(LB, method="numeric")
    elapsed = time.perf_counter() - t0
    ok = (sym.convergent and abs(float(sym.value) - 0.5) <= 1e-3
          and num.convergent and abs(num.value - 0.5) <= 1e-2 and elapsed <= 10)
    criterion(2, ok, f"symbolic {sym.value}, numeric {num.value:.6f}, {elapsed:.2f} s")
    assert ok


def test_criterion_03_alpha_extends_lambda(criterion):
    rng = np.random.default_rng(2024)
    worst = 0.0
    ok = True
    for _ in range(20):
        A = random_periodic(rng, q_max=12)
        d = A.density
        sym = alpha(A, method="symbolic")
        num = alpha(A.as_real(), method="numeric")
        ok &= sym.value == d and isinstance(sym.value, F)
        ok &= num.convergent and abs(num.value - float(d)) <= 1e-3
        worst = max(worst, abs(num.value - float(d)) if num.value is not None else math.inf)
    criterion(3, ok, f"20 periodic sets, symbolic exact, numeric max error {worst:.2e}")
    assert ok


def test_criterion_04_counterexample_alpha(criterion):
    closed = counterexample_closed_form()
    rep = alpha(thin(P, Complement(P)), method="numeric")
    product = alpha(P).value * alpha(Complement(P)).value
    ok = (rep.convergent and abs(rep.value - closed) <= 1e-3 and product == F(1, 4)
          and abs(rep.value - float(product)) > 5e-3)
    criterion("4", ok, f"alpha(A o A^c) = {rep.value:.6f} vs closed form {closed:.6f}; product {product}")
    assert ok


def test_criterion_04_counterexample_intervals_as_stated(criterion):
    # stated form: union of [4^n 7/6, 4^n 5/3) on [0, 4^6)
    got = materialize(thin(P, Complement(P)), 4 ** 6)
    want = counterexample_paper_form(6)
    ok = got == want
    criterion("4", ok, f"materialized {[str(i) for i in got]} vs stated {[str(i) for i in want]}")
    assert got == want


def test_criterion_04_counterexample_intervals_exact_form():
    # the pieces the definition actually yields: [1,2) then [4^n 7/6 + 1/3, 4^n 5/3 + 1/3)
    got = materialize(thin(P, Complement(P)), 4 ** 6)
    assert got == counterexample_exact_form(6)
    assert thinnability_counterexample().status == PASS


def test_criterion_05_rho_thin_identity(criterion):
    rng = np.random.default_rng(5)
    ok = True
    for i in range(100):
        A, B = random_finite(rng), random_finite(rng)
        if i % 2:
            A = random_periodic(rng)
        x = F(int(rng.integers(1, 40 * 6)), 6)
        ok &= check_rho_thin_identity(A, B, [x], seed=5).status == PASS
    criterion(5, ok, "100 random (A, B, x), exact rational equality")
    assert ok


def test_criterion_06_sandwich(criterion):
    results = {}
    for name, A in builtin_families().items():
        if alpha(A).convergent:
            results[name] = check_sandwich(A, tol=1e-3).status
    ok = all(s == PASS for s in results.values()) and len(results) == len(builtin_families())
    criterion(6, ok, f"{len(results)} families: {results}")
    assert ok


def test_criterion_07_ineqforB(criterion):
    bad = []
    for name, A in builtin_families().items():
        for C in (1.5, 2, 4):
            r = check_ineqforB(A, C, tol=1e-3)
            if r.status != PASS:
                bad.append((name, C, r.status))
    criterion(7, not bad, f"failures {bad}" if bad else "all families at C = 1.5, 2, 4")
    assert not bad


def test_criterion_08_ustar_bracket(criterion):
    sets = {"logblocks(2,1)": LB, "periodic(2,[0,1))": M1.as_real(),
            "periodic(3,[0,2))": Periodic(3, [(0, 2)]).as_real(),
            "periodic(5,[1,2),[3,9/2))": Periodic(5, [(1, 2), (3, F(9, 2))]).as_real()}
    ok = True
    notes = []
    for name, A in sets.items():
        lo, hi = _log_sweep(A, DEFAULT_HORIZON)["sigma"]
        U_log = hi  # upper estimate of U(log A); lo == hi up to the horizon tolerance
        widths = []
        for C in (2.0, 1.5, 1.1):
            w = math.log(C) / (C - 1)
            lower, upper = w * U_log, 1 - w * (1 - U_log)
            v = Ustar_estimate(A, C).value
            ok &= lower - 1e-2 <= v <= upper + 1e-2
            widths.append(upper - lower)
        ok &= all(a > b for a, b in zip(widths, widths[1:]))
        notes.append(f"{name}: U(log A) = {U_log:.4f}, widths {[round(x, 4) for x in widths]}")
    criterion(8, ok, "; ".join(notes))
    assert ok


def test_criterion_09_decomposition(criterion):
    rng = np.random.default_rng(9)
    statuses = [check_decomposition(random_window_seq(rng), seed=9).status for _ in range(100)]
    ok = all(s == PASS for s in statuses)
    criterion(9, ok, "100 random rational window sets reconstructed exactly")
    assert ok


def test_criterion_10_translation(criterion):
    bad = []
    for name, A in builtin_families().items():
        for c in (1, 7, 100):
            r = check_translation(A, c, tol=1e-3)
            if r.status != PASS:
                bad.append((name, c, r.status))
    tails = {c: alpha(tail(c)).value for c in (0, 1, 7, 100, 1000)}
    ok = not bad and all(v == 1 and isinstance(v, (int, F)) for v in tails.values())
    criterion(10, ok, f"failures {bad}; tails {tails}")
    assert ok


def test_criterion_11_euclidean_reduction(criterion):
    R2 = Euclidean(2)
    sets = {"log-annuli": RadialSet(logblocks(1, F(1, 2))), "half-plane": HalfSpace([1.0, 0.0])}
    D = math.exp(10)
    ok = True
    notes = []
    for name, A in sets.items():
        for x in (math.e, math.exp(3)):
            est = euclidean_reduction_residual(R2, A, D, x)
            ok &= est.value <= 1 / math.log(D) + 3 * est.error
            notes.append(f"{name} x={x:.3g}: {est.value:.2e} +- {est.error:.1e}")
    criterion(11, ok, "; ".join(notes))
    assert ok


def test_criterion_12_tree(criterion):
    out = tree_branch_densities(20)
    ok = (out["sizes_match"] and abs(out["density_x"] - 1 / 3) <= 1e-2
          and abs(out["density_y"] - 2 / 3) <= 1e-2)
    criterion(12, ok, f"densities {out['density_x']:.6f}, {out['density_y']:.6f}, ball {out['ball_x']}")
    assert ok


def test_criterion_13_P1(criterion):
    Cs = {"periodic(2,[0,1))": M1, "periodic(3,[0,2))": Periodic(3, [(0, 2)]), "tail(5)": tail(5)}
    As = {"logblocks(2,1)": LB, "periodic(2,[0,1))": M1,
          "thin(powerblocks(2,2), compl)": thin(P, Complement(P)),
          "thin(powerblocks(3,1), periodic(2,[0,1)))": thin(PowerBlocks(3, 1), M1)}
    gaps = {}
    for cn, C in Cs.items():
        for an, A in As.items():
            r = check_P1(C, A, tol=1e-2)
            gaps[(cn, an)] = (r.status, r.details.get("gap"))
    ok = all(s == PASS for s, _ in gaps.values())
    worst = max(g for _, g in gaps.values() if g is not None)
    criterion(13, ok, f"{len(gaps)} pairs, max gap {worst:.2e}")
    assert ok
