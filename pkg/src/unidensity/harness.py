"""Checks of the weak-thinnability axioms and the identities around them.

Every check returns an :class:`AxiomCheckResult` with a four-way status.
Numeric comparisons use a grey zone: a gap within tolerance passes, a gap
beyond five times the tolerance fails, anything between is inconclusive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .density import (
    DEFAULT_HORIZON,
    DensityReport,
    Grid,
    Horizon,
    _jsonable,
    alpha,
    exact_alpha,
    exact_lambda,
    lambda_classify,
    tau_sequence,
)
from .errors import InvariantError
from .families import PowerBlocks, builtin_families
from .intervals import (
    EXACT,
    REAL,
    Complement,
    DisjointUnion,
    Finite,
    Interval,
    Periodic,
    SetSpec,
    WindowSeq,
    as_real,
    is_exact,
    materialize,
    tail,
    thin,
    translate,
)

PASS, FAIL, INCONCLUSIVE, NOT_APPLICABLE = "pass", "fail", "inconclusive", "not_applicable"

AXIOMS = (
    "P1", "P2", "P3-translation", "sandwich", "ineqforB", "rho-thin-identity",
    "thinnability-counterexample", "aC-decomposition", "coherence",
)


@dataclass
class AxiomCheckResult:
    axiom: str
    status: str
    inputs: dict
    witness: Optional[dict] = None
    seed: Optional[int] = None
    tolerances: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.axiom not in AXIOMS:
            raise InvariantError(f"unknown axiom id {self.axiom!r}")
        if self.status not in (PASS, FAIL, INCONCLUSIVE, NOT_APPLICABLE):
            raise InvariantError(f"unknown status {self.status!r}")
        if self.status != PASS and self.witness is None:
            raise InvariantError("a result that does not pass must carry a witness")

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> dict:
        return _jsonable({
            "axiom": self.axiom,
            "pass": self.passed,
            "status": self.status,
            "inputs": self.inputs,
            "witness": self.witness,
            "seed": self.seed,
            "tolerances": self.tolerances,
            "details": self.details,
        })


def _graded(gap: float, tol: float) -> str:
    if gap <= tol:
        return PASS
    return FAIL if gap > 5 * tol else INCONCLUSIVE


def _same_mode(*specs: SetSpec) -> tuple:
    if len({s.mode for s in specs}) > 1:
        return tuple(as_real(s) for s in specs)
    return specs


def _value(rep: DensityReport) -> float:
    return float(rep.value)


def _alpha_summary(rep: DensityReport) -> dict:
    return {"verdict": rep.verdict.value, "value": rep.value, "path": rep.extras.get("path")}


def check_P1(C: SetSpec, A: SetSpec, h: Horizon = DEFAULT_HORIZON, tol: float = 1e-2,
             method: str = "numeric") -> AxiomCheckResult:
    """``alpha(C o A) = lambda(C) alpha(A)`` for ``C`` with exactly known natural density.

    The thinned side is evaluated with ``method`` (numeric by default) so the
    product rule used by the symbolic path cannot make the check circular.
    """
    lam = exact_lambda(C)
    if lam is None:
        raise InvariantError("check_P1 needs C with an exactly known natural density")
    C2, A2 = _same_mode(C, A)
    rep_a = alpha(A2, h)
    rep_ca = alpha(thin(C2, A2), h, method=method)
    inputs = {"C": repr(C), "A": repr(A), "lambda_C": lam}
    tols = {"P1": tol, "horizon": h.tol}
    details = {"alpha_A": _alpha_summary(rep_a), "alpha_CA": _alpha_summary(rep_ca)}
    if not (rep_a.convergent and rep_ca.convergent):
        return AxiomCheckResult("P1", INCONCLUSIVE, inputs, {"reason": "alpha not convergent", **details},
                                tolerances=tols, details=details)
    expected = float(lam) * _value(rep_a)
    gap = abs(_value(rep_ca) - expected)
    details.update(expected=expected, gap=gap)
    status = _graded(gap, tol)
    witness = None if status == PASS else {"alpha_CA": _value(rep_ca), "expected": expected, "gap": gap}
    return AxiomCheckResult("P1", status, inputs, witness, tolerances=tols, details=details)


def _breakpoints(spec: SetSpec, W) -> list:
    return [v for iv in materialize(spec, W) for v in iv]


def check_P2(A: SetSpec, B: SetSpec, W, h: Horizon = DEFAULT_HORIZON, tol: float = 1e-3) -> AxiomCheckResult:
    """Monotonicity of the measure under pointwise prefix ordering ``S_A >= S_B``."""
    A2, B2 = _same_mode(A, B)
    if A2.mode == EXACT:
        W = Fraction(W)
    else:
        W = float(W)
    xs = sorted(set(_breakpoints(A2, W) + _breakpoints(B2, W) + [0 * W, W]))
    inputs = {"A": repr(A), "B": repr(B), "window": W}
    tols = {"P2": tol}
    for x in xs:
        sa, sb = A2.prefix(x), B2.prefix(x)
        if sa < sb:
            return AxiomCheckResult("P2", NOT_APPLICABLE, inputs,
                                    {"x": x, "S_A": sa, "S_B": sb, "reason": "prefix ordering fails"},
                                    tolerances=tols)
    rep_a, rep_b = alpha(A2, h), alpha(B2, h)
    details = {"alpha_A": _alpha_summary(rep_a), "alpha_B": _alpha_summary(rep_b), "breakpoints": len(xs)}
    if not (rep_a.convergent and rep_b.convergent):
        return AxiomCheckResult("P2", INCONCLUSIVE, inputs, {"reason": "alpha not convergent"},
                                tolerances=tols, details=details)
    deficit = _value(rep_b) - _value(rep_a)
    status = PASS if deficit <= tol else _graded(deficit, tol)
    witness = None if status == PASS else {"alpha_A": rep_a.value, "alpha_B": rep_b.value}
    return AxiomCheckResult("P2", status, inputs, witness, tolerances=tols, details=details)


def horizon_for_shift(h: Horizon, c, tol: float) -> Horizon:
    """Extend the log-window grid so that a shift by ``c`` settles within ``tol``.

    Shifting moves mass out of ``[x, c)``, which changes a log-window
    average starting at ``x`` by up to ``(log(c/x) + 1)/log D``.  The grid is
    lengthened until that transient is below ``tol`` at the largest window.
    """
    x0 = h.x_grid.start
    need = 1.2 * (math.log(max(float(c), x0) / x0) + 1) / tol
    g = h.logD_grid
    count = g.count
    while g.start * g.ratio ** (count - 1) < need:
        count += 1
    return h if count == g.count else h.with_(logD_grid=Grid(g.start, g.ratio, count))


def check_translation(A: SetSpec, c, h: Horizon = DEFAULT_HORIZON, tol: float = 1e-3,
                      tails: Sequence = (0, 1, 7, 100, 1000)) -> AxiomCheckResult:
    """``alpha(A + c) = alpha(A)`` numerically and ``alpha([c, inf)) = 1`` exactly."""
    if A.mode == EXACT and not is_exact(c):
        A = as_real(A)
    h = horizon_for_shift(h, c, tol)
    rep_t = alpha(translate(A, c), h, method="numeric")
    rep_a = alpha(A, h, method="numeric")
    tail_vals = {str(t): exact_alpha(tail(t)) for t in tails}
    inputs = {"A": repr(A), "c": c}
    tols = {"translation": tol}
    details = {"alpha_shifted": _alpha_summary(rep_t), "alpha_A": _alpha_summary(rep_a),
               "alpha_A_symbolic": exact_alpha(A), "tails": tail_vals}
    bad_tails = {k: v for k, v in tail_vals.items() if v != 1}
    if bad_tails:
        return AxiomCheckResult("P3-translation", FAIL, inputs, {"tails": bad_tails},
                                tolerances=tols, details=details)
    if not (rep_t.convergent and rep_a.convergent):
        return AxiomCheckResult("P3-translation", INCONCLUSIVE, inputs, {"reason": "alpha not convergent"},
                                tolerances=tols, details=details)
    gap = abs(_value(rep_t) - _value(rep_a))
    details["gap"] = gap
    status = _graded(gap, tol)
    witness = None if status == PASS else {"alpha_shifted": rep_t.value, "alpha_A": rep_a.value}
    return AxiomCheckResult("P3-translation", status, inputs, witness, tolerances=tols, details=details)


def check_sandwich(A: SetSpec, h: Horizon = DEFAULT_HORIZON, tol: float = 1e-3) -> AxiomCheckResult:
    """``liminf rho_A <= alpha(A) <= limsup rho_A``."""
    lam = lambda_classify(A, h)
    rep = alpha(A, h)
    inputs = {"A": repr(A)}
    tols = {"sandwich": tol}
    details = {"liminf_rho": lam.liminf_estimate, "limsup_rho": lam.limsup_estimate,
               "alpha": _alpha_summary(rep)}
    if not rep.convergent:
        return AxiomCheckResult("sandwich", INCONCLUSIVE, inputs, {"reason": "alpha not convergent"},
                                tolerances=tols, details=details)
    a = _value(rep)
    gap = max(lam.liminf_estimate - a, a - lam.limsup_estimate, 0.0)
    status = _graded(gap, tol)
    witness = None if status == PASS else {"alpha": a, "liminf": lam.liminf_estimate,
                                           "limsup": lam.limsup_estimate}
    return AxiomCheckResult("sandwich", status, inputs, witness, tolerances=tols, details=details)


def check_ineqforB(A: SetSpec, C: float, h: Horizon = DEFAULT_HORIZON, tol: float = 1e-3,
                   log_extent: float = 100.0) -> AxiomCheckResult:
    """``alpha(A) <= C * sup_j tau_A(C, j)`` with ``j`` up to ``log_extent / log C``."""
    C = float(C)
    if not C > 1:
        raise InvariantError(f"C must exceed 1, got {C}")
    J = max(int(log_extent / math.log(C)), 1)
    taus = tau_sequence(A, C, J)
    rep = alpha(A, h)
    inputs = {"A": repr(A), "C": C, "j_max": J}
    tols = {"ineqforB": tol}
    details = {"tau_sup": float(taus.max()), "argmax_j": int(taus.argmax()) + 1, "alpha": _alpha_summary(rep)}
    if not rep.convergent:
        return AxiomCheckResult("ineqforB", INCONCLUSIVE, inputs, {"reason": "alpha not convergent"},
                                tolerances=tols, details=details)
    excess = max(_value(rep) - C * float(taus.max()), 0.0)
    status = _graded(excess, tol)
    witness = None if status == PASS else {"alpha": rep.value, "bound": C * float(taus.max())}
    return AxiomCheckResult("ineqforB", status, inputs, witness, tolerances=tols, details=details)


def check_rho_thin_identity(A: SetSpec, B: SetSpec, xs: Sequence, seed: Optional[int] = None) -> AxiomCheckResult:
    """``rho_{A o B}(x) = rho_A(x) rho_B(S_A(x))`` at every ``x``.

    The left side measures a brute-force materialization of ``A o B``; the
    right side only uses the prefix functions of ``A`` and ``B``.
    """
    A2, B2 = _same_mode(A, B)
    exact = A2.mode == EXACT
    T = thin(A2, B2)
    inputs = {"A": repr(A), "B": repr(B), "points": len(xs)}
    for x in xs:
        if not x > 0:
            raise InvariantError(f"sample points must be positive, got {x}")
        x = Fraction(x) if exact else float(x)
        left = materialize(T, x).measure() / x
        s = A2.prefix(x)
        rho_b = B2.prefix(s) / s if s > 0 else 0 * x
        right = (A2.prefix(x) / x) * rho_b
        ok = left == right if exact else abs(left - right) <= 1e-12
        if not ok:
            return AxiomCheckResult("rho-thin-identity", FAIL, inputs,
                                    {"x": x, "left": left, "right": right}, seed=seed,
                                    tolerances={"exact": exact})
    return AxiomCheckResult("rho-thin-identity", PASS, inputs, seed=seed, tolerances={"exact": exact})


def counterexample_paper_form(n_max: int) -> WindowSeq:
    """``union over n < n_max of [4^n 7/6, 4^n 5/3)`` on ``[0, 4^n_max)``."""
    return WindowSeq(4 ** n_max, tuple(Interval(Fraction(7, 6) * 4 ** n, Fraction(5, 3) * 4 ** n)
                                       for n in range(n_max)))


def counterexample_exact_form(n_max: int) -> WindowSeq:
    """The exact pieces of ``A o A^c``: ``[1, 2)`` then ``[4^n 7/6 + 1/3, 4^n 5/3 + 1/3)``."""
    ivs = [Interval(1, 2)]
    third = Fraction(1, 3)
    ivs += [Interval(Fraction(7, 6) * 4 ** n + third, Fraction(5, 3) * 4 ** n + third) for n in range(1, n_max)]
    return WindowSeq(4 ** n_max, tuple(ivs))


def counterexample_closed_form() -> float:
    return (math.log(5 / 3) - math.log(7 / 6)) / (2 * math.log(2))


def thinnability_counterexample(h: Horizon = DEFAULT_HORIZON, tol: Optional[float] = None,
                                n_max: int = 6) -> AxiomCheckResult:
    """``A = union [4^n, 2 4^n)`` has ``alpha(A o A^c) != alpha(A) alpha(A^c)``.

    Passes when the product law is violated by more than five tolerances.  The
    interval-level comparison against the asymptotic block formula and against
    the exact block formula is reported in ``details``.
    """
    tol = h.tol if tol is None else tol
    A = PowerBlocks(2, 2)
    Ac = Complement(A)
    T = thin(A, Ac)
    got = materialize(T, 4 ** n_max)
    paper_form = counterexample_paper_form(n_max)
    exact_form = counterexample_exact_form(n_max)
    mismatches = [(str(a), str(b)) for a, b in zip(got.intervals, paper_form.intervals) if a != b]
    rep = alpha(T, h, method="numeric")
    product = exact_alpha(A) * exact_alpha(Ac)
    closed = counterexample_closed_form()
    details = {
        "materialized": [str(iv) for iv in got],
        "asymptotic_form_match": got == paper_form,
        "asymptotic_form_mismatches": mismatches,
        "exact_form_match": got == exact_form,
        "alpha_thin": _alpha_summary(rep),
        "closed_form": closed,
        "closed_form_gap": None if rep.value is None else abs(float(rep.value) - closed),
        "product": product,
    }
    inputs = {"A": "powerblocks(2,2)", "window": 4 ** n_max}
    tols = {"alpha": tol, "separation": 5 * tol}
    if not rep.convergent:
        return AxiomCheckResult("thinnability-counterexample", INCONCLUSIVE, inputs,
                                {"reason": "alpha not convergent"}, tolerances=tols, details=details)
    sep = abs(_value(rep) - float(product))
    details["separation"] = sep
    status = PASS if sep > 5 * tol else FAIL
    witness = None if status == PASS else {"alpha_thin": rep.value, "product": product}
    return AxiomCheckResult("thinnability-counterexample", status, inputs, witness,
                            tolerances=tols, details=details)


class Decomposition(NamedTuple):
    M1: SetSpec
    M2: SetSpec
    X: SetSpec
    Y: SetSpec


def _shift(seq: WindowSeq, c) -> list:
    out = []
    for iv in seq:
        lo, hi = iv.lo + c, iv.hi + c
        if hi > 0:
            out.append((max(lo, 0 * lo), hi))
    return out


def decompose_aC(A: WindowSeq) -> Decomposition:
    """Write a window set as ``(M1 & X) | (M2 & Y)`` with ``X``, ``Y`` of natural density 1/2.

    ``M1`` is the union of ``[2i, 2i+1)`` and ``M2`` its complement.  ``X``
    agrees with ``A`` on ``M1`` and with the complement of ``A + 1`` on
    ``M2``; ``Y`` agrees with ``A`` on ``M2`` and with the complement of
    ``A - 1`` on ``M1``.
    """
    M1 = Periodic(2, [(0, 1)])
    M2 = Complement(M1)
    if not A.exact:
        M1 = as_real(M1)
        M2 = as_real(M2)
    big = A.window + 2
    m1 = materialize(M1, big)
    m2 = materialize(M2, big)
    a = WindowSeq.from_pairs(big, A.pairs())
    a_plus = WindowSeq.from_pairs(big, _shift(A, 1))
    a_minus = WindowSeq.from_pairs(big, _shift(A, -1))
    mode = EXACT if A.exact else REAL
    X = DisjointUnion(Finite(a.intersect(m1).pairs(), mode),
                      Complement(DisjointUnion(M1, Finite(a_plus.intersect(m2).pairs(), mode))))
    Y = DisjointUnion(Finite(a.intersect(m2).pairs(), mode),
                      Complement(DisjointUnion(M2, Finite(a_minus.intersect(m1).pairs(), mode))))
    return Decomposition(M1, M2, X, Y)


def check_decomposition(A: WindowSeq, seed: Optional[int] = None) -> AxiomCheckResult:
    """Exact reconstruction plus ``m(X & [2i, 2i+2)) = m(Y & [2i, 2i+2)) = 1``."""
    dec = decompose_aC(A)
    W = A.window
    mats = {k: materialize(getattr(dec, k), W) for k in ("M1", "M2", "X", "Y")}
    rebuilt = mats["M1"].intersect(mats["X"]).union(mats["M2"].intersect(mats["Y"]))
    inputs = {"A": str(A), "window": W}
    lam = {k: exact_lambda(getattr(dec, k)) for k in ("X", "Y")}
    details = {"lambda": lam}
    if rebuilt != A:
        return AxiomCheckResult("aC-decomposition", FAIL, inputs,
                                {"rebuilt": str(rebuilt), "expected": str(A)}, seed=seed, details=details)
    full_pairs = int(W // 2)
    for name in ("X", "Y"):
        spec = getattr(dec, name)
        for i in range(full_pairs):
            mass = spec.prefix(2 * i + 2) - spec.prefix(2 * i)
            if mass != 1:
                return AxiomCheckResult("aC-decomposition", FAIL, inputs,
                                        {"set": name, "block": i, "mass": mass}, seed=seed, details=details)
    if any(v != Fraction(1, 2) for v in lam.values()):
        return AxiomCheckResult("aC-decomposition", FAIL, inputs, {"lambda": lam}, seed=seed, details=details)
    return AxiomCheckResult("aC-decomposition", PASS, inputs, seed=seed, details=details)


def coherence_finite_check(assignments: Sequence, coefficients: Sequence, probes: Sequence,
                           h: Optional[Horizon] = None, tol: float = 1e-9) -> AxiomCheckResult:
    """Necessary finite-sample condition for coherence of a system of bets.

    ``assignments`` pairs each set with its claimed probability.  The best
    net payoff over the probe points must not be a guaranteed loss.  When a
    horizon is given the claimed values are first compared with ``alpha``.
    """
    if len(assignments) != len(coefficients):
        raise InvariantError("need one coefficient per assignment")
    inputs = {"sets": [repr(a) for a, _ in assignments], "values": [v for _, v in assignments],
              "coefficients": list(coefficients), "probes": len(probes)}
    if h is not None:
        for spec, v in assignments:
            rep = alpha(spec, h)
            if not rep.convergent or abs(float(rep.value) - float(v)) > h.tol:
                return AxiomCheckResult("coherence", NOT_APPLICABLE, inputs,
                                        {"set": repr(spec), "claimed": v, "alpha": rep.value})
    best, arg = -math.inf, None
    for x in probes:
        payoff = sum(float(c) * ((1.0 if spec.contains(x) else 0.0) - float(v))
                     for (spec, v), c in zip(assignments, coefficients))
        if payoff > best:
            best, arg = payoff, x
    if not probes:
        best = 0.0
    details = {"sup_payoff": best, "argsup": arg}
    if best >= -tol:
        return AxiomCheckResult("coherence", PASS, inputs, tolerances={"coherence": tol}, details=details)
    return AxiomCheckResult("coherence", FAIL, inputs, {"sup_payoff": best, "argsup": arg},
                            tolerances={"coherence": tol}, details=details)


# ---------------------------------------------------------------------------
# Random instances


def random_finite(rng: np.random.Generator, n_max: int = 6, den: int = 6, span: int = 30) -> Finite:
    """A finite union of intervals with endpoints in ``(1/den) Z``."""
    k = int(rng.integers(0, 2 * n_max + 1)) & ~1
    pts = sorted(set(int(v) for v in rng.integers(0, span * den, size=k)))
    if len(pts) % 2:
        pts = pts[:-1]
    return Finite([(Fraction(pts[i], den), Fraction(pts[i + 1], den)) for i in range(0, len(pts), 2)])


def random_periodic(rng: np.random.Generator, q_max: int = 12) -> Periodic:
    """A periodic set with integer period ``<= q_max`` and a nonempty integer pattern."""
    q = int(rng.integers(1, q_max + 1))
    cells = rng.random(q) < 0.5
    if not cells.any():
        cells[int(rng.integers(0, q))] = True
    return Periodic(q, [(i, i + 1) for i in range(q) if cells[i]])


def random_window_seq(rng: np.random.Generator, W: int = 20, den: int = 4, n_max: int = 8) -> WindowSeq:
    k = 2 * int(rng.integers(0, n_max + 1))
    pts = sorted(set(Fraction(int(v), den) for v in rng.integers(0, W * den + 1, size=k)))
    if len(pts) % 2:
        pts = pts[:-1]
    return WindowSeq.from_pairs(W, [(pts[i], pts[i + 1]) for i in range(0, len(pts), 2)])


def random_p2_pair(rng: np.random.Generator, q_max: int = 12) -> tuple:
    """Periodic ``(A, B)`` with ``S_A >= S_B`` everywhere.

    ``A`` either adds cells to ``B`` or moves each cell of ``B`` to an earlier slot.
    """
    B = random_periodic(rng, q_max)
    q = int(B.period)
    cells = sorted(i for lo, hi in B.pattern for i in range(int(lo), int(hi)))
    if rng.random() < 0.5:
        extra = [i for i in range(q) if i not in cells and rng.random() < 0.5]
        new = sorted(cells + extra)
    else:
        new, floor = [], 0
        for c in cells:
            v = int(rng.integers(floor, c + 1))
            new.append(v)
            floor = v + 1
    return Periodic(q, [(i, i + 1) for i in new]), B


def search_p2_witnesses(seed: int = 0, h: Horizon = DEFAULT_HORIZON, trials: int = 20) -> list:
    """Experimental: look for prefix-ordered pairs whose alpha values are out of order.

    Returns every ``check_P2`` result; a witness would be any result that is not a pass.
    """
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(trials):
        A, B = random_p2_pair(rng)
        r = check_P2(A, B, 4 * A.period, h)
        r.seed = seed
        out.append(r)
    return out


# ---------------------------------------------------------------------------
# Suite


def run_suite(seed: int = 0, h: Horizon = DEFAULT_HORIZON, random_trials: int = 20) -> list:
    """Every check over the built-in families, in a fixed order."""
    rng = np.random.default_rng(seed)
    fams = builtin_families()
    results = []
    Cs = [Periodic(2, [(0, 1)]), Periodic(3, [(0, 2)]), tail(5)]
    P = PowerBlocks(2, 2)
    As = [fams["logblocks(2,1)"], Periodic(2, [(0, 1)]), thin(P, Complement(P))]
    for C in Cs:
        for A in As:
            results.append(check_P1(C, A, h, tol=1e-2))
    results.append(check_P2(Periodic(2, [(0, 1)]), Periodic(4, [(0, 1)]), 40, h))
    lb = fams["logblocks(2,1)"]
    results.append(check_P2(lb, thin(lb, as_real(Periodic(2, [(0, 1)]))), 200.0, h))
    for name in ("periodic(2,[0,1))", "logblocks(2,1)", "powerblocks(2,2)", "squares"):
        for c in (1, 7, 100):
            results.append(check_translation(fams[name], c, h))
    for name, A in fams.items():
        results.append(check_sandwich(A, h))
        for C in (1.5, 2, 4):
            results.append(check_ineqforB(A, C, h))
    for _ in range(random_trials):
        A, B = random_finite(rng), random_finite(rng)
        xs = [Fraction(int(v), 6) for v in rng.integers(1, 40 * 6, size=3)]
        results.append(check_rho_thin_identity(A, B, xs, seed=seed))
    results.append(thinnability_counterexample(h))
    for _ in range(random_trials):
        results.append(check_decomposition(random_window_seq(rng), seed=seed))
    A = Periodic(2, [(0, 1)])
    results.append(coherence_finite_check([(A, Fraction(1, 2)), (Complement(A), Fraction(1, 2))], [1, 1],
                                          [Fraction(k, 4) for k in range(40)]))
    for r in results:
        if r.seed is None:
            r.seed = seed
    return results
