"""Density functionals and convergence classification.

Scalar functionals (``rho``, ``sigma``, ``xi``, ``tau``) are evaluated from
the exact prefix function.  Limit functionals (``lambda``, ``U``, ``L``,
``U*``, ``alpha``) return a :class:`DensityReport`.  Limits cannot be
decided from finite data, so every report carries a three-way verdict.

The logarithmic density is computed in two ways.  The symbolic route uses
closed forms (periodic log images, known natural densities and the algebraic
rules they obey).  The numeric route sweeps window averages on a uniform
grid in ``t = log x`` (:class:`LogProfile`), once as the average of
``rho_A(y)/y`` and once as the linear-scale window average of ``log A``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import HorizonError, InvariantError
from .families import PowerBlocks, Squares
from .intervals import (
    MAX_PIECES,
    Complement,
    DisjointUnion,
    Finite,
    Periodic,
    Scale,
    SetSpec,
    Thin,
    Translate,
    _as_float,
    exact_log,
    is_exact,
    log_image,
)

#: Largest ``D * x`` the scalar ``xi`` will materialize by default.
XI_WINDOW = 1e12
#: Piece budget for the exact part of the log-image prefix in sweeps.
LOG_PIECE_BUDGET = 20_000
_CHUNK = 1 << 18


class Verdict(str, Enum):
    CONVERGENT = "convergent"
    DIVERGENT = "divergent"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Grid:
    """Geometric grid ``start * ratio**k`` for ``k < count``."""

    start: float
    ratio: float
    count: int

    def __post_init__(self):
        if not self.start > 0:
            raise InvariantError(f"grid start must be positive, got {self.start}")
        if not self.ratio > 1:
            raise InvariantError(f"grid ratio must exceed 1, got {self.ratio}")
        if self.count < 1:
            raise InvariantError(f"grid needs at least one point, got {self.count}")

    def points(self) -> np.ndarray:
        return self.start * self.ratio ** np.arange(self.count, dtype=float)

    @property
    def stop(self) -> float:
        return self.start * self.ratio ** (self.count - 1)

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """``"start:ratio:count"``."""
        try:
            a, r, n = text.split(":")
            return cls(float(a), float(r), int(n))
        except ValueError as exc:
            raise InvariantError(f"grid must look like start:ratio:count, got {text!r}") from exc

    def to_dict(self):
        return {"start": self.start, "ratio": self.ratio, "count": self.count}


@dataclass(frozen=True)
class Horizon:
    """Finite stand-in for the limits in every density functional.

    ``x_grid`` and ``D_grid`` drive the linear-scale sweeps.  ``logD_grid``
    holds window lengths ``log D`` for the logarithmic sweeps, which need far
    longer windows than the linear grid can express.  ``step`` is the spacing
    of the log-coordinate quadrature grid and ``tail`` the ``log x`` range
    examined when classifying natural density.  ``sequences`` optionally
    lists explicit ``(D_n, x_n)`` pairs for :func:`xi_along`.
    """

    x_grid: Grid = Grid(2.0, 1.25, 60)
    D_grid: Grid = Grid(10.0, 2.0, 14)
    logD_grid: Grid = Grid(4.0, 2 ** 0.25, 41)
    tol: float = 1e-3
    step: float = 2e-3
    tail: tuple = (50.0, 400.0)
    sequences: Optional[tuple] = None

    def __post_init__(self):
        if not self.tol > 0:
            raise InvariantError(f"tolerance must be positive, got {self.tol}")
        if not self.step > 0:
            raise InvariantError(f"step must be positive, got {self.step}")
        if self.x_grid.start <= 1:
            raise InvariantError("x grid must start above 1")
        lo, hi = self.tail
        if not 0 < lo < hi:
            raise InvariantError(f"tail range must satisfy 0 < lo < hi, got {self.tail}")
        if self.sequences is not None:
            seq = tuple((float(d), float(x)) for d, x in self.sequences)
            if any(d <= 1 or x <= 1 for d, x in seq):
                raise InvariantError("sequence entries must have D > 1 and x > 1")
            object.__setattr__(self, "sequences", seq)

    def to_dict(self):
        return {
            "x_grid": self.x_grid.to_dict(),
            "D_grid": self.D_grid.to_dict(),
            "logD_grid": self.logD_grid.to_dict(),
            "tol": self.tol,
            "step": self.step,
            "tail": list(self.tail),
            "sequences": None if self.sequences is None else [list(p) for p in self.sequences],
        }

    def with_(self, **kw) -> "Horizon":
        return replace(self, **kw)


DEFAULT_HORIZON = Horizon()


def _jsonable(v):
    if isinstance(v, Fraction):
        return {"exact": f"{v.numerator}/{v.denominator}", "float": float(v)}
    if isinstance(v, Enum):
        return v.value
    if isinstance(v, (np.floating, np.integer, np.bool_)):
        return v.item()
    if isinstance(v, np.ndarray):
        return _jsonable(v.tolist())
    if hasattr(v, "to_dict"):
        return _jsonable(v.to_dict())
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


@dataclass
class DensityReport:
    functional: str
    params: dict
    liminf_estimate: float
    limsup_estimate: float
    verdict: Verdict
    value: Optional[object] = None
    samples: list = field(default_factory=list)
    lower_samples: list = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.liminf_estimate > self.limsup_estimate + 1e-12:
            raise InvariantError(f"liminf {self.liminf_estimate} exceeds limsup {self.limsup_estimate}")
        tol = self.params.get("tol")
        if self.verdict is Verdict.CONVERGENT and tol is not None:
            if self.limsup_estimate - self.liminf_estimate > tol + 1e-15:
                raise InvariantError("convergent verdict with oscillation above tolerance")

    @property
    def convergent(self) -> bool:
        return self.verdict is Verdict.CONVERGENT

    @property
    def width(self) -> float:
        return self.limsup_estimate - self.liminf_estimate

    def to_dict(self) -> dict:
        return _jsonable({
            "functional": self.functional,
            "params": self.params,
            "verdict": self.verdict,
            "value": self.value,
            "liminf_estimate": self.liminf_estimate,
            "limsup_estimate": self.limsup_estimate,
            "samples": self.samples,
            "lower_samples": self.lower_samples,
            "extras": self.extras,
        })


def _exact_report(functional, h: Horizon, value, **extras) -> DensityReport:
    v = _as_float(value)
    return DensityReport(functional, {"tol": h.tol}, v, v, Verdict.CONVERGENT, value,
                         extras={"path": "symbolic", **extras})


def _classify(lo: float, hi: float, tol: float) -> Verdict:
    width = hi - lo
    if width <= tol:
        return Verdict.CONVERGENT
    if width > 5 * tol:
        return Verdict.DIVERGENT
    return Verdict.INCONCLUSIVE


# ---------------------------------------------------------------------------
# Scalar functionals


def _check_positive(v, name, strict_above=0):
    if not v > strict_above:
        raise InvariantError(f"{name} must exceed {strict_above}, got {v}")


def rho(A: SetSpec, x):
    """``S_A(x)/x`` with ``rho(0) = 0``."""
    if x < 0:
        raise InvariantError(f"rho needs x >= 0, got {x}")
    if x == 0:
        return 0 * x
    return A.prefix(x) / x


def sigma(A: SetSpec, D, x):
    """Average of the indicator of ``A`` over ``[x, x + D)``."""
    _check_positive(D, "D")
    _check_positive(x, "x")
    return (A.prefix(x + D) - A.prefix(x)) / D


def xi(A: SetSpec, D, x, window: float = XI_WINDOW, max_pieces: int = MAX_PIECES) -> float:
    """``(1/log D) * integral over [x, D x] of rho_A(y)/y`` by exact per-piece integration.

    On ``[p, q)`` with ``c = S_A(p)`` the integrand is ``S_A(y)/y**2`` which
    integrates to ``(c - p)(1/p - 1/q) + log(q/p)`` on covered pieces and to
    ``c (1/p - 1/q)`` on gaps.
    """
    _check_positive(D, "D", 1)
    _check_positive(x, "x", 1)
    top = D * x
    if top > window:
        raise HorizonError(f"xi needs the set materialized on [0, {_as_float(top):.6g}); "
                           f"window is {window:.6g}", required=_as_float(top))
    total = 0.0
    cur = x
    c = A.prefix(x)
    count = 0
    for p, q in A.pieces(x, top):
        count += 1
        if count > max_pieces:
            raise HorizonError(f"xi: more than {max_pieces} pieces in [{x}, {top})", required=_as_float(top))
        if p > cur:
            total += _as_float(c) * (1 / _as_float(cur) - 1 / _as_float(p))
        fp, fq = _as_float(p), _as_float(q)
        total += _as_float(c - p) * (1 / fp - 1 / fq) + (exact_log(q) - exact_log(p))
        c += q - p
        cur = q
    if cur < top:
        total += _as_float(c) * (1 / _as_float(cur) - 1 / _as_float(top))
    return total / exact_log(D)


def _log_prefix(A: SetSpec, t) -> float:
    """``S_{log A}(t)`` through the log image of ``A``."""
    L = log_image(A)
    return _as_float(L.prefix(t)) if t > 0 else 0.0


def sigma_xi_identity_residual(A: SetSpec, D, x) -> float:
    """``sigma_{log A}(log D, log x) - (rho(Dx) - rho(x))/log D - xi(D, x)``.

    The left term is computed from the log image and the others from the
    prefix of ``A`` itself, so a zero residual is a genuine cross-check.
    """
    _check_positive(D, "D", 1)
    _check_positive(x, "x", 1)
    lnD, lnx = exact_log(D), exact_log(x)
    left = (_log_prefix(A, lnx + lnD) - _log_prefix(A, lnx)) / lnD
    drho = (_as_float(rho(A, D * x)) - _as_float(rho(A, x))) / lnD
    return left - drho - xi(A, D, x)


def tau(A: SetSpec, C, j: int):
    """Average of the indicator of ``A`` over ``[C**(j-1), C**j)``."""
    _check_positive(C, "C", 1)
    if isinstance(j, bool) or not isinstance(j, int) or j < 1:
        raise InvariantError(f"j must be a positive integer, got {j!r}")
    lo = C ** (j - 1)
    hi = C ** j
    if isinstance(hi, float) and not math.isfinite(hi):
        raise HorizonError(f"tau: C**j overflows for C={C}, j={j}", required=hi)
    return (A.prefix(hi) - A.prefix(lo)) / (hi - lo)


# ---------------------------------------------------------------------------
# Symbolic limits


def exact_lambda(A: SetSpec):
    """Natural density from closed forms, or ``None`` when none applies."""
    if isinstance(A, Periodic):
        return A.density
    if isinstance(A, Finite) or isinstance(A, Squares):
        return 0
    if isinstance(A, Complement):
        v = exact_lambda(A.inner)
        return None if v is None else 1 - v
    if isinstance(A, DisjointUnion):
        a, b = exact_lambda(A.left), exact_lambda(A.right)
        return None if a is None or b is None else a + b
    if isinstance(A, (Translate, Scale)):
        return exact_lambda(A.inner)
    if isinstance(A, Thin):
        a = exact_lambda(A.a)
        if a is not None and a == 0:
            return a
        b = exact_lambda(A.b)
        return None if a is None or b is None else a * b
    return None


def exact_alpha(A: SetSpec):
    """Logarithmic density from closed forms, or ``None``.

    Tries, in order: a family-provided value, the natural density of a
    symbolic log image, the natural density of ``A`` itself (which the
    logarithmic density extends), and the algebraic rules for complement,
    disjoint union, translation, scaling and thinning by a set with natural
    density.
    """
    if isinstance(A, PowerBlocks):
        b = A.block
        if is_exact(b):
            b = Fraction(b)
            if b.denominator == 1 and b.numerator & (b.numerator - 1) == 0:
                return Fraction(1, b.numerator.bit_length() - 1)
        return math.log(2) / A._lnB
    L = A._log_image()
    if L is not None:
        v = exact_lambda(L)
        if v is not None:
            return v
    v = exact_lambda(A)
    if v is not None:
        return v
    if isinstance(A, Complement):
        v = exact_alpha(A.inner)
        return None if v is None else 1 - v
    if isinstance(A, DisjointUnion):
        a, b = exact_alpha(A.left), exact_alpha(A.right)
        return None if a is None or b is None else a + b
    if isinstance(A, (Translate, Scale)):
        return exact_alpha(A.inner)
    if isinstance(A, Thin):
        lam = exact_lambda(A.a)
        b = exact_alpha(A.b)
        return None if lam is None or b is None else lam * b
    return None


# ---------------------------------------------------------------------------
# Log-coordinate sweep engine


def _rho_grid(A: SetSpec, grid: np.ndarray) -> np.ndarray:
    out = np.empty_like(grid)
    for i in range(0, grid.size, _CHUNK):
        out[i:i + _CHUNK] = A.rho_exp(grid[i:i + _CHUNK])
    return np.clip(out, 0.0, 1.0)


class LogProfile:
    """``g(t) = rho_A(e^t)`` on a uniform grid with its running integral.

    ``H(t)`` is the cumulative trapezoid integral of ``g``; because
    ``|g'| <= 1`` its error on any interval is at most ``step/4`` per unit
    length, which bounds the error of every window average computed here.
    """

    def __init__(self, A: Optional[SetSpec], t_max: float, step: float, rho_fn=None):
        self.A = A
        self.step = step
        n = int(math.ceil(t_max / step))
        self.grid = np.arange(n + 1, dtype=float) * step
        if rho_fn is None:
            self.g = _rho_grid(A, self.grid)
        else:
            self.g = np.clip(np.concatenate([rho_fn(self.grid[i:i + _CHUNK])
                                             for i in range(0, self.grid.size, _CHUNK)]), 0.0, 1.0)
        self.H = np.concatenate(([0.0], np.cumsum(0.5 * (self.g[1:] + self.g[:-1]) * step)))
        self._slog = None

    @property
    def quadrature_bound(self) -> float:
        return self.step / 4

    def index(self, t) -> np.ndarray:
        return np.rint(np.asarray(t, dtype=float) / self.step).astype(np.int64)

    def xi(self, i0: np.ndarray, k: int) -> np.ndarray:
        """Log-window averages ``xi(e^{k step}, e^{i0 step})``."""
        return (self.H[i0 + k] - self.H[i0]) / (k * self.step)

    def log_prefix(self) -> tuple:
        """``S_{log A}`` on the grid and a note on how it was obtained.

        A symbolic log image is evaluated directly.  Otherwise the pieces of
        ``A`` are pushed through ``log`` exactly as far as the piece budget
        allows, and the remainder is continued with the identity
        ``S_{log A}(t) - S_{log A}(t0) = g(t) - g(t0) + integral of g``.
        """
        if self._slog is not None:
            return self._slog
        grid = self.grid
        sym = self.A._log_image()
        if sym is not None:
            out = np.empty_like(grid)
            for i in range(0, grid.size, _CHUNK):
                out[i:i + _CHUNK] = sym.prefix_array(grid[i:i + _CHUNK])
            self._slog = (out, {"log_prefix": "symbolic", "exact_up_to": float(grid[-1])})
            return self._slog
        top = float(grid[-1])
        cap = math.exp(min(top, 690.0))
        bp, vals, acc, count = [0.0], [0.0], 0.0, 0
        t0 = min(top, 690.0)
        for p, q in self.A.pieces(1, cap if self.A.mode != "exact" else Fraction(cap)):
            count += 1
            if count > LOG_PIECE_BUDGET:
                t0 = exact_log(p)
                break
            lp, lq = exact_log(p), exact_log(q)
            bp.extend((lp, lq))
            vals.extend((acc, acc + lq - lp))
            acc += lq - lp
        bp_arr, vals_arr = np.array(bp), np.array(vals)
        out = np.interp(grid, bp_arr, vals_arr)
        i0 = int(math.floor(t0 / self.step))
        if i0 < grid.size - 1:
            base = float(np.interp(grid[i0], bp_arr, vals_arr))
            out[i0:] = base + (self.g[i0:] - self.g[i0]) + (self.H[i0:] - self.H[i0])
        self._slog = (out, {"log_prefix": "pieces+identity", "exact_up_to": float(grid[min(i0, grid.size - 1)])})
        return self._slog

    def sigma_log(self, i0: np.ndarray, k: int) -> np.ndarray:
        s, _ = self.log_prefix()
        return (s[i0 + k] - s[i0]) / (k * self.step)


def _sweep_bounds(per_T_sup: np.ndarray, per_T_inf: np.ndarray) -> tuple:
    """Fekete-style limits over the upper half of the window grid."""
    half = len(per_T_sup) // 2
    U = float(np.min(per_T_sup[half:]))
    L = float(np.max(per_T_inf[half:]))
    return min(L, U), max(L, U)


def _log_sweep(A: SetSpec, h: Horizon, profile: Optional[LogProfile] = None) -> dict:
    s_lo = math.log(h.x_grid.start)
    s_hi = math.log(h.x_grid.stop)
    Ts = h.logD_grid.points()
    t_max = s_hi + float(Ts.max()) + 2 * h.step
    if profile is None:
        profile = LogProfile(A, t_max, h.step)
    i_lo, i_hi = int(profile.index(s_lo)), int(profile.index(s_hi))
    starts = np.arange(i_lo, i_hi + 1)
    ks = np.maximum(profile.index(Ts), 1)
    xs_sup, xs_inf, sg_sup, sg_inf = [], [], [], []
    for k in ks:
        w = profile.xi(starts, int(k))
        xs_sup.append(w.max())
        xs_inf.append(w.min())
        v = profile.sigma_log(starts, int(k))
        sg_sup.append(v.max())
        sg_inf.append(v.min())
    xs_sup, xs_inf = np.array(xs_sup), np.array(xs_inf)
    sg_sup, sg_inf = np.array(sg_sup), np.array(sg_inf)
    Tk = ks * profile.step
    return {
        "profile": profile,
        "T": Tk,
        "xi": _sweep_bounds(xs_sup, xs_inf),
        "sigma": _sweep_bounds(sg_sup, sg_inf),
        "xi_sup": xs_sup, "xi_inf": xs_inf,
        "sigma_sup": sg_sup, "sigma_inf": sg_inf,
        "log_prefix": profile.log_prefix()[1],
    }


def alpha(A: SetSpec, h: Horizon = DEFAULT_HORIZON, method: str = "auto") -> DensityReport:
    """Logarithmic density ``lambda(log A)`` with a convergence verdict.

    ``method`` is ``"symbolic"``, ``"numeric"`` or ``"auto"`` (symbolic when
    a closed form applies).  The numeric report is Convergent only if both
    sweep routes have width within tolerance and agree with each other.
    """
    if method not in ("auto", "symbolic", "numeric"):
        raise InvariantError(f"unknown alpha method {method!r}")
    if method in ("auto", "symbolic"):
        v = exact_alpha(A)
        if v is not None:
            return _exact_report("alpha", h, v)
        if method == "symbolic":
            return DensityReport("alpha", {"tol": h.tol}, 0.0, 1.0, Verdict.INCONCLUSIVE, None,
                                 extras={"path": "symbolic", "reason": "no closed form"})
    sw = _log_sweep(A, h)
    (xl, xu), (sl, su) = sw["xi"], sw["sigma"]
    xmid, smid = (xl + xu) / 2, (sl + su) / 2
    agreement = abs(xmid - smid)
    lo, hi = min(xl, sl), max(xu, su)
    width = max(xu - xl, su - sl)
    if width <= h.tol and agreement <= h.tol:
        verdict = Verdict.CONVERGENT
        lo, hi = xl, xu
    elif width > 5 * h.tol or agreement > 5 * h.tol:
        verdict = Verdict.DIVERGENT
    else:
        verdict = Verdict.INCONCLUSIVE
    value = xmid if verdict is Verdict.CONVERGENT else None
    T = sw["T"]
    return DensityReport(
        "alpha", {"tol": h.tol, **h.to_dict()}, lo, hi, verdict, value,
        samples=[(float(t), float(v)) for t, v in zip(T, sw["xi_sup"])],
        lower_samples=[(float(t), float(v)) for t, v in zip(T, sw["xi_inf"])],
        extras={
            "path": "numeric",
            "xi_bounds": [xl, xu],
            "sigma_log_bounds": [sl, su],
            "agreement": agreement,
            "quadrature_bound": sw["profile"].quadrature_bound,
            **sw["log_prefix"],
        },
    )


def xi_along(A: SetSpec, h: Horizon, sequences: Optional[Sequence] = None) -> DensityReport:
    """``xi_A(D_n, x_n)`` along an explicit sequence of pairs.

    The limit along one sequence is a single candidate for the logarithmic
    density; agreement across sequences is what membership requires.
    """
    seq = tuple(sequences if sequences is not None else (h.sequences or ()))
    if not seq:
        raise InvariantError("xi_along needs a nonempty sequence of (D, x) pairs")
    Ts = np.array([math.log(d) for d, _ in seq])
    ss = np.array([math.log(x) for _, x in seq])
    profile = LogProfile(A, float((Ts + ss).max()) + 2 * h.step, h.step)
    vals = []
    for T, s in zip(Ts, ss):
        i0 = profile.index(s)
        k = max(int(profile.index(T)), 1)
        vals.append(float(profile.xi(np.array([i0]), k)[0]))
    tail = vals[len(vals) // 2:]
    lo, hi = min(tail), max(tail)
    verdict = _classify(lo, hi, h.tol)
    return DensityReport("xi_along", {"tol": h.tol, "pairs": [list(p) for p in seq]}, lo, hi, verdict,
                         (lo + hi) / 2 if verdict is Verdict.CONVERGENT else None,
                         samples=list(enumerate(vals)),
                         extras={"quadrature_bound": profile.quadrature_bound})


# ---------------------------------------------------------------------------
# Natural density and linear-scale uniform limits


def lambda_classify(A: SetSpec, h: Horizon = DEFAULT_HORIZON) -> DensityReport:
    """Natural density: exact for closed forms, tail oscillation of ``rho`` otherwise."""
    v = exact_lambda(A)
    if v is not None:
        return _exact_report("lambda", h, v)
    xs = h.x_grid.points()
    head = _rho_grid(A, np.log(xs))
    lo_t, hi_t = h.tail
    ts = np.arange(lo_t, hi_t, 0.01)
    tail_vals = _rho_grid(A, ts)
    lo, hi = float(tail_vals.min()), float(tail_vals.max())
    verdict = _classify(lo, hi, h.tol)
    return DensityReport(
        "lambda", {"tol": h.tol, **h.to_dict()}, lo, hi, verdict,
        (lo + hi) / 2 if verdict is Verdict.CONVERGENT else None,
        samples=[(float(x), float(r)) for x, r in zip(xs, head)],
        extras={"path": "numeric", "tail_log_x": [lo_t, hi_t],
                "argmin_log_x": float(ts[tail_vals.argmin()]),
                "argmax_log_x": float(ts[tail_vals.argmax()])},
    )


def _periodic_sigma_extremes(P: Periodic, D) -> tuple:
    """Exact sup and inf over ``x >= 0`` of ``sigma_P(D, x)``."""
    q = P.period
    if P.mode == "exact":
        D = Fraction(D)
    else:
        D = float(D)
    cands = {0 * q}
    for a, b in P.pattern:
        for e in (a, b):
            cands.add(_floor_mod(e - D, q))
            cands.add(_floor_mod(e, q))
    vals = [(P.prefix(x + D) - P.prefix(x)) / D for x in cands]
    return max(vals), min(vals)


def _floor_mod(a, q):
    return a - math.floor(a / q) * q


def _uniform_sweep(A: SetSpec, h: Horizon) -> tuple:
    Ds = h.D_grid.points()
    if isinstance(A, Periodic):
        ext = [_periodic_sigma_extremes(A, D) for D in Ds]
        return Ds, np.array([_as_float(u) for u, _ in ext]), np.array([_as_float(l) for _, l in ext]), "periodic-exact"
    xs = h.x_grid.points()
    Sx = A.prefix_array(xs)
    sups, infs = [], []
    for D in Ds:
        s = (A.prefix_array(xs + D) - Sx) / D
        sups.append(s.max())
        infs.append(s.min())
    return Ds, np.clip(np.array(sups), 0, 1), np.clip(np.array(infs), 0, 1), "grid"


def _uniform_report(name, Ds, seq, lower, h, method, pick_min):
    half = len(seq) // 2
    tail = seq[half:]
    lo, hi = float(tail.min()), float(tail.max())
    verdict = _classify(lo, hi, h.tol)
    value = (lo if pick_min else hi) if verdict is Verdict.CONVERGENT else None
    return DensityReport(
        name, {"tol": h.tol, **h.to_dict()}, lo, hi, verdict, value,
        samples=[(float(d), float(v)) for d, v in zip(Ds, seq)],
        lower_samples=[(float(d), float(v)) for d, v in zip(Ds, lower)],
        extras={"path": method, "fekete": float(seq.min() if pick_min else seq.max())},
    )


def U_estimate(A: SetSpec, h: Horizon = DEFAULT_HORIZON) -> DensityReport:
    """``lim_D sup_x sigma_A(D, x)``; samples are ``(D, sup_x)``."""
    Ds, sups, infs, method = _uniform_sweep(A, h)
    return _uniform_report("U", Ds, sups, infs, h, method, pick_min=True)


def L_estimate(A: SetSpec, h: Horizon = DEFAULT_HORIZON) -> DensityReport:
    """``lim_D inf_x sigma_A(D, x)``; samples are ``(D, inf_x)``."""
    Ds, sups, infs, method = _uniform_sweep(A, h)
    return _uniform_report("L", Ds, infs, sups, h, method, pick_min=False)


def tau_sequence(A: SetSpec, C: float, J: int) -> np.ndarray:
    """``tau_A(C, j)`` for ``j = 1..J`` through the log-coordinate density."""
    lnC = math.log(C)
    r = _rho_grid(A, lnC * np.arange(J + 1, dtype=float))
    return np.clip((C * r[1:] - r[:-1]) / (C - 1), 0.0, 1.0)


def Ustar_estimate(A: SetSpec, C: float, h: Horizon = DEFAULT_HORIZON) -> DensityReport:
    """``limsup_n sup_k`` of the mean of ``tau_A(C, j)`` over ``j = k+1..k+n``."""
    C = float(C)
    _check_positive(C, "C", 1)
    t_max = math.log(h.x_grid.stop) + h.logD_grid.stop
    J = int(t_max / math.log(C))
    if J < 8:
        raise HorizonError(f"U*: only {J} ratio blocks fit below exp({t_max:.1f})", required=t_max)
    taus = tau_sequence(A, C, J)
    cum = np.concatenate(([0.0], np.cumsum(taus)))
    ns = np.unique(np.geomspace(1, J // 2, 30).astype(int))
    best = np.array([((cum[n:] - cum[:-n]) / n).max() for n in ns])
    tail = best[len(best) * 2 // 3:]
    lo, hi = float(tail.min()), float(tail.max())
    verdict = _classify(lo, hi, h.tol)
    return DensityReport(
        "Ustar", {"tol": h.tol, "C": C, "blocks": J}, lo, hi, verdict, lo,
        samples=[(int(n), float(b)) for n, b in zip(ns, best)],
        extras={"path": "numeric", "tau_max": float(taus.max())},
    )
