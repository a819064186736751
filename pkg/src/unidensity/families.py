"""Built-in set families with closed-form prefix and density evaluations."""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import InvariantError, ModeError
from .intervals import (
    EXACT,
    T_DIRECT,
    Finite,
    Generator,
    Periodic,
    _as_float,
    exact_log,
    full,
    is_exact,
    tail,
)

__all__ = [
    "periodic", "finite", "squares", "powerblocks", "logblocks", "tail", "full",
    "Squares", "PowerBlocks", "LogBlocks", "builtin_families",
]


def _positive_log(ts: np.ndarray) -> np.ndarray:
    return np.maximum(np.asarray(ts, dtype=float), -T_DIRECT)


class Squares(Generator):
    """``union of [i^2 - 1, i^2)`` for ``i >= 1``: zero natural density."""

    def __init__(self, exact: bool = True):
        if exact:
            fn = lambda n: ((n + 1) ** 2 - 1, (n + 1) ** 2)
        else:
            fn = lambda n: (float((n + 1) ** 2 - 1), float((n + 1) ** 2))
        super().__init__(fn, name="squares", exact=exact)

    def prefix_array(self, xs):
        xs = np.maximum(np.asarray(xs, dtype=float), 0.0)
        m = np.floor(np.sqrt(xs))
        m = np.where((m + 1) ** 2 <= xs, m + 1, m)
        m = np.where(m ** 2 > xs, m - 1, m)
        return m + np.clip(xs - (m + 1) ** 2 + 1, 0.0, 1.0)

    def rho_exp(self, ts):
        ts = _positive_log(ts)
        out = np.exp(-ts / 2)
        near = ts <= 60
        xs = np.exp(ts[near])
        out[near] = self.prefix_array(xs) / xs
        return out

    def as_real(self):
        return self if self.mode != EXACT else Squares(exact=False)

    def __repr__(self):
        return "Squares()"


class PowerBlocks(Generator):
    """``union of [B^n, 2 B^n)`` for ``n >= 0`` where ``B = base**k``."""

    def __init__(self, base, k: int = 1, exact: bool | None = None):
        if isinstance(k, bool) or not isinstance(k, int) or k < 1:
            raise InvariantError(f"powerblocks exponent must be a positive integer, got {k!r}")
        if exact is None:
            exact = is_exact(base)
        if exact and not is_exact(base):
            raise ModeError(f"powerblocks base {base!r} is not rational")
        big = Fraction(base) ** k if exact else _as_float(base) ** k
        if big < 2:
            raise InvariantError(f"powerblocks needs base**k >= 2 so blocks stay disjoint, got {big}")
        if exact and big.denominator == 1:
            big = int(big)
        self.base, self.k, self.block = base, k, big
        self._lnB = exact_log(big)
        super().__init__(lambda n: (big ** n, 2 * big ** n), name=f"powerblocks({base},{k})", exact=exact)

    def rho_exp(self, ts):
        ts = _positive_log(ts)
        B, lnB = _as_float(self.block), self._lnB
        n = np.floor(np.maximum(ts, 0.0) / lnB)
        u = ts - n * lnB
        # S(B^n e^u) = (B^n - 1)/(B - 1) + B^n clip(e^u - 1, 0, 1)
        head = -np.expm1(-n * lnB) * np.exp(-u) / (B - 1)
        cur = np.clip(np.expm1(u), 0.0, 1.0) * np.exp(-u)
        return np.where(ts < 0, 0.0, head + cur)

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        pos = xs > 0
        out[pos] = xs[pos] * self.rho_exp(np.log(xs[pos]))
        return out

    def as_real(self):
        return self if self.mode != EXACT else PowerBlocks(_as_float(self.base), self.k, exact=False)

    def _log_image(self):
        lnB = self._lnB
        return Periodic(lnB, [(0.0, min(math.log(2.0), lnB))])

    def __repr__(self):
        return f"PowerBlocks({self.base}, {self.k})"


class LogBlocks(Generator):
    """``union of [e^{a n}, e^{a n + b})`` for ``n >= 0``; always real mode."""

    def __init__(self, a, b):
        for name, v in (("a", a), ("b", b)):
            if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)) or not v > 0:
                raise InvariantError(f"logblocks {name} must be positive, got {v!r}")
        if b > a:
            raise InvariantError(f"logblocks needs b <= a, got a={a}, b={b}")
        self.a, self.b = a, b
        fa, fb = _as_float(a), _as_float(b)
        self._fa, self._fb = fa, fb
        super().__init__(lambda n: (math.exp(fa * n), math.exp(fa * n + fb)),
                         name=f"logblocks({a},{b})", exact=False)

    def rho_exp(self, ts):
        ts = _positive_log(ts)
        a, b = self._fa, self._fb
        n = np.floor(np.maximum(ts, 0.0) / a)
        u = ts - n * a
        head = math.expm1(b) * -np.expm1(-a * n) * np.exp(-u) / math.expm1(a)
        cur = np.clip(-np.expm1(-u), 0.0, math.expm1(b) * np.exp(-u))
        return np.where(ts < 0, 0.0, head + cur)

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        out = np.zeros_like(xs)
        pos = xs > 0
        out[pos] = xs[pos] * self.rho_exp(np.log(xs[pos]))
        return out

    def as_real(self):
        return self

    def _log_image(self):
        return Periodic(self.a, [(0 * self.b, self.b)])

    def __repr__(self):
        return f"LogBlocks({self.a}, {self.b})"


def periodic(q, pattern) -> Periodic:
    return Periodic(q, pattern)


def finite(intervals) -> Finite:
    return Finite(intervals)


def squares() -> Squares:
    return Squares()


def powerblocks(base, k: int = 1) -> PowerBlocks:
    return PowerBlocks(base, k)


def logblocks(a, b) -> LogBlocks:
    return LogBlocks(a, b)


def builtin_families(real: bool = False) -> dict:
    """Named instances of every family, used by the harness sweeps.

    With ``real=True`` everything is converted to double precision so that the
    entries can be freely combined with :class:`LogBlocks`.
    """
    fams = {
        "periodic(2,[0,1))": Periodic(2, [(0, 1)]),
        "periodic(3,[0,2))": Periodic(3, [(0, 2)]),
        "periodic(5,[1,2),[3,9/2))": Periodic(5, [(1, 2), (3, Fraction(9, 2))]),
        "squares": Squares(),
        "powerblocks(2,2)": PowerBlocks(2, 2),
        "powerblocks(3,1)": PowerBlocks(3, 1),
        "logblocks(2,1)": LogBlocks(2, 1),
        "logblocks(3,1)": LogBlocks(3, 1),
        "tail(5)": tail(5),
        "full": full(),
    }
    if real:
        fams = {k: v.as_real() for k, v in fams.items()}
    return fams
