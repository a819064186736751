"""Exact algebra of locally finite unions of half-open intervals in [0, inf).

Sets are described lazily by a :class:`SetSpec` tree and only turned into
concrete interval lists (:class:`WindowSeq`) on a bounded window.  Two scalar
modes coexist: *exact* specs carry ``int``/``Fraction`` endpoints and every
structural operation on them is exact; *real* specs carry floats.  Combining
an exact spec with a real one raises :class:`ModeError`; call
:func:`as_real` first.

Every spec also exposes two vectorised float views used by the density
sweeps: ``prefix_array`` (the measure of ``A & [0, x)``) and ``rho_exp``
(the density ``S_A(x)/x`` evaluated at ``x = exp(t)``).  The latter works in
log coordinates so that windows far beyond the float range of ``x`` itself
can be handled for the built-in families.
"""
from __future__ import annotations

import bisect
import heapq
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

import numpy as np

from .errors import HorizonError, InvariantError, ModeError, StructuralError

Scalar = Union[int, Fraction, float]
Pair = tuple

#: Largest number of cached generator terms before giving up.
MAX_TERMS = 5_000_000
#: Default piece budget for materialization.
MAX_PIECES = 2_000_000
#: Above this log-coordinate ``exp(t)`` is no longer representable.
T_DIRECT = 700.0

EXACT = "exact"
REAL = "real"


def is_exact(v) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _scalar_mode(*values) -> str:
    return EXACT if all(is_exact(v) for v in values) else REAL


def _as_float(v) -> float:
    if isinstance(v, Fraction):
        return v.numerator / v.denominator
    return float(v)


def exact_log(v: Scalar) -> float:
    """Natural log that also works for huge ``Fraction`` values."""
    if isinstance(v, Fraction):
        return math.log(v.numerator) - math.log(v.denominator)
    return math.log(v)


def _check_nonneg(v, name):
    if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
        raise InvariantError(f"{name} must be a number, got {v!r}")
    if isinstance(v, float) and not math.isfinite(v):
        raise InvariantError(f"{name} must be finite, got {v!r}")
    if v < 0:
        raise InvariantError(f"{name} must be nonnegative, got {v!r}")


def _floor(v) -> int:
    return math.floor(v)


@dataclass(frozen=True)
class Interval:
    """Half-open segment ``[lo, hi)`` of the nonnegative half-line."""

    lo: Scalar
    hi: Scalar

    def __post_init__(self):
        _check_nonneg(self.lo, "lo")
        _check_nonneg(self.hi, "hi")
        if self.hi < self.lo:
            raise InvariantError(f"empty orientation: [{self.lo}, {self.hi})")

    @property
    def length(self):
        return self.hi - self.lo

    @property
    def empty(self) -> bool:
        return self.hi == self.lo

    def __iter__(self):
        yield self.lo
        yield self.hi

    def __str__(self):
        return f"[{self.lo},{self.hi})"


def _merged(pairs: Iterable[Pair]) -> Iterator[Pair]:
    """Drop empty pieces and fuse overlapping or touching ones (input sorted by lo)."""
    cur_lo = cur_hi = None
    for lo, hi in pairs:
        if hi <= lo:
            continue
        if cur_lo is None:
            cur_lo, cur_hi = lo, hi
        elif lo <= cur_hi:
            if hi > cur_hi:
                cur_hi = hi
        else:
            yield (cur_lo, cur_hi)
            cur_lo, cur_hi = lo, hi
    if cur_lo is not None:
        yield (cur_lo, cur_hi)


def _clipped(pairs: Iterable[Pair], lo, hi) -> Iterator[Pair]:
    for p, q in pairs:
        if p >= hi:
            return
        if q <= lo:
            continue
        yield (p if p > lo else lo, q if q < hi else hi)


def _normalize(pairs: Iterable[Pair]) -> list:
    items = []
    for p in pairs:
        iv = p if isinstance(p, Interval) else Interval(*p)
        if not iv.empty:
            items.append((iv.lo, iv.hi))
    items.sort()
    return list(_merged(items))


# ---------------------------------------------------------------------------
# Window sequences


@dataclass(frozen=True)
class WindowSeq:
    """A finite, sorted, disjoint, non-touching interval list inside ``[0, window)``."""

    window: Scalar
    intervals: tuple = ()

    def __post_init__(self):
        if isinstance(self.window, bool) or not isinstance(self.window, (int, float, Fraction)):
            raise InvariantError(f"window must be a number, got {self.window!r}")
        if not self.window > 0:
            raise InvariantError(f"window must be positive, got {self.window}")
        ivs = tuple(iv if isinstance(iv, Interval) else Interval(*iv) for iv in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        prev = None
        for iv in ivs:
            if iv.empty:
                raise InvariantError(f"empty interval {iv} in WindowSeq")
            if iv.hi > self.window:
                raise InvariantError(f"{iv} exceeds window {self.window}")
            if prev is not None and iv.lo <= prev.hi:
                raise InvariantError(f"{prev} and {iv} are not sorted, disjoint and separated")
            prev = iv

    @classmethod
    def from_pairs(cls, window, pairs: Iterable) -> "WindowSeq":
        """Normalize arbitrary (possibly overlapping) pairs, clipped to the window."""
        merged = _normalize(pairs)
        return cls(window, tuple(Interval(p, q) for p, q in _clipped(merged, 0, window)))

    def pairs(self) -> list:
        return [(iv.lo, iv.hi) for iv in self.intervals]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)

    @property
    def exact(self) -> bool:
        return is_exact(self.window) and all(is_exact(iv.lo) and is_exact(iv.hi) for iv in self.intervals)

    def measure(self):
        return sum((iv.hi - iv.lo for iv in self.intervals), 0)

    def contains(self, x) -> bool:
        i = bisect.bisect_right([iv.lo for iv in self.intervals], x) - 1
        return i >= 0 and x < self.intervals[i].hi

    def prefix(self, x):
        total = 0
        for iv in self.intervals:
            if iv.lo >= x:
                break
            total += min(iv.hi, x) - iv.lo
        return total

    def breakpoints(self) -> list:
        out = [0]
        for iv in self.intervals:
            out.extend((iv.lo, iv.hi))
        out.append(self.window)
        return out

    def restrict(self, window) -> "WindowSeq":
        return WindowSeq.from_pairs(window, self.pairs())

    def complement(self) -> "WindowSeq":
        return WindowSeq(self.window, tuple(Interval(p, q) for p, q in _gaps(self.pairs(), 0, self.window)))

    def intersect(self, other: "WindowSeq") -> "WindowSeq":
        w = min(self.window, other.window)
        a, b = self.pairs(), other.pairs()
        out, i, j = [], 0, 0
        while i < len(a) and j < len(b):
            lo = max(a[i][0], b[j][0])
            hi = min(a[i][1], b[j][1])
            if lo < hi:
                out.append((lo, hi))
            if a[i][1] < b[j][1]:
                i += 1
            else:
                j += 1
        return WindowSeq.from_pairs(w, out)

    def union(self, other: "WindowSeq") -> "WindowSeq":
        w = min(self.window, other.window)
        return WindowSeq.from_pairs(w, self.pairs() + other.pairs())

    def difference(self, other: "WindowSeq") -> "WindowSeq":
        return self.intersect(other.complement().restrict(self.window) if other.window >= self.window
                              else WindowSeq.from_pairs(self.window, other.complement().pairs() +
                                                        [(other.window, self.window)]))

    def to_float(self) -> "WindowSeq":
        return WindowSeq(_as_float(self.window),
                         tuple(Interval(_as_float(iv.lo), _as_float(iv.hi)) for iv in self.intervals))

    def __str__(self):
        return " u ".join(str(iv) for iv in self.intervals) or "{}"


def _gaps(pairs: Iterable[Pair], lo, hi) -> Iterator[Pair]:
    cur = lo
    for p, q in pairs:
        if p > cur:
            yield (cur, p)
        if q > cur:
            cur = q
    if cur < hi:
        yield (cur, hi)


# ---------------------------------------------------------------------------
# Lazy set descriptions


class SetSpec:
    """Symbolic description of a locally finite union of ``[a, b)`` intervals."""

    mode: str = EXACT

    def pieces(self, lo, hi) -> Iterator[Pair]:
        """Maximal intervals of ``A & [lo, hi)`` in increasing order."""
        raise NotImplementedError

    def prefix(self, x):
        """``S_A(x)``, the Lebesgue measure of ``A & [0, x)``."""
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def prefix_array(self, xs) -> np.ndarray:
        raise NotImplementedError

    def rho_exp(self, ts) -> np.ndarray:
        """Density ``S_A(x)/x`` at ``x = exp(t)``, vectorised over ``ts``."""
        ts = np.asarray(ts, dtype=float)
        if ts.size and ts.max() > T_DIRECT:
            raise HorizonError(f"{self!r}: density beyond x = exp({T_DIRECT:g}) is not available",
                               required=float(ts.max()))
        return _rho_direct(self, ts)

    def children(self) -> tuple:
        return ()

    def as_real(self) -> "SetSpec":
        raise NotImplementedError

    def _log_image(self) -> Optional["SetSpec"]:
        return None

    # spec trees are immutable; identity hashing is enough
    __hash__ = object.__hash__


def _rho_direct(spec: SetSpec, ts: np.ndarray) -> np.ndarray:
    ts = np.maximum(ts, -T_DIRECT)
    xs = np.exp(ts)
    return spec.prefix_array(xs) / xs


def _require_same_mode(*specs: SetSpec):
    modes = {s.mode for s in specs}
    if len(modes) > 1:
        raise ModeError("cannot combine exact and real specs; convert with as_real() first")


def _coerce_param(value, mode, name):
    if mode == EXACT:
        if not is_exact(value):
            raise ModeError(f"{name}={value!r} is not rational but the operand is exact; "
                            "convert with as_real() first")
        return Fraction(value)
    return _as_float(value)


class Finite(SetSpec):
    """Finite union of intervals."""

    def __init__(self, intervals: Iterable = (), mode: Optional[str] = None):
        pairs = _normalize(intervals)
        self.mode = mode or _scalar_mode(*(v for p in pairs for v in p))
        if self.mode == REAL:
            pairs = [(_as_float(p), _as_float(q)) for p, q in pairs]
        self._starts = [p for p, _ in pairs]
        self._ends = [q for _, q in pairs]
        cum = [0]
        for p, q in pairs:
            cum.append(cum[-1] + (q - p))
        self._cum = cum
        self.total = cum[-1]
        bp, vals = [], []
        for (p, q), c in zip(pairs, cum):
            bp.extend((_as_float(p), _as_float(q)))
            vals.extend((_as_float(c), _as_float(c + q - p)))
        self._bp = np.array(bp, dtype=float)
        self._vals = np.array(vals, dtype=float)

    @property
    def intervals(self) -> tuple:
        return tuple(Interval(p, q) for p, q in zip(self._starts, self._ends))

    def pieces(self, lo, hi):
        i = bisect.bisect_right(self._ends, lo)
        return _clipped(zip(self._starts[i:], self._ends[i:]), lo, hi)

    def prefix(self, x):
        i = bisect.bisect_right(self._ends, x)
        s = self._cum[i]
        if i < len(self._starts) and self._starts[i] < x:
            s += x - self._starts[i]
        return s

    def contains(self, x):
        i = bisect.bisect_right(self._starts, x) - 1
        return i >= 0 and x < self._ends[i]

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        if not self._bp.size:
            return np.zeros_like(xs)
        return np.interp(xs, self._bp, self._vals)

    def rho_exp(self, ts):
        ts = np.asarray(ts, dtype=float)
        out = np.empty_like(ts)
        near = ts <= T_DIRECT
        out[near] = _rho_direct(self, ts[near])
        out[~near] = _as_float(self.total) * np.exp(-ts[~near])
        return out

    def as_real(self):
        return Finite(zip(self._starts, self._ends), mode=REAL)

    def _log_image(self):
        out = []
        for p, q in zip(self._starts, self._ends):
            if q > 1:
                out.append((exact_log(max(p, 1)), exact_log(q)))
        return Finite(out, mode=REAL)

    def __repr__(self):
        return "Finite(" + ", ".join(f"[{p},{q})" for p, q in zip(self._starts, self._ends)) + ")"


class Periodic(SetSpec):
    """``{x : x mod period in pattern}`` with the pattern inside ``[0, period)``."""

    def __init__(self, period, pattern: Iterable):
        if isinstance(period, bool) or not isinstance(period, (int, float, Fraction)) or not period > 0:
            raise InvariantError(f"period must be positive, got {period!r}")
        pairs = _normalize(pattern)
        for p, q in pairs:
            if q > period:
                raise InvariantError(f"pattern interval [{p},{q}) exceeds period {period}")
        self.mode = _scalar_mode(period, *(v for p in pairs for v in p))
        self.period = period
        self.pattern = tuple(pairs)
        self.pattern_measure = sum((q - p for p, q in pairs), 0)
        if self.mode == EXACT:
            self.period = Fraction(period)
            self.pattern = tuple((Fraction(p), Fraction(q)) for p, q in pairs)
            self.pattern_measure = Fraction(self.pattern_measure)
        self.density = self.pattern_measure / self.period
        bp, vals, c = [0.0], [0.0], 0.0
        for p, q in self.pattern:
            bp.extend((_as_float(p), _as_float(q)))
            vals.extend((c, c + _as_float(q - p)))
            c += _as_float(q - p)
        bp.append(_as_float(self.period))
        vals.append(c)
        self._bp = np.array(bp)
        self._vals = np.array(vals)

    def _pattern_prefix(self, r):
        s = 0
        for p, q in self.pattern:
            if r <= p:
                break
            s += (q if q < r else r) - p
        return s

    def pieces(self, lo, hi):
        if not self.pattern:
            return iter(())
        if self.pattern_measure == self.period:
            # full coverage: consecutive periods touch, so merging would never end
            return iter([(lo, hi)] if lo < hi else [])

        def raw():
            k = _floor(lo / self.period)
            while True:
                base = k * self.period
                if base >= hi:
                    return
                for p, q in self.pattern:
                    yield (base + p, base + q)
                k += 1

        return _merged(_clipped(raw(), lo, hi))

    def prefix(self, x):
        k = _floor(x / self.period)
        return k * self.pattern_measure + self._pattern_prefix(x - k * self.period)

    def contains(self, x):
        r = x - _floor(x / self.period) * self.period
        return any(p <= r < q for p, q in self.pattern)

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        q = _as_float(self.period)
        k = np.floor(xs / q)
        r = np.clip(xs - k * q, 0.0, q)
        return k * _as_float(self.pattern_measure) + np.interp(r, self._bp, self._vals)

    def rho_exp(self, ts):
        ts = np.asarray(ts, dtype=float)
        out = np.full_like(ts, _as_float(self.density))
        near = ts <= T_DIRECT
        out[near] = _rho_direct(self, ts[near])
        return out

    def as_real(self):
        return Periodic(_as_float(self.period), [(_as_float(p), _as_float(q)) for p, q in self.pattern])

    def __repr__(self):
        pat = ", ".join(f"[{p},{q})" for p, q in self.pattern)
        return f"Periodic({self.period}, {pat})"


class Generator(SetSpec):
    """Union of ``fn(n)`` for ``n = 0, 1, ...`` with nondecreasing endpoints.

    ``fn`` returns ``(lo, hi)`` or ``None`` to end the family.  Terms are
    produced until one starts at or beyond the requested bound, which is what
    makes materialization terminate; the cache is shared between threads.
    """

    def __init__(self, fn: Callable[[int], Optional[Pair]], *, name: str = "generator",
                 exact: bool = True, max_terms: int = MAX_TERMS):
        self._fn = fn
        self.name = name
        self.mode = EXACT if exact else REAL
        self._max_terms = max_terms
        self._lock = threading.Lock()
        self._los: list = []
        self._his: list = []
        self._cum: list = [0]
        self._done = False
        self._arrays = None

    def _extend_to(self, bound, count: Optional[int] = None):
        """Cache terms until one starts at or after ``bound`` (or ``count`` terms exist)."""
        with self._lock:
            los, his, cum = self._los, self._his, self._cum
            while not self._done and (not los or los[-1] < bound) and (count is None or len(los) < count):
                n = len(los)
                if n >= self._max_terms:
                    raise HorizonError(f"{self.name}: more than {self._max_terms} terms below {bound}",
                                       required=bound)
                term = self._fn(n)
                if term is None:
                    self._done = True
                    break
                lo, hi = term
                if self.mode == EXACT and not (is_exact(lo) and is_exact(hi)):
                    raise ModeError(f"{self.name}: term {n} = {term!r} is not exact")
                iv = Interval(lo, hi)
                if his and iv.lo < his[-1]:
                    raise InvariantError(f"{self.name}: term {n} [{lo},{hi}) starts before the end "
                                         f"{his[-1]} of term {n - 1}; endpoints must be nondecreasing")
                los.append(iv.lo)
                his.append(iv.hi)
                cum.append(cum[-1] + (iv.hi - iv.lo))
            return len(los)

    def terms(self, bound) -> list:
        """Cached raw terms with ``lo < bound``."""
        n = self._extend_to(bound)
        k = bisect.bisect_left(self._los, bound, 0, n)
        return list(zip(self._los[:k], self._his[:k]))

    def pieces(self, lo, hi):
        return _merged(_clipped(self._terms_from(lo, hi), lo, hi))

    def _terms_from(self, lo, hi):
        # extend lazily so that callers who stop early never pay for the whole window
        n = self._extend_to(lo)
        k = bisect.bisect_right(self._his, lo, 0, n)
        while True:
            if k >= n:
                n = self._extend_to(hi, count=k + 1024)
                if k >= n:
                    return
            p, q = self._los[k], self._his[k]
            if p >= hi:
                return
            yield (p, q)
            k += 1

    def prefix(self, x):
        n = self._extend_to(x)
        i = bisect.bisect_right(self._his, x, 0, n)
        s = self._cum[i]
        if i < n and self._los[i] < x:
            s += x - self._los[i]
        return s

    def contains(self, x):
        n = self._extend_to(x + 1 if self.mode == EXACT else x * (1 + 1e-12) + 1)
        i = bisect.bisect_right(self._his, x, 0, n)
        return i < n and self._los[i] <= x

    def _breakpoints(self, bound):
        n = self._extend_to(bound)
        if self._arrays is None or self._arrays[0] != n:
            pairs = list(_merged(zip(self._los[:n], self._his[:n])))
            bp, vals, c = [], [], 0.0
            for p, q in pairs:
                bp.extend((_as_float(p), _as_float(q)))
                vals.extend((c, c + _as_float(q - p)))
                c += _as_float(q - p)
            self._arrays = (n, np.array(bp), np.array(vals))
        return self._arrays[1], self._arrays[2]

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        if not xs.size:
            return np.zeros_like(xs)
        top = float(xs.max())
        if not math.isfinite(top):
            raise HorizonError(f"{self.name}: cannot materialize up to {top}", required=top)
        bp, vals = self._breakpoints(top)
        if not bp.size:
            return np.zeros_like(xs)
        return np.interp(xs, bp, vals)

    def as_real(self):
        if self.mode == REAL:
            return self
        fn = self._fn

        def real_fn(n):
            term = fn(n)
            return None if term is None else (_as_float(term[0]), _as_float(term[1]))

        return Generator(real_fn, name=self.name, exact=False, max_terms=self._max_terms)

    def __repr__(self):
        return f"Generator({self.name})"


class Complement(SetSpec):
    def __init__(self, inner: SetSpec):
        self.inner = inner
        self.mode = inner.mode

    def children(self):
        return (self.inner,)

    def pieces(self, lo, hi):
        return _gaps(self.inner.pieces(lo, hi), lo, hi)

    def prefix(self, x):
        return x - self.inner.prefix(x)

    def contains(self, x):
        return not self.inner.contains(x)

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        return xs - self.inner.prefix_array(xs)

    def rho_exp(self, ts):
        return 1.0 - self.inner.rho_exp(ts)

    def as_real(self):
        return Complement(as_real(self.inner))

    def _log_image(self):
        inner = self.inner._log_image()
        return None if inner is None else Complement(inner)

    def __repr__(self):
        return f"Complement({self.inner!r})"


class DisjointUnion(SetSpec):
    def __init__(self, left: SetSpec, right: SetSpec):
        _require_same_mode(left, right)
        self.left, self.right = left, right
        self.mode = left.mode

    def children(self):
        return (self.left, self.right)

    def pieces(self, lo, hi):
        def tagged(spec, tag):
            for p, q in spec.pieces(lo, hi):
                yield (p, q, tag)

        def checked():
            last = {0: None, 1: None}
            for p, q, tag in heapq.merge(tagged(self.left, 0), tagged(self.right, 1)):
                other = last[1 - tag]
                if other is not None and p < other[1] and other[0] < q:
                    raise StructuralError(f"disjoint union operands overlap: [{other[0]},{other[1]}) "
                                          f"and [{p},{q})")
                last[tag] = (p, q)
                yield (p, q)

        return _merged(checked())

    def prefix(self, x):
        return self.left.prefix(x) + self.right.prefix(x)

    def contains(self, x):
        return self.left.contains(x) or self.right.contains(x)

    def prefix_array(self, xs):
        return self.left.prefix_array(xs) + self.right.prefix_array(xs)

    def rho_exp(self, ts):
        return self.left.rho_exp(ts) + self.right.rho_exp(ts)

    def as_real(self):
        return DisjointUnion(as_real(self.left), as_real(self.right))

    def _log_image(self):
        a, b = self.left._log_image(), self.right._log_image()
        if a is None or b is None:
            return None
        if a.mode != b.mode:
            a, b = as_real(a), as_real(b)
        return DisjointUnion(a, b)

    def __repr__(self):
        return f"DisjointUnion({self.left!r}, {self.right!r})"


class Translate(SetSpec):
    """``{a + c : a in A}``."""

    def __init__(self, inner: SetSpec, c):
        c = _coerce_param(c, inner.mode, "c")
        if c < 0:
            raise InvariantError(f"translation must be nonnegative, got {c}")
        self.inner, self.c = inner, c
        self.mode = inner.mode

    def children(self):
        return (self.inner,)

    def pieces(self, lo, hi):
        c = self.c
        if hi <= c:
            return iter(())
        src_lo = lo - c if lo > c else 0 * c
        return ((p + c, q + c) for p, q in self.inner.pieces(src_lo, hi - c))

    def prefix(self, x):
        return self.inner.prefix(x - self.c) if x > self.c else 0 * self.c

    def contains(self, x):
        return x >= self.c and self.inner.contains(x - self.c)

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        return self.inner.prefix_array(np.maximum(xs - _as_float(self.c), 0.0))

    def rho_exp(self, ts):
        ts = np.asarray(ts, dtype=float)
        c = _as_float(self.c)
        if c == 0:
            return self.inner.rho_exp(ts)
        out = np.zeros_like(ts)
        # x - c = x (1 - c e^-t); only x > c contributes
        ok = ts > math.log(c)
        frac = -np.expm1(np.log(c) - ts[ok])
        out[ok] = self.inner.rho_exp(ts[ok] + np.log(frac)) * frac
        return out

    def as_real(self):
        return Translate(as_real(self.inner), _as_float(self.c))

    def __repr__(self):
        return f"Translate({self.inner!r}, {self.c})"


class Scale(SetSpec):
    """``{c a : a in A}`` for ``c > 0``."""

    def __init__(self, inner: SetSpec, c):
        c = _coerce_param(c, inner.mode, "c")
        if not c > 0:
            raise InvariantError(f"scale factor must be positive, got {c}")
        self.inner, self.c = inner, c
        self.mode = inner.mode

    def children(self):
        return (self.inner,)

    def pieces(self, lo, hi):
        c = self.c
        return ((p * c, q * c) for p, q in self.inner.pieces(lo / c, hi / c))

    def prefix(self, x):
        return self.c * self.inner.prefix(x / self.c)

    def contains(self, x):
        return self.inner.contains(x / self.c)

    def prefix_array(self, xs):
        c = _as_float(self.c)
        return c * self.inner.prefix_array(np.asarray(xs, dtype=float) / c)

    def rho_exp(self, ts):
        return self.inner.rho_exp(np.asarray(ts, dtype=float) - exact_log(self.c))

    def as_real(self):
        return Scale(as_real(self.inner), _as_float(self.c))

    def _log_image(self):
        if self.c < 1:
            return None
        inner = self.inner._log_image()
        if inner is None:
            return None
        return Translate(as_real(inner), exact_log(self.c))

    def __repr__(self):
        return f"Scale({self.inner!r}, {self.c})"


class LogImage(SetSpec):
    """``{log a : a in A, a >= 1}`` evaluated numerically (always real mode)."""

    mode = REAL

    def __init__(self, inner: SetSpec, step: float = 1e-3):
        self.inner = inner
        self._step = step

    def children(self):
        return (self.inner,)

    def pieces(self, lo, hi):
        top = math.exp(hi) if hi < T_DIRECT else math.inf
        if not math.isfinite(top):
            raise HorizonError(f"log image needs the inner set up to exp({hi})", required=hi)
        bottom = max(math.exp(lo), 1.0) if lo > 0 else 1
        return _merged(_clipped(((exact_log(p), exact_log(q))
                                 for p, q in self.inner.pieces(bottom, top)), lo, hi))

    def prefix(self, x):
        if x <= 0:
            return 0.0
        return sum(q - p for p, q in self.pieces(0.0, x))

    def contains(self, x):
        return x >= 0 and self.inner.contains(math.exp(x))

    def prefix_array(self, xs):
        xs = np.asarray(xs, dtype=float)
        if not xs.size:
            return np.zeros_like(xs)
        top = float(xs.max())
        try:
            pairs = list(self.pieces(0.0, top)) if top > 0 else []
            if len(pairs) > MAX_PIECES:
                raise HorizonError("too many pieces")
        except HorizonError:
            return self._prefix_by_quadrature(xs)
        bp, vals, c = [], [], 0.0
        for p, q in pairs:
            bp.extend((p, q))
            vals.extend((c, c + q - p))
            c += q - p
        if not bp:
            return np.zeros_like(xs)
        return np.interp(xs, np.array(bp), np.array(vals))

    def _prefix_by_quadrature(self, xs):
        # int_1^{e^s} 1_A(u)/u du = rho(e^s) - rho(1) + int_0^s rho(e^v) dv
        top = float(xs.max())
        n = max(int(math.ceil(top / self._step)), 1)
        grid = np.linspace(0.0, top, n + 1)
        f = self.inner.rho_exp(grid)
        cum = np.concatenate(([0.0], np.cumsum(0.5 * (f[1:] + f[:-1]) * np.diff(grid))))
        s = np.clip(xs, 0.0, None)
        vals = self.inner.rho_exp(s) - f[0] + np.interp(s, grid, cum)
        return np.where(xs > 0, vals, 0.0)

    def rho_exp(self, ts):
        ts = np.asarray(ts, dtype=float)
        if ts.size and ts.max() > math.log(1e7):
            raise HorizonError("density of a generic log image is limited to x <= 1e7",
                               required=float(ts.max()))
        return _rho_direct(self, ts)

    def as_real(self):
        return self

    def __repr__(self):
        return f"LogImage({self.inner!r})"


class Thin(SetSpec):
    """``A o B = {x in A : S_A(x) in B}``: B laid out along A's own measure."""

    def __init__(self, a: SetSpec, b: SetSpec):
        _require_same_mode(a, b)
        self.a, self.b = a, b
        self.mode = a.mode

    def children(self):
        return (self.a, self.b)

    def pieces(self, lo, hi):
        def raw():
            s = None
            for p, q in self.a.pieces(lo, hi):
                if s is None:
                    s = self.a.prefix(p)
                shift = p - s
                for b0, b1 in self.b.pieces(s, s + (q - p)):
                    yield (b0 + shift, b1 + shift)
                s += q - p

        return _merged(raw())

    def prefix(self, x):
        return self.b.prefix(self.a.prefix(x))

    def contains(self, x):
        return self.a.contains(x) and self.b.contains(self.a.prefix(x))

    def prefix_array(self, xs):
        return self.b.prefix_array(self.a.prefix_array(xs))

    def rho_exp(self, ts):
        ts = np.asarray(ts, dtype=float)
        ra = self.a.rho_exp(ts)
        out = np.zeros_like(ts)
        pos = ra > 0
        # rho_{AoB}(x) = rho_A(x) rho_B(x rho_A(x))
        out[pos] = ra[pos] * self.b.rho_exp(ts[pos] + np.log(ra[pos]))
        return out

    def as_real(self):
        return Thin(as_real(self.a), as_real(self.b))

    def __repr__(self):
        return f"Thin({self.a!r}, {self.b!r})"


# ---------------------------------------------------------------------------
# Functional interface


def as_real(spec: SetSpec) -> SetSpec:
    """Explicit conversion of a spec tree to double-precision endpoints."""
    return spec if spec.mode == REAL and not spec.children() else spec.as_real()


def full() -> SetSpec:
    return Complement(Finite(()))


def empty() -> SetSpec:
    return Finite(())


def tail(c) -> SetSpec:
    """``[c, inf)``."""
    return Complement(Finite([(0 * c, c)]))


def materialize(spec: SetSpec, window, max_pieces: int = MAX_PIECES) -> WindowSeq:
    """``A & [0, window)`` as a normalized :class:`WindowSeq`."""
    if isinstance(window, bool) or not isinstance(window, (int, float, Fraction)) or not window > 0:
        raise InvariantError(f"window must be positive, got {window!r}")
    if spec.mode == EXACT and not is_exact(window):
        raise ModeError("exact spec materialized on a non-rational window")
    out = []
    for pair in spec.pieces(0 * window, window):
        out.append(Interval(*pair))
        if len(out) > max_pieces:
            raise HorizonError(f"more than {max_pieces} intervals below {window}", required=window)
    return WindowSeq(window, tuple(out))


def measure(seq: WindowSeq):
    return seq.measure()


def prefix(spec: SetSpec, x):
    if x < 0:
        raise InvariantError(f"prefix needs x >= 0, got {x}")
    return spec.prefix(x)


def thin(a: SetSpec, b: SetSpec) -> SetSpec:
    return Thin(a, b)


def log_image(spec: SetSpec) -> SetSpec:
    """``log(A)``; closed forms are used where a family provides one."""
    sym = spec._log_image()
    return sym if sym is not None else LogImage(spec)


def translate(spec: SetSpec, c) -> SetSpec:
    return Translate(spec, c)


def scale(spec: SetSpec, c) -> SetSpec:
    return Scale(spec, c)


def complement(spec: SetSpec) -> SetSpec:
    return Complement(spec)


def union_disjoint(a: SetSpec, b: SetSpec) -> SetSpec:
    return DisjointUnion(a, b)


def intersect(a: WindowSeq, b: WindowSeq) -> WindowSeq:
    return a.intersect(b)


def breakpoints(spec: SetSpec, window) -> list:
    """Endpoints of ``A & [0, window)`` together with 0 and the window."""
    return materialize(spec, window).breakpoints()


def walk(spec: SetSpec) -> Iterator[SetSpec]:
    yield spec
    for child in spec.children():
        yield from walk(child)


def rationalize(values: Sequence) -> list:
    return [Fraction(v) for v in values]
