"""Uniform densities on metric spaces with a uniform measure.

A space supplies its ball-growth function ``h(r)`` (the measure of any open
ball of radius ``r``) and the measure of a ball intersected with a set.
Densities are taken along the largest ball whose measure does not exceed
``u``, whose radius is ``r_minus(u)``.

Three spaces are built in: Euclidean space of any dimension, the integer
lattice with counting measure, and the vertex set of the 3-regular tree.
Ball measures are exact whenever a closed form exists.  Otherwise Euclidean
balls fall back to stratified Monte Carlo with deterministic seeds, and the
standard error is carried along.
"""
from __future__ import annotations

import math
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np
from scipy import integrate, special

from .density import Grid, Horizon, LogProfile, DensityReport, Verdict, _classify
from .errors import HorizonError, InvariantError, QuadratureError
from .families import LogBlocks
from .intervals import (
    Complement,
    DisjointUnion,
    Finite,
    Scale,
    SetSpec,
    _as_float,
    exact_log,
)

#: Coarser default horizon: metric densities are slower and noisier to evaluate.
METRIC_HORIZON = Horizon(logD_grid=Grid(4.0, 2 ** 0.25, 25), tol=1e-2, step=5e-3)
MC_SAMPLES = 20_000
_T_MAX = 700.0


class Estimate(NamedTuple):
    value: float
    error: float


def _seed_for(seed: int, *parts) -> np.random.Generator:
    """Independent stream per (master seed, inputs); the same inputs always reuse it."""
    words = [int(seed) & 0xFFFFFFFF]
    for p in parts:
        arr = np.atleast_1d(np.asarray(p, dtype=float))
        words.extend(int(w) for w in arr.view(np.uint32))
    return np.random.default_rng(np.random.SeedSequence(words))


# ---------------------------------------------------------------------------
# Sets


class MetricSet:
    """A measurable subset of some space."""

    name = "set"

    def contains_points(self, pts: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __repr__(self):
        return self.name


class FullSpace(MetricSet):
    name = "full"

    def contains_points(self, pts):
        return np.ones(len(pts), dtype=bool)


class RadialSet(MetricSet):
    """Points of Euclidean space whose norm lies in ``profile``."""

    def __init__(self, profile: SetSpec):
        self.profile = profile
        self.name = f"radial({profile!r})"

    def contains_points(self, pts):
        norms = np.linalg.norm(np.atleast_2d(pts), axis=1)
        return np.array([self.profile.contains(float(r)) for r in norms], dtype=bool)

    def transported(self, n: int) -> Optional[SetSpec]:
        """The profile pushed forward by ``r -> omega_n r**n``, when a closed form exists."""
        inner = _power_push(self.profile, n)
        if inner is None:
            return None
        return Scale(inner.as_real(), _omega(n))


def _power_push(spec: SetSpec, n: int) -> Optional[SetSpec]:
    if isinstance(spec, LogBlocks):
        return LogBlocks(n * spec._fa, n * spec._fb)
    if isinstance(spec, Finite):
        return Finite([(_as_float(p) ** n, _as_float(q) ** n) for p, q in spec.pieces(0, math.inf)])
    if isinstance(spec, Complement):
        inner = _power_push(spec.inner, n)
        return None if inner is None else Complement(inner)
    if isinstance(spec, DisjointUnion):
        a, b = _power_push(spec.left, n), _power_push(spec.right, n)
        return None if a is None or b is None else DisjointUnion(a, b)
    return None


class HalfSpace(MetricSet):
    """``{p : <p, normal> >= offset}`` with a unit ``normal``."""

    def __init__(self, normal: Sequence[float], offset: float = 0.0):
        v = np.asarray(normal, dtype=float)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise InvariantError("half-space normal must be nonzero")
        self.normal = v / norm
        self.offset = float(offset)
        self.name = f"halfspace({list(self.normal)}, {self.offset})"

    def contains_points(self, pts):
        return np.atleast_2d(pts) @ self.normal >= self.offset


class Cone2D(MetricSet):
    """Planar sector ``{angle in [theta0, theta1)}`` around the origin."""

    def __init__(self, theta0: float, theta1: float):
        if not 0 <= theta1 - theta0 <= 2 * math.pi:
            raise InvariantError("cone needs 0 <= theta1 - theta0 <= 2 pi")
        self.theta0, self.theta1 = float(theta0), float(theta1)
        self.name = f"cone({self.theta0}, {self.theta1})"

    @property
    def fraction(self) -> float:
        return (self.theta1 - self.theta0) / (2 * math.pi)

    def contains_points(self, pts):
        pts = np.atleast_2d(pts)
        ang = np.mod(np.arctan2(pts[:, 1], pts[:, 0]) - self.theta0, 2 * math.pi)
        return ang < self.theta1 - self.theta0


class IndicatorSet(MetricSet):
    """Arbitrary set given by a vectorised membership function."""

    def __init__(self, fn: Callable[[np.ndarray], np.ndarray], name: str = "indicator"):
        self.fn = fn
        self.name = name

    def contains_points(self, pts):
        return np.asarray(self.fn(np.atleast_2d(pts)), dtype=bool)


class IntegerSet(MetricSet):
    """Integers ``j`` with ``|j|`` in a set of the half-line (mirrored onto the negatives)."""

    def __init__(self, spec: SetSpec):
        self.spec = spec
        self.name = f"integers({spec!r})"

    def count(self, lo: int, hi: int) -> int:
        """Number of integers ``k`` in ``[lo, hi]``, ``lo >= 0``, with ``k`` in the profile set."""
        if hi < lo:
            return 0
        total = 0
        for p, q in self.spec.pieces(lo, hi + 1):
            total += max(math.ceil(q) - math.ceil(p), 0)
        return total

    def contains_points(self, pts):
        return np.array([self.spec.contains(abs(int(j))) for j in np.ravel(pts)], dtype=bool)


class BranchSet(MetricSet):
    """Component of ``y`` after deleting the tree edge ``x - y``."""

    def __init__(self, x: int, y: int):
        self.x, self.y = int(x), int(y)
        self.name = f"branch({self.x}->{self.y})"

    def contains_points(self, pts):
        v = np.asarray(pts, dtype=np.int64).ravel()
        if Tree3.parent(self.y) == self.x:
            return Tree3.is_descendant(v, self.y)
        if Tree3.parent(self.x) == self.y:
            return ~Tree3.is_descendant(v, self.x)
        raise InvariantError(f"{self.x} and {self.y} are not adjacent")


# ---------------------------------------------------------------------------
# Spaces


def _omega(n: int) -> float:
    """Volume of the Euclidean unit ball."""
    return math.pi ** (n / 2) / math.gamma(n / 2 + 1)


class MetricDensitySpace:
    name = "space"
    amenable = True

    def h(self, r):
        raise NotImplementedError

    def origin(self):
        raise NotImplementedError

    def distance(self, x, y) -> float:
        raise NotImplementedError

    def ball_set_measure(self, center, r, A: MetricSet, seed: int = 0) -> Estimate:
        raise NotImplementedError

    def h_inverse_hint(self, u) -> Optional[float]:
        return None


class Euclidean(MetricDensitySpace):
    def __init__(self, n: int, samples: int = MC_SAMPLES, shells: int = 16):
        if n < 1:
            raise InvariantError(f"dimension must be positive, got {n}")
        self.n = n
        self.omega = _omega(n)
        self.samples = samples
        self.shells = shells
        self.name = f"euclidean({n})"

    def h(self, r):
        r = np.asarray(r, dtype=float)
        out = np.where(r > 0, self.omega * np.maximum(r, 0.0) ** self.n, 0.0)
        return float(out) if out.ndim == 0 else out

    def origin(self):
        return np.zeros(self.n)

    def distance(self, x, y):
        return float(np.linalg.norm(np.asarray(x, float) - np.asarray(y, float)))

    # exact pieces ------------------------------------------------------
    def _halfspace_fraction(self, A: HalfSpace, center, r):
        """Fraction of ``B(center, r)`` inside the half-space (vectorised in ``r``)."""
        r = np.asarray(r, dtype=float)
        t = (A.offset - float(np.asarray(center, float) @ A.normal)) / np.where(r > 0, r, 1.0)
        cap = 0.5 * special.betainc((self.n + 1) / 2, 0.5, np.clip(1 - t * t, 0.0, 1.0))
        frac = np.where(t >= 0, cap, 1 - cap)
        return np.where(t >= 1, 0.0, np.where(t <= -1, 1.0, frac))

    def _radial_fraction(self, A: RadialSet, r):
        """Fraction of ``B(0, r)`` inside a radial set (vectorised in ``r``)."""
        r = np.atleast_1d(np.asarray(r, dtype=float))
        top = float(r.max()) if r.size else 0.0
        if not math.isfinite(top):
            raise HorizonError("radius overflow", required=top)
        ps, qs = [], []
        for p, q in A.profile.pieces(0, top):
            ps.append(_as_float(p))
            qs.append(_as_float(q))
            if len(ps) > 1_000_000:
                raise HorizonError(f"radial profile has too many pieces below {top}", required=top)
        if not ps:
            return np.zeros_like(r)
        ps, qs = np.array(ps), np.array(qs)
        n = self.n
        out = np.zeros_like(r)
        for i, rr in enumerate(r):
            if rr <= 0:
                continue
            hi = np.minimum(qs, rr)
            ok = hi > ps
            out[i] = np.sum((hi[ok] / rr) ** n - (ps[ok] / rr) ** n)
        return out

    def exact_fraction(self, A: MetricSet, center, r) -> Optional[np.ndarray]:
        """Closed-form ``nu(B(center, r) & A) / h(r)`` or ``None``."""
        at_origin = not np.any(np.asarray(center, float))
        if isinstance(A, FullSpace):
            return np.ones_like(np.asarray(r, dtype=float))
        if isinstance(A, HalfSpace):
            return self._halfspace_fraction(A, center, r)
        if isinstance(A, RadialSet) and at_origin:
            return self._radial_fraction(A, r)
        if isinstance(A, Cone2D) and at_origin and self.n == 2:
            return np.full_like(np.asarray(r, dtype=float), A.fraction)
        return None

    # Monte Carlo -------------------------------------------------------
    def mc_fraction(self, A: MetricSet, center, r: float, seed: int = 0,
                    samples: Optional[int] = None) -> Estimate:
        """Stratified estimate: equal-volume radial shells, uniform directions."""
        samples = samples or self.samples
        K = self.shells
        m = max(samples // K, 2)
        rng = _seed_for(seed, center, r)
        fr, var = [], []
        for k in range(K):
            v = (k + rng.random(m)) / K
            rad = r * v ** (1 / self.n)
            dirs = rng.standard_normal((m, self.n))
            dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
            pts = np.asarray(center, float) + dirs * rad[:, None]
            hit = A.contains_points(pts).astype(float)
            fr.append(hit.mean())
            var.append(hit.var(ddof=1) / m)
        return Estimate(float(np.mean(fr)), float(math.sqrt(sum(var)) / K))

    def ball_set_measure(self, center, r, A, seed=0):
        if r <= 0:
            return Estimate(0.0, 0.0)
        h = self.h(r)
        f = self.exact_fraction(A, center, r)
        if f is not None:
            return Estimate(float(np.ravel(f)[0]) * h, 0.0)
        est = self.mc_fraction(A, center, r, seed)
        return Estimate(est.value * h, est.error * h)

    def h_inverse_hint(self, u):
        return (u / self.omega) ** (1 / self.n)


class IntegerLattice(MetricDensitySpace):
    """``Z`` with counting measure; open balls are symmetric integer windows."""

    name = "integer-lattice"

    def h(self, r):
        return 2 * math.ceil(r) - 1 if r > 0 else 0

    def origin(self):
        return 0

    def distance(self, x, y):
        return abs(int(x) - int(y))

    def ball_set_measure(self, center, r, A, seed=0):
        if r <= 0:
            return Estimate(0.0, 0.0)
        R = math.ceil(r) - 1
        c = int(center)
        lo, hi = c - R, c + R
        if isinstance(A, FullSpace):
            return Estimate(float(hi - lo + 1), 0.0)
        if isinstance(A, IntegerSet):
            pos = A.count(max(lo, 0), hi) if hi >= 0 else 0
            neg = A.count(max(-hi, 1), -lo) if lo < 0 else 0
            return Estimate(float(pos + neg), 0.0)
        pts = np.arange(lo, hi + 1)
        return Estimate(float(A.contains_points(pts).sum()), 0.0)


class Tree3(MetricDensitySpace):
    """Vertices of the 3-regular tree with the graph metric and counting measure.

    Vertex ``0`` is the root with children ``1, 2, 3``; every other vertex
    ``v`` has children ``2v + 2`` and ``2v + 3``.
    """

    name = "tree3"
    amenable = False

    def h(self, r):
        if r <= 0:
            return 0
        R = math.ceil(r) - 1
        return 3 * 2 ** R - 2

    def origin(self):
        return 0

    @staticmethod
    def parent(v: int) -> int:
        if v <= 0:
            return -1
        return 0 if v <= 3 else (v - 2) // 2

    @staticmethod
    def depth(v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        out = np.zeros_like(v)
        nz = v > 0
        out[nz] = np.floor(np.log2((v[nz] + 2) // 3)).astype(np.int64) + 1
        return out

    @staticmethod
    def _parents(v: np.ndarray) -> np.ndarray:
        return np.where(v <= 3, 0, (v - 2) // 2)

    @classmethod
    def is_descendant(cls, v: np.ndarray, a: int) -> np.ndarray:
        """Whether each vertex lies in the subtree rooted at ``a``."""
        v = np.asarray(v, dtype=np.int64).copy()
        da = int(cls.depth(np.array([a]))[0])
        d = cls.depth(v)
        while True:
            deeper = d > da
            if not deeper.any():
                break
            v[deeper] = cls._parents(v[deeper])
            d[deeper] -= 1
        return v == a

    def distance(self, x, y):
        x, y = int(x), int(y)
        d = 0
        dx, dy = int(self.depth(np.array([x]))[0]), int(self.depth(np.array([y]))[0])
        while x != y:
            if dx >= dy:
                x, dx = self.parent(x), dx - 1
            else:
                y, dy = self.parent(y), dy - 1
            d += 1
        return d

    def neighbors(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        root = v == 0
        rest = v[~root]
        parts = [np.array([1, 2, 3], dtype=np.int64)] if root.any() else []
        parts += [2 * rest + 2, 2 * rest + 3, self._parents(rest)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def ball(self, center: int, r) -> np.ndarray:
        """Vertices at graph distance ``< r`` from ``center`` by breadth-first search."""
        if r <= 0:
            return np.zeros(0, dtype=np.int64)
        R = math.ceil(r) - 1
        frontier = np.array([int(center)], dtype=np.int64)
        layers = [frontier]
        for _ in range(R):
            # in a tree the only already-visited neighbours sit in the previous layer
            nxt = np.unique(self.neighbors(frontier))
            nxt = nxt[nxt >= 0]
            prev = layers[-2] if len(layers) > 1 else np.zeros(0, dtype=np.int64)
            nxt = np.setdiff1d(nxt, prev, assume_unique=True)
            layers.append(nxt)
            frontier = nxt
        return np.concatenate(layers)

    def ball_set_measure(self, center, r, A, seed=0):
        pts = self.ball(center, r)
        if isinstance(A, FullSpace):
            return Estimate(float(len(pts)), 0.0)
        return Estimate(float(A.contains_points(pts).sum()), 0.0)


# ---------------------------------------------------------------------------
# Functionals


def r_minus(space: MetricDensitySpace, u: float, rel: float = 1e-9) -> float:
    """``sup {r : h(r) <= u}`` by bisection on the monotone ball growth."""
    if u < 0:
        raise InvariantError(f"u must be nonnegative, got {u}")
    if u == 0 or space.h(1e-300) > u:
        return 0.0
    hi = 1.0
    while space.h(hi) <= u:
        hi *= 2
        if hi > 1e300:
            raise HorizonError(f"h never exceeds {u}", required=u)
    lo = hi / 2 if space.h(hi / 2) <= u else 0.0
    for _ in range(400):
        if hi - lo <= rel * max(lo, 1e-300):
            break
        mid = (lo + hi) / 2
        if space.h(mid) <= u:
            lo = mid
        else:
            hi = mid
    return lo


def r_plus(space: MetricDensitySpace, u: float, rel: float = 1e-9) -> float:
    return r_minus(space, u, rel) + 1


def rho_bar_estimate(space, A, u, center=None, seed: int = 0, radius=None) -> Estimate:
    if u < 0:
        raise InvariantError(f"u must be nonnegative, got {u}")
    center = space.origin() if center is None else center
    r = r_minus(space, u) if radius is None else radius
    if r <= 0:
        return Estimate(0.0, 0.0)
    m = space.ball_set_measure(center, r, A, seed)
    h = space.h(r)
    return Estimate(m.value / h, m.error / h)


def rho_bar(space, A, u, center=None, seed: int = 0) -> float:
    """``nu(B(center, r_minus(u)) & A) / h(r_minus(u))``."""
    return rho_bar_estimate(space, A, u, center, seed).value


def _rho_bar_exp(space, A, ts: np.ndarray, center, seed) -> tuple:
    """``rho_bar(e^t)`` and its standard error on an array of ``t``."""
    ts = np.asarray(ts, dtype=float)
    if isinstance(space, Euclidean):
        if ts.size and ts.max() > _T_MAX:
            raise HorizonError(f"ball measures beyond u = exp({_T_MAX}) overflow", required=float(ts.max()))
        r = (np.exp(ts) / space.omega) ** (1 / space.n)
        f = space.exact_fraction(A, center, r)
        if f is not None:
            return np.asarray(f, dtype=float), np.zeros_like(ts)
    vals, errs = np.empty_like(ts), np.empty_like(ts)
    for i, t in enumerate(ts):
        e = rho_bar_estimate(space, A, math.exp(t), center, seed)
        vals[i], errs[i] = e
    return vals, errs


def _kinks(space, A, a: float, b: float) -> list:
    if isinstance(space, Euclidean) and isinstance(A, RadialSet):
        rmax = (math.exp(b) / space.omega) ** (1 / space.n)
        pts = []
        for p, q in A.profile.pieces(0, rmax):
            for e in (p, q):
                if e > 0:
                    t = math.log(space.omega) + space.n * exact_log(e)
                    if a < t < b:
                        pts.append(t)
        return pts[:200]
    return []


def xi_bar(space, A, D: float, x: float, center=None, seed: int = 0,
           quad_tol: float = 1e-8, nodes: int = 96) -> Estimate:
    """``(1/log D) * integral over [x, D x] of rho_bar(y)/y`` with an error estimate.

    Exact ball measures are integrated adaptively in ``log y``; Monte Carlo
    measures use a fixed Gauss-Legendre rule whose error combines the
    per-node standard errors.
    """
    if not D > 1 or not x > 1:
        raise InvariantError(f"need D > 1 and x > 1, got D={D}, x={x}")
    center = space.origin() if center is None else center
    a, b = math.log(x), math.log(x) + math.log(D)
    lnD = b - a
    probe_v, probe_e = _rho_bar_exp(space, A, np.array([a]), center, seed)
    if probe_e[0] == 0 and not isinstance(space, (Tree3, IntegerLattice)):
        f = lambda t: float(_rho_bar_exp(space, A, np.array([t]), center, seed)[0][0])
        pts = _kinks(space, A, a, b)
        val, err = integrate.quad(f, a, b, points=pts or None, limit=max(200, 4 * len(pts) + 50),
                                  epsabs=quad_tol * lnD / 10, epsrel=1e-10)
        if err > quad_tol * lnD:
            raise QuadratureError(f"quadrature error {err:.3g} above {quad_tol * lnD:.3g}",
                                  estimate=val / lnD, error=err / lnD)
        return Estimate(val / lnD, err / lnD)
    gx, gw = np.polynomial.legendre.leggauss(nodes)
    ts = a + (gx + 1) * lnD / 2
    w = gw * lnD / 2
    v, e = _rho_bar_exp(space, A, ts, center, seed)
    return Estimate(float(w @ v) / lnD, float(math.sqrt(float((w * w) @ (e * e)))) / lnD)


def alpha_X(space, A, h: Horizon = METRIC_HORIZON, center=None, seed: int = 0) -> DensityReport:
    """``limsup_D sup_x xi_bar`` and ``liminf_D inf_x xi_bar`` over the horizon grids."""
    center = space.origin() if center is None else center
    s_lo, s_hi = math.log(h.x_grid.start), math.log(h.x_grid.stop)
    Ts = h.logD_grid.points()
    t_max = s_hi + float(Ts.max()) + 2 * h.step
    step = h.step
    probe = _rho_bar_exp(space, A, np.array([1.0]), center, seed)[1][0]
    noisy = probe > 0 or isinstance(space, (Tree3, IntegerLattice))
    if noisy:
        step = max(step, 0.05)
    errs = {}

    def rho_fn(ts):
        v, e = _rho_bar_exp(space, A, ts, center, seed)
        errs["max"] = max(errs.get("max", 0.0), float(e.max()) if e.size else 0.0)
        return v

    prof = LogProfile(None, t_max, step, rho_fn=rho_fn)
    starts = np.arange(int(prof.index(s_lo)), int(prof.index(s_hi)) + 1)
    sups, infs = [], []
    for T in Ts:
        k = max(int(prof.index(T)), 1)
        w = prof.xi(starts, k)
        sups.append(w.max())
        infs.append(w.min())
    sups, infs = np.array(sups), np.array(infs)
    half = len(Ts) // 2
    U, L = float(sups[half:].min()), float(infs[half:].max())
    lo, hi = min(L, U), max(L, U)
    verdict = _classify(lo, hi, h.tol)
    return DensityReport(
        "alpha_X", {"tol": h.tol, "space": space.name, **h.to_dict()}, lo, hi, verdict,
        (lo + hi) / 2 if verdict is Verdict.CONVERGENT else None,
        samples=[(float(t), float(v)) for t, v in zip(Ts, sups)],
        lower_samples=[(float(t), float(v)) for t, v in zip(Ts, infs)],
        extras={"center": np.asarray(center).tolist(), "step": step,
                "max_standard_error": errs.get("max", 0.0), "quadrature_bound": step / 4},
    )


class CenterResiduals(NamedTuple):
    us: list
    residuals: list
    bounds: list


def center_independence_residual(space, A, x, y, us: Sequence[float], seed: int = 0) -> CenterResiduals:
    """``|rho_bar at x with r_minus - rho_bar at y with r_plus|`` per ``u``.

    ``bounds`` holds ``(h(r + d) - h(r))/h(r) + |h(r_plus)/h(r_minus) - 1|``.
    """
    d = space.distance(x, y)
    res, bnd = [], []
    for u in us:
        rm = r_minus(space, u)
        rp = rm + 1
        a = rho_bar_estimate(space, A, u, x, seed, radius=rm).value
        b = rho_bar_estimate(space, A, u, y, seed, radius=rp).value
        res.append(abs(a - b))
        hr = space.h(rm)
        bnd.append((space.h(rm + d) - hr) / hr + abs(space.h(rp) / hr - 1) if hr > 0 else math.inf)
    return CenterResiduals(list(us), res, bnd)


def K_A(A: MetricSet, r: float, n: int = 2, method: str = "auto", samples: int = 40_000,
        seed: int = 0) -> Estimate:
    """Fraction of the radius-``r`` sphere about the origin that lies in ``A``.

    ``method`` is ``"auto"`` (closed form if known, else Monte Carlo),
    ``"mc"`` (uniform random directions) or ``"angle"`` (midpoint rule in
    the polar angle, planar sets only; error from halving the node count).
    """
    if r < 0:
        raise InvariantError(f"r must be nonnegative, got {r}")
    if method == "auto":
        if isinstance(A, FullSpace):
            return Estimate(1.0, 0.0)
        if isinstance(A, RadialSet):
            return Estimate(1.0 if A.profile.contains(r) else 0.0, 0.0)
        if isinstance(A, HalfSpace):
            if r == 0:
                return Estimate(1.0 if A.offset <= 0 else 0.0, 0.0)
            t = A.offset / r
            if n == 1:
                return Estimate(((r * A.normal[0] >= A.offset) + (-r * A.normal[0] >= A.offset)) / 2, 0.0)
            if t >= 1:
                return Estimate(0.0, 0.0)
            if t <= -1:
                return Estimate(1.0, 0.0)
            cap = 0.5 * float(special.betainc((n - 1) / 2, 0.5, 1 - t * t))
            return Estimate(cap if t >= 0 else 1 - cap, 0.0)
        if isinstance(A, Cone2D) and n == 2:
            return Estimate(A.fraction, 0.0)
        method = "mc"
    if method == "mc":
        rng = _seed_for(seed, r, n)
        dirs = rng.standard_normal((samples, n))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        hit = A.contains_points(dirs * r).astype(float)
        return Estimate(float(hit.mean()), float(hit.std(ddof=1) / math.sqrt(samples)))
    if method == "angle":
        if n != 2:
            raise InvariantError("the angle rule is only available in the plane")

        def rule(m):
            th = (np.arange(m) + 0.5) * 2 * math.pi / m
            pts = r * np.column_stack((np.cos(th), np.sin(th)))
            return float(A.contains_points(pts).mean())

        fine, coarse = rule(samples), rule(samples // 2)
        return Estimate(fine, abs(fine - coarse))
    raise InvariantError(f"unknown method {method!r}")


def _k_integral(A: MetricSet, n: int, a: float, b: float, seed: int, samples: int) -> Estimate:
    """``integral over [a, b] of K_A(e^s) ds`` (``s = log r``)."""
    if isinstance(A, RadialSet):
        total = 0.0
        for p, q in A.profile.pieces(math.exp(a), math.exp(b)):
            total += exact_log(q) - exact_log(p)
        return Estimate(total, 0.0)
    probe = K_A(A, math.exp(a), n, seed=seed, samples=samples)
    if probe.error == 0:
        val, err = integrate.quad(lambda s: K_A(A, math.exp(s), n).value, a, b, limit=200)
        return Estimate(val, err)
    gx, gw = np.polynomial.legendre.leggauss(48)
    ss = a + (gx + 1) * (b - a) / 2
    w = gw * (b - a) / 2
    ests = [K_A(A, math.exp(s), n, seed=seed, samples=samples) for s in ss]
    v = np.array([e.value for e in ests])
    e = np.array([e.error for e in ests])
    return Estimate(float(w @ v), float(math.sqrt(float((w * w) @ (e * e)))))


def euclidean_reduction_residual(space: Euclidean, A: MetricSet, D: float, x: float,
                                 seed: int = 0, samples: int = 40_000) -> Estimate:
    """``|xi_bar(D^n, omega x^n) - (1/log D) integral over [x, Dx] of K_A(r)/r dr|``.

    The two terms are computed independently: the first from ball measures
    about the origin, the second from sphere fractions.  ``error`` combines
    their quadrature or sampling errors.
    """
    if not D > 1 or not x > 1:
        raise InvariantError(f"need D > 1 and x > 1, got D={D}, x={x}")
    n = space.n
    left = xi_bar(space, A, D ** n, space.omega * x ** n, seed=seed)
    lnD = math.log(D)
    k = _k_integral(A, n, math.log(x), math.log(x) + lnD, seed, samples)
    right = Estimate(k.value / lnD, k.error / lnD)
    return Estimate(abs(left.value - right.value), left.error + right.error)


def tree_branch_densities(r: float = 20) -> dict:
    """Densities of one branch of the 3-regular tree seen from both ends of its edge.

    Counts come from breadth-first search and are compared with the closed
    forms ``3 2^R - 2`` (ball), ``2^R - 1`` (branch seen from the root side)
    and ``2^(R+1) - 1`` (branch seen from inside), where ``R = ceil(r) - 1``.
    """
    T = Tree3()
    x, y = 0, 1
    A = BranchSet(x, y)
    R = math.ceil(r) - 1
    ball_x, ball_y = T.ball(x, r), T.ball(y, r)
    in_x = int(A.contains_points(ball_x).sum())
    in_y = int(A.contains_points(ball_y).sum())
    closed = {"ball": 3 * 2 ** R - 2, "branch_from_x": 2 ** R - 1, "branch_from_y": 2 ** (R + 1) - 1}
    return {
        "radius": r,
        "ball_x": len(ball_x), "ball_y": len(ball_y),
        "branch_in_ball_x": in_x, "branch_in_ball_y": in_y,
        "closed_form": closed,
        "sizes_match": len(ball_x) == closed["ball"] == len(ball_y) == T.h(r)
        and in_x == closed["branch_from_x"] and in_y == closed["branch_from_y"],
        "density_x": in_x / len(ball_x),
        "density_y": in_y / len(ball_y),
    }
