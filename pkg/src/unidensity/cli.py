"""Command-line front end.

Every command prints a JSON envelope ``{command, config, results, versions}``
(or CSV rows of sample series with ``--format csv``).  Exit codes: 2 for
parse or input errors, 3 when a horizon or quadrature budget is exceeded, 4
when a check fails, 5 when ``--strict`` meets an inconclusive verdict.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys
from fractions import Fraction
from importlib import metadata
from typing import Optional, Sequence

import numpy as np
import scipy

from . import density as dens
from . import harness, metric
from .density import DensityReport, Grid, Horizon, Verdict, _jsonable
from .dsl import DSLError, compile_expr
from .errors import HorizonError, QuadratureError, UnidensityError
from .families import logblocks
from .intervals import materialize, thin

EXIT_PARSE, EXIT_HORIZON, EXIT_CHECK, EXIT_STRICT = 2, 3, 4, 5

FUNCTIONALS = ("rho", "sigma", "xi", "tau", "lambda", "alpha", "U", "L", "Ustar")
CONFIG_KEYS = ("window", "x_grid", "D_grid", "logD_grid", "tol", "seed", "strict", "format", "step")


def _versions() -> dict:
    try:
        pkg = metadata.version("artifact")
    except metadata.PackageNotFoundError:
        pkg = "unknown"
    return {"package": pkg, "python": platform.python_version(), "numpy": np.__version__,
            "scipy": scipy.__version__}


def _scalar(text: str):
    """Rational (``7/6``) or decimal literal, kept exact."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc


def _grid(text: str) -> Grid:
    try:
        return Grid.parse(text)
    except UnidensityError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _common(p: argparse.ArgumentParser):
    g = p.add_argument_group("horizon and output")
    g.add_argument("--window", type=_scalar, help="materialization window")
    g.add_argument("--x-grid", dest="x_grid", type=_grid, help="x grid as start:ratio:count")
    g.add_argument("--D-grid", dest="D_grid", type=_grid, help="D grid as start:ratio:count")
    g.add_argument("--logD-grid", dest="logD_grid", type=_grid, help="log D grid as start:ratio:count")
    g.add_argument("--step", type=float, help="log-coordinate quadrature step")
    g.add_argument("--tol", type=float, help="convergence tolerance")
    g.add_argument("--seed", type=int, help="master seed")
    g.add_argument("--strict", action="store_true", default=None, help="exit 5 on inconclusive verdicts")
    g.add_argument("--format", choices=("json", "csv"), help="output format")
    g.add_argument("--config", help="JSON file with defaults for the keys above")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="unidensity", description="Densities, thinning and uniform-probability checks.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("density", help="evaluate a density functional")
    d.add_argument("expr")
    fg = d.add_mutually_exclusive_group()
    fg.add_argument("--functional", choices=FUNCTIONALS)
    for f in FUNCTIONALS:
        fg.add_argument(f"--{f}", dest="functional", action="store_const", const=f)
    d.add_argument("--x", type=_scalar, help="position x")
    d.add_argument("--D", type=_scalar, help="window length D")
    d.add_argument("--C", type=_scalar, help="ratio C > 1 for tau and U*")
    d.add_argument("--j", type=int, help="block index j for tau")
    d.add_argument("--method", choices=("auto", "symbolic", "numeric"), default="auto")
    _common(d)

    a = sub.add_parser("alpha", help="logarithmic density")
    a.add_argument("expr")
    a.add_argument("--method", choices=("auto", "symbolic", "numeric"), default="auto")
    _common(a)

    c = sub.add_parser("classify", help="natural density, uniform density and logarithmic density")
    c.add_argument("expr")
    _common(c)

    t = sub.add_parser("thin", help="list the intervals of A o B")
    t.add_argument("A")
    t.add_argument("B")
    _common(t)

    k = sub.add_parser("check", help="run the axiom harness")
    k.add_argument("--suite", choices=("wtp", "counterexample", "decomposition", "p2-search"), default="wtp")
    k.add_argument("--trials", type=int, default=20, help="random instances per randomized check")
    _common(k)

    m = sub.add_parser("metric", help="densities on metric spaces")
    m.add_argument("--space", default="euclidean:2", help="euclidean:N, integer-lattice or tree3")
    m.add_argument("--set", dest="set_name", default="halfplane",
                   help="full, halfplane, annuli, cone, branch, or an expression (integer lattice)")
    m.add_argument("--what", default="rho_bar",
                   choices=("rho_bar", "xi_bar", "alpha_X", "K", "reduction", "centers", "tree"))
    m.add_argument("--u", type=float, default=1e4)
    m.add_argument("--D", type=float, default=math.e ** 10)
    m.add_argument("--x", type=float, default=math.e)
    m.add_argument("--r", type=float, default=20.0)
    _common(m)

    z = sub.add_parser("decompose", help="write a window set as (M1 & X) | (M2 & Y)")
    z.add_argument("expr", help="set expression, materialized on --window")
    _common(z)
    return p


def _settings(args) -> dict:
    cfg = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            raw = json.load(fh)
        unknown = set(raw) - set(CONFIG_KEYS)
        if unknown:
            raise UnidensityError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(raw)
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    for key in ("x_grid", "D_grid", "logD_grid"):
        v = cfg.get(key)
        if isinstance(v, str):
            cfg[key] = Grid.parse(v)
        elif isinstance(v, dict):
            cfg[key] = Grid(**v)
    if isinstance(cfg.get("window"), (str, int, float)):
        cfg["window"] = Fraction(cfg["window"])
    cfg.setdefault("seed", 0)
    cfg.setdefault("strict", False)
    cfg.setdefault("format", "json")
    return cfg


def _horizon(cfg: dict, base: Horizon = dens.DEFAULT_HORIZON) -> Horizon:
    kw = {k: cfg[k] for k in ("x_grid", "D_grid", "logD_grid", "tol", "step") if k in cfg}
    return base.with_(**kw)


def _result_dict(r) -> dict:
    return r.to_dict() if hasattr(r, "to_dict") else _jsonable(r)


def _envelope(command: dict, cfg: dict, results: list) -> dict:
    shown = {k: (v.to_dict() if isinstance(v, Grid) else v) for k, v in cfg.items()}
    return _jsonable({"command": command, "config": shown, "results": [_result_dict(r) for r in results],
                      "versions": _versions()})


def _csv(results: list) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in results:
        if isinstance(r, DensityReport):
            w.writerow(["functional", "argument", "value"])
            for arg, val in r.samples:
                w.writerow([r.functional, arg, val])
            w.writerow([r.functional, "verdict", r.verdict.value])
            if r.value is not None:
                w.writerow([r.functional, "limit", r.value])
        elif isinstance(r, harness.AxiomCheckResult):
            w.writerow([r.axiom, r.status])
        elif isinstance(r, dict) and "intervals" in r:
            w.writerow(["lo", "hi"])
            for lo, hi in r["intervals"]:
                w.writerow([lo, hi])
        elif isinstance(r, dict):
            w.writerow(["key", "value"])
            for k, v in sorted(_jsonable(r).items()):
                w.writerow([k, v if isinstance(v, (str, int, float, bool)) else json.dumps(v, sort_keys=True)])
        else:
            w.writerow([json.dumps(_jsonable(r), sort_keys=True)])
    return buf.getvalue()


def _as_exact_or_float(v: Optional[Fraction], mode: str):
    if v is None:
        return None
    return v if mode == "exact" else float(v)


def _density(args, cfg, functional: str) -> list:
    A = compile_expr(args.expr)
    h = _horizon(cfg)
    mode = A.mode

    def need(name):
        v = getattr(args, name, None)
        if v is None:
            raise UnidensityError(f"--{name} is required for {functional}")
        return _as_exact_or_float(v, mode)

    if functional == "rho":
        x = need("x")
        return [{"functional": "rho", "x": x, "value": dens.rho(A, x)}]
    if functional == "sigma":
        D, x = need("D"), need("x")
        return [{"functional": "sigma", "D": D, "x": x, "value": dens.sigma(A, D, x)}]
    if functional == "xi":
        D, x = need("D"), need("x")
        window = float(cfg["window"]) if "window" in cfg else dens.XI_WINDOW
        return [{"functional": "xi", "D": D, "x": x, "value": dens.xi(A, D, x, window=window)}]
    if functional == "tau":
        C, j = need("C"), args.j
        if j is None:
            raise UnidensityError("--j is required for tau")
        return [{"functional": "tau", "C": C, "j": j, "value": dens.tau(A, C, j)}]
    if functional == "lambda":
        return [dens.lambda_classify(A, h)]
    if functional == "alpha":
        return [dens.alpha(A, h, method=args.method)]
    if functional == "U":
        return [dens.U_estimate(A, h)]
    if functional == "L":
        return [dens.L_estimate(A, h)]
    if functional == "Ustar":
        return [dens.Ustar_estimate(A, float(need("C")), h)]
    raise UnidensityError(f"unknown functional {functional!r}")


def _classify(args, cfg) -> list:
    A = compile_expr(args.expr)
    h = _horizon(cfg)
    lam = dens.lambda_classify(A, h)
    U, L = dens.U_estimate(A, h), dens.L_estimate(A, h)
    al = dens.alpha(A, h)
    uniform = U.convergent and L.convergent and abs(float(U.value) - float(L.value)) <= h.tol
    summary = {"natural_density": lam.convergent, "uniform": uniform, "log_density": al.convergent}
    return [summary, lam, U, L, al]


def _thin(args, cfg) -> list:
    A, B = compile_expr(args.A), compile_expr(args.B)
    if A.mode != B.mode:
        A, B = A.as_real(), B.as_real()
    W = cfg.get("window", Fraction(100))
    W = W if A.mode == "exact" else float(W)
    seq = materialize(thin(A, B), W)
    pairs = [[_fmt(iv.lo), _fmt(iv.hi)] for iv in seq]
    return [{"window": _fmt(W), "intervals": pairs, "measure": _fmt(seq.measure())}]


def _fmt(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    return repr(float(v))


def _check(args, cfg) -> list:
    h = _horizon(cfg)
    seed = cfg["seed"]
    if args.suite == "wtp":
        return harness.run_suite(seed, h, random_trials=args.trials)
    if args.suite == "counterexample":
        return [harness.thinnability_counterexample(h)]
    if args.suite == "p2-search":
        return harness.search_p2_witnesses(seed, h, trials=args.trials)
    rng = np.random.default_rng(seed)
    return [harness.check_decomposition(harness.random_window_seq(rng), seed=seed) for _ in range(args.trials)]


def _metric_set(name: str, space):
    if name == "full":
        return metric.FullSpace()
    if name == "halfplane":
        n = getattr(space, "n", 2)
        return metric.HalfSpace([1.0] + [0.0] * (n - 1))
    if name == "annuli":
        return metric.RadialSet(logblocks(1, Fraction(1, 2)))
    if name == "cone":
        return metric.Cone2D(0.0, math.pi / 2)
    if name == "branch":
        return metric.BranchSet(0, 1)
    return metric.IntegerSet(compile_expr(name))


def _space(text: str):
    if text.startswith("euclidean"):
        _, _, n = text.partition(":")
        return metric.Euclidean(int(n or 2))
    if text in ("integer-lattice", "Z", "z"):
        return metric.IntegerLattice()
    if text == "tree3":
        return metric.Tree3()
    raise UnidensityError(f"unknown space {text!r}")


def _metric(args, cfg) -> list:
    seed = cfg["seed"]
    if args.what == "tree":
        return [metric.tree_branch_densities(args.r)]
    space = _space(args.space)
    A = _metric_set(args.set_name, space)
    if args.what == "rho_bar":
        est = metric.rho_bar_estimate(space, A, args.u, seed=seed)
        return [{"rho_bar": est.value, "error": est.error, "u": args.u, "r_minus": metric.r_minus(space, args.u)}]
    if args.what == "xi_bar":
        est = metric.xi_bar(space, A, args.D, args.x, seed=seed)
        return [{"xi_bar": est.value, "error": est.error, "D": args.D, "x": args.x}]
    if args.what == "alpha_X":
        return [metric.alpha_X(space, A, _horizon(cfg, metric.METRIC_HORIZON), seed=seed)]
    if args.what == "K":
        est = metric.K_A(A, args.r, getattr(space, "n", 2), seed=seed)
        return [{"K": est.value, "error": est.error, "r": args.r}]
    if args.what == "reduction":
        est = metric.euclidean_reduction_residual(space, A, args.D, args.x, seed=seed)
        return [{"residual": est.value, "error": est.error, "bound": 1 / math.log(args.D)}]
    if args.what == "centers":
        o = space.origin()
        if isinstance(o, np.ndarray):
            y = o.copy()
            y[0] = 1.0
        else:
            y = 1
        us = [10.0 ** k for k in range(1, 6)]
        res = metric.center_independence_residual(space, A, o, y, us, seed=seed)
        return [{"u": res.us, "residual": res.residuals, "bound": res.bounds}]
    raise UnidensityError(f"unknown metric command {args.what!r}")


def _decompose(args, cfg) -> list:
    A = compile_expr(args.expr)
    W = cfg.get("window", Fraction(20))
    if A.mode != "exact":
        raise UnidensityError("decompose needs an exact set expression")
    seq = materialize(A, W)
    res = harness.check_decomposition(seq, seed=cfg["seed"])
    dec = harness.decompose_aC(seq)
    pieces = {k: [str(iv) for iv in materialize(getattr(dec, k), W)] for k in ("M1", "M2", "X", "Y")}
    return [res, {"window": _fmt(W), "A": [str(iv) for iv in seq], **pieces}]


def _status(results: list, strict: bool) -> int:
    verdicts, failed = [], False
    for r in results:
        if isinstance(r, harness.AxiomCheckResult):
            failed |= r.status == harness.FAIL
            if r.status == harness.INCONCLUSIVE:
                verdicts.append(Verdict.INCONCLUSIVE)
        elif isinstance(r, DensityReport):
            verdicts.append(r.verdict)
    if failed:
        return EXIT_CHECK
    if strict and Verdict.INCONCLUSIVE in verdicts:
        return EXIT_STRICT
    return 0


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _settings(args)
        cmd = args.command
        if cmd == "density":
            results = _density(args, cfg, args.functional or "alpha")
        elif cmd == "alpha":
            results = _density(args, cfg, "alpha")
        elif cmd == "classify":
            results = _classify(args, cfg)
        elif cmd == "thin":
            results = _thin(args, cfg)
        elif cmd == "check":
            results = _check(args, cfg)
        elif cmd == "metric":
            results = _metric(args, cfg)
        else:
            results = _decompose(args, cfg)
    except DSLError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (HorizonError, QuadratureError) as exc:
        print(f"horizon error: {exc}", file=sys.stderr)
        return EXIT_HORIZON
    except (UnidensityError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    echo = {k: v for k, v in vars(args).items() if k not in ("config",) and v is not None}
    if cfg["format"] == "csv":
        out.write(_csv(results))
    else:
        out.write(json.dumps(_envelope(_jsonable(echo), cfg, results), sort_keys=True, indent=2) + "\n")
    return _status(results, cfg["strict"])


def main(argv: Optional[Sequence[str]] = None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
