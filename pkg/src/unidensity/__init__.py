"""Densities of subsets of the half-line, thinning, and uniform-probability checks."""
from __future__ import annotations

from .density import (
    DEFAULT_HORIZON,
    DensityReport,
    Grid,
    Horizon,
    LogProfile,
    L_estimate,
    U_estimate,
    Ustar_estimate,
    Verdict,
    alpha,
    exact_alpha,
    exact_lambda,
    lambda_classify,
    rho,
    sigma,
    sigma_xi_identity_residual,
    tau,
    tau_sequence,
    xi,
    xi_along,
)
from .dsl import DSLError, compile_expr, parse, to_text
from .errors import (
    HorizonError,
    InvariantError,
    ModeError,
    QuadratureError,
    StructuralError,
    UnidensityError,
)
from .families import (
    LogBlocks,
    PowerBlocks,
    Squares,
    builtin_families,
    finite,
    logblocks,
    periodic,
    powerblocks,
    squares,
)
from .harness import AxiomCheckResult, run_suite
from .intervals import (
    Complement,
    DisjointUnion,
    Finite,
    Generator,
    Interval,
    LogImage,
    Periodic,
    Scale,
    SetSpec,
    Thin,
    Translate,
    WindowSeq,
    as_real,
    complement,
    empty,
    full,
    intersect,
    log_image,
    materialize,
    measure,
    prefix,
    scale,
    tail,
    thin,
    translate,
    union_disjoint,
)

__all__ = [
    "DSLError",
    "compile_expr",
    "parse",
    "to_text",
    "AxiomCheckResult",
    "run_suite",
    "alpha",
    "as_real",
    "builtin_families",
    "Complement",
    "complement",
    "DEFAULT_HORIZON",
    "DensityReport",
    "DisjointUnion",
    "empty",
    "exact_alpha",
    "exact_lambda",
    "finite",
    "Finite",
    "full",
    "Generator",
    "Grid",
    "Horizon",
    "HorizonError",
    "intersect",
    "Interval",
    "InvariantError",
    "L_estimate",
    "lambda_classify",
    "log_image",
    "LogBlocks",
    "logblocks",
    "LogImage",
    "LogProfile",
    "materialize",
    "measure",
    "ModeError",
    "periodic",
    "Periodic",
    "PowerBlocks",
    "powerblocks",
    "prefix",
    "QuadratureError",
    "rho",
    "Scale",
    "scale",
    "SetSpec",
    "sigma",
    "sigma_xi_identity_residual",
    "Squares",
    "squares",
    "StructuralError",
    "tail",
    "tau",
    "tau_sequence",
    "Thin",
    "thin",
    "Translate",
    "translate",
    "U_estimate",
    "UnidensityError",
    "union_disjoint",
    "Ustar_estimate",
    "Verdict",
    "WindowSeq",
    "xi",
    "xi_along",
]
