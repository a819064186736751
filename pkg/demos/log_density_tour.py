"""Natural, uniform and logarithmic density of a few sets.

Run with ``python3 demos/log_density_tour.py``.
"""
from __future__ import annotations

import math

from unidensity import (
    L_estimate,
    U_estimate,
    Ustar_estimate,
    alpha,
    compile_expr,
    lambda_classify,
    sigma_xi_identity_residual,
)


def fmt(rep):
    if rep.convergent:
        return f"{float(rep.value):.5f}"
    return f"{rep.verdict.value} [{rep.liminf_estimate:.4f}, {rep.limsup_estimate:.4f}]"


for text in ("periodic(3,[0,2))", "logblocks(2,1)", "powerblocks(2,2)", "squares"):
    A = compile_expr(text)
    print(f"{text:20s} lambda {fmt(lambda_classify(A)):34s} alpha {fmt(alpha(A, method='numeric'))}")

# U and L agree for periodic sets
P = compile_expr("periodic(3,[0,2))")
print("periodic(3,[0,2)): U =", fmt(U_estimate(P)), " L =", fmt(L_estimate(P)))

# the windowed identity linking sigma of log A to xi of A
A = compile_expr("logblocks(2,1)")
print("identity residual at D = e^4, x = e:", sigma_xi_identity_residual(A, math.e ** 4, math.e))

# U*(C, A) sits in a bracket that tightens as C decreases to 1
for C in (2.0, 1.5, 1.1):
    w = math.log(C) / (C - 1)
    print(f"C = {C}: {w * 0.5:.4f} <= U* = {Ustar_estimate(A, C).value:.4f} <= {1 - w * 0.5:.4f}")
