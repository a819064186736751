"""Densities on metric measure spaces, and a tree where the center matters.

Run with ``python3 demos/metric_tour.py``.
"""
from __future__ import annotations

import math
from fractions import Fraction

from unidensity.families import logblocks
from unidensity.metric import (
    Euclidean,
    HalfSpace,
    RadialSet,
    alpha_X,
    euclidean_reduction_residual,
    rho_bar,
    tree_branch_densities,
)

R2 = Euclidean(2)
half = HalfSpace([1.0, 0.0])
annuli = RadialSet(logblocks(1, Fraction(1, 2)))

print("half-plane rho_bar at u = 1e6:", rho_bar(R2, half, 1e6))
print("log-annuli alpha_X:", f"{alpha_X(R2, annuli).value:.4f}")
est = euclidean_reduction_residual(R2, annuli, math.exp(10), math.e)
print(f"reduction residual {est.value:.2e} against the bound {1 / 10}")

out = tree_branch_densities(20)
print(f"tree branch density: {out['density_x']:.4f} from one end, {out['density_y']:.4f} from the other")
