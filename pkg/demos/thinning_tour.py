"""Thinning on exact rationals, and why the product law can fail.

Run with ``python3 demos/thinning_tour.py``.
"""
from __future__ import annotations

from unidensity import Complement, PowerBlocks, alpha, compile_expr, materialize, rho, thin

evens = compile_expr("periodic(2,[0,1))")
squares = compile_expr("squares")

# A o B keeps the points of A whose position inside A lands in B
for a, b, name in ((evens, squares, "evens o squares"), (squares, evens, "squares o evens")):
    seq = materialize(thin(a, b), 130)
    print(f"{name:16s}", " ".join(str(iv) for iv in list(seq)[:6]))

# the density of a thinned set factorizes pointwise
x = 16
T = thin(evens, squares)
print(f"rho_(A o B)({x}) = {rho(T, x)}  and  rho_A({x}) rho_B(S_A({x})) =",
      rho(evens, x) * rho(squares, evens.prefix(x)))

# blocks [4^n, 2 4^n) thinned by their own complement
P = PowerBlocks(2, 2)
PP = thin(P, Complement(P))
print("A o A^c on [0, 4^6):", " ".join(str(iv) for iv in materialize(PP, 4 ** 6)))
a_thin = alpha(PP, method="numeric")
print(f"alpha(A o A^c) = {a_thin.value:.5f}, but alpha(A) alpha(A^c) = {alpha(P).value * alpha(Complement(P)).value}")
