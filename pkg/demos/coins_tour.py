"""Tour of the coin constructors: families, decomposition, exact rationals.

Run:  python demos/coins_tour.py
"""

import math
from fractions import Fraction

import numpy as np

from livelywalk import (
    classify,
    coin_from_rational,
    coin_from_theta,
    decompose_linear_sum,
    grover_type,
    multiply,
    pell_point,
    perm_matrix,
)

np.set_printoptions(precision=6, suppress=True)

# ---------------------------------------------------------------------------
# The six permutation matrices are the atoms: every orthogonal coin in this
# library is a linear sum x*P + y*Q + z*R over one of two bases.
# ---------------------------------------------------------------------------
print("== permutation atoms ==")
for p in range(1, 7):
    coin = perm_matrix(p)
    print(f"P{p}: rows {coin.as_float().real.astype(int).tolist()}")

# ---------------------------------------------------------------------------
# The Grover matrix is the linear sum with x = -1/3, y = z = 2/3, and the
# whole Grover-type set is (2/3)J - P over the six atoms.
# ---------------------------------------------------------------------------
print("\n== Grover matrix ==")
g = grover_type(1)
print(g.as_float().real)
print("decomposition:", decompose_linear_sum(g.matrix))
print("classification:", classify(g.matrix))

# ---------------------------------------------------------------------------
# Each family is a circle group in disguise: X_t1 @ X_t2 = X_{t1+t2}.
# ---------------------------------------------------------------------------
print("\n== one-parameter family X ==")
for theta in (0.0, math.pi / 2, math.pi, 2 * math.pi / 3):
    c = coin_from_theta("X", theta)
    x, y, z = (complex(v).real for v in c.params)
    print(f"theta={theta:.4f}: x={x:+.4f} y={y:+.4f} z={z:+.4f}")

d1 = coin_from_theta("X", math.pi / 2)
print("\nquarter turn squared equals the Grover matrix:")
print(multiply(d1, d1).as_float().real)

# ---------------------------------------------------------------------------
# Exact rational coins: rational points on the ellipse come from rational
# points on the Pell conic X^2 - 3Y^2 = 1.
# ---------------------------------------------------------------------------
print("\n== exact rational coins ==")
for r in (Fraction(1), Fraction(2), Fraction(3), Fraction(5, 7)):
    px, py = pell_point(r)
    coin = coin_from_rational("X", r)
    print(f"r={r}: pell point ({px}, {py}), coin params {coin.params}")

coin = coin_from_rational("X", Fraction(2))
exact_gram = coin.matrix.T @ coin.matrix
print("\nexact Gram matrix of the r=2 coin (no floating error):")
print(exact_gram)
