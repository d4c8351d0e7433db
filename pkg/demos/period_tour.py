"""Tour of the period machinery: three methods and their cross-validation.

Run:  python demos/period_tour.py
"""

import math
from fractions import Fraction

from livelywalk import (
    WalkSpec,
    coin_from_theta_frac,
    coins,
    cross_validate,
    grover_type,
    perm_matrix,
    period_analytic,
    report_json,
)


def show(label, spec, tmax=10_000):
    cv = cross_validate(spec, tmax=tmax)
    cells = []
    for r in cv.results:
        if r.status == "finite":
            cells.append(f"{r.method}={r.period}")
        elif r.status == "no_period_up_to":
            cells.append(f"{r.method}: none<={r.bound}")
        else:
            cells.append(f"{r.method}: {r.status}")
    flag = "" if cv.agreement else "  <-- DISAGREEMENT"
    print(f"{label:<34} {'  '.join(cells)}{flag}")


# ---------------------------------------------------------------------------
# The Grover walk is periodic exactly on the 3-cycle.
# ---------------------------------------------------------------------------
print("== Grover coin across cycle lengths ==")
for n in (2, 3, 4, 5, 6):
    show(f"Grover, n={n}", WalkSpec(n=n, a=0, coin=grover_type(1)))

# ---------------------------------------------------------------------------
# Permutation coins are periodic on every cycle.
# ---------------------------------------------------------------------------
print("\n== permutation coins ==")
for n in (3, 5, 8):
    show(f"identity coin, n={n}", WalkSpec(n=n, a=0, coin=perm_matrix(1)))
    show(f"P5 coin, n={n}", WalkSpec(n=n, a=0, coin=perm_matrix(5)))
    show(f"P4 coin, n={n}", WalkSpec(n=n, a=0, coin=perm_matrix(4)))

# ---------------------------------------------------------------------------
# Rational angles at n = 3: the period follows the denominator.
# ---------------------------------------------------------------------------
print("\n== rational angles, n = 3, family X ==")
for frac in (Fraction(1, 5), Fraction(1, 6), Fraction(2, 7), Fraction(1, 4)):
    coin = coin_from_theta_frac("X", frac)
    show(f"theta = 2pi * {frac}", WalkSpec(n=3, a=0, coin=coin))

# ---------------------------------------------------------------------------
# The Grover-type table on the 3-cycle, negations included.
# ---------------------------------------------------------------------------
print("\n== Grover-type coins, n = 3 ==")
for p in range(1, 7):
    for negate in (False, True):
        label = f"-((2/3)J-P{p})" if negate else f"(2/3)J-P{p}"
        show(label, WalkSpec(n=3, a=0, coin=grover_type(p, negate=negate)))

# ---------------------------------------------------------------------------
# Liveliness a = 1 has no analytic route; the spectral and brute-force
# methods still agree on every special coin.
# ---------------------------------------------------------------------------
print("\n== lively walks (a = 1), n = 3 ==")
for p in (1, 2, 4):
    show(f"P{p} coin, a=1", WalkSpec(n=3, a=1, coin=perm_matrix(p)))
show("Grover coin, a=1", WalkSpec(n=3, a=1, coin=grover_type(1)))

res = period_analytic(WalkSpec(n=3, a=1, coin=grover_type(1)))
print("\nanalytic verdict for a=1:", res.status, f"({res.theorem})")

# ---------------------------------------------------------------------------
# The JSON report the CLI emits for one of these.
# ---------------------------------------------------------------------------
import json

cv = cross_validate(WalkSpec(n=3, a=0, coin=coins.grover_type(6)))
print("\nperiod report document:")
print(json.dumps(report_json(cv), indent=2)[:400], "...")
