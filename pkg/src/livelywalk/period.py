"""Walk period by analytic dispatch, spectral lcm and dense powering.

Three independent routes to the period T = min{t > 0 : U^t = I}:

* analytic  -- closed-form dispatch on the coin family and its angle,
               applicable when n divides a*l for every block (a = 0 at
               desk scale); may prove the period infinite.
* spectral  -- every eigenvalue angle is classified as a rational multiple
               of 2*pi by continued fractions; the period is the lcm of the
               multiplicative orders.
* bruteforce -- iterate M <- M U until ||M - I||_F <= tol.  The arbiter.

`cross_validate` runs all applicable methods and flags disagreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional

import numpy as np

from . import coins as _coins
from . import walk as _walk
from .errors import GuardExceeded, NotUnitModulus
from .exactnum import DEFAULT_TOL

TMAX_DEFAULT = 10_000
QMAX_DEFAULT = 1_000_000
#: identity detection threshold for brute force
IDENTITY_TOL = 1e-8
#: ||U^t - I|| must exceed this for all 0 < t < T when a period is verified
SEPARATION_TOL = 1e-6
#: |angle/(2*pi) - p/q| acceptance threshold for rational classification
ANGLE_TOL = 1e-11
#: additionally require err * q^2 below this, so large-q convergents that
#: merely shadow an irrational angle are not mistaken for exact rationals
DECISIVE = 1e-3
#: worst-case angle error of the block eigensolver, as a fraction of 2*pi
ANGLE_ACCURACY = 1e-12
#: largest order whose detection the decisiveness guard still guarantees
#: at that accuracy: err * q^2 < DECISIVE holds for all q up to this bound
GUARANTEED_ORDER_BOUND = int(math.sqrt(DECISIVE / ANGLE_ACCURACY))  # 31622

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class AngleClass:
    """Classification of an angle as 2*pi*(p/q) or irrational up to a bound."""

    value: float
    fraction: Optional[Fraction]
    qmax: int

    @property
    def is_rational(self) -> bool:
        return self.fraction is not None


@dataclass(frozen=True)
class PeriodResult:
    status: str  # "finite" | "no_period_up_to" | "proven_infinite" | "not_applicable"
    method: str  # "analytic" | "spectral" | "bruteforce"
    period: Optional[int] = None
    bound: Optional[int] = None
    theorem: Optional[str] = None

    @property
    def finite(self) -> bool:
        return self.status == "finite"


def classify_fraction(x: float, qmax: int = QMAX_DEFAULT, tol: float = ANGLE_TOL,
                      decisive: float = DECISIVE) -> Optional[Fraction]:
    """Best convergent p/q of x mod 1 with q <= qmax, err < tol and err*q^2 < decisive.

    Returns None when no convergent qualifies.  The decisiveness guard keeps
    convergents of genuinely irrational values (whose error scales like
    1/q^2) from slipping under the absolute tolerance once q is large.
    """
    x = float(x) % 1.0
    if abs(x) < tol or abs(x - 1.0) < tol:
        return Fraction(0)
    h0, k0 = 1, 0
    h1, k1 = 0, 1  # first convergent of a value in (0, 1) is 0/1
    frac = x
    for _ in range(64):
        if frac <= 0:
            break
        y = 1.0 / frac
        a = math.floor(y)
        frac = y - a
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > qmax:
            break
        err = abs(x - h1 / k1)
        if err < tol and err * k1 * k1 < decisive:
            return Fraction(h1, k1)
    return None


def classify_angle(value: float, qmax: int = QMAX_DEFAULT) -> AngleClass:
    """Classify a radian angle: rational fraction of 2*pi, or not, up to qmax."""
    return AngleClass(value=value, fraction=classify_fraction(value / _TWO_PI, qmax), qmax=qmax)


def order_of_unit(lam: complex, qmax: int = QMAX_DEFAULT, tol: float = DEFAULT_TOL) -> Optional[int]:
    """Multiplicative order of a unit-modulus complex number, or None.

    arg(lam)/(2*pi) is scanned for a continued-fraction convergent p/q with
    q <= qmax; when one qualifies the order is q (the fraction is already in
    lowest terms).  Raises NotUnitModulus if |lam| strays from 1 by more
    than tol.
    """
    lam = complex(lam)
    if not abs(abs(lam) - 1.0) <= tol:  # also catches NaN
        raise NotUnitModulus(f"|lambda| = {abs(lam)} is not 1 within {tol}")
    frac = classify_fraction((math.atan2(lam.imag, lam.real) / _TWO_PI) % 1.0, qmax)
    if frac is None:
        return None
    return frac.denominator


def _lcm(values) -> int:
    return reduce(math.lcm, values, 1)


def period_spectral(spec: _walk.WalkSpec, qmax: int = QMAX_DEFAULT) -> PeriodResult:
    """Period as the lcm of the eigenvalue orders over all momentum blocks.

    When some eigenvalue's angle fails to classify as rational, the walk has
    no period up to the reported bound: a period T forces every order to
    divide T, and orders are detected reliably as far as the decisiveness
    guard allows, so the bound is min(qmax, GUARANTEED_ORDER_BOUND).
    """
    bound = min(qmax, GUARANTEED_ORDER_BOUND)
    orders = []
    for entry in _walk.spectrum(spec):
        q = order_of_unit(entry.value, qmax)
        if q is None:
            return PeriodResult(status="no_period_up_to", method="spectral", bound=bound)
        orders.append(q)
    return PeriodResult(status="finite", method="spectral", period=_lcm(orders))


def period_bruteforce(spec: _walk.WalkSpec, tmax: int = TMAX_DEFAULT,
                      tol: float = IDENTITY_TOL) -> PeriodResult:
    """First t <= tmax with ||U^t - I||_F <= tol, by iterated multiplication."""
    if spec.n > _walk.DENSE_GUARD:
        raise GuardExceeded(f"brute force needs dense operators (n <= {_walk.DENSE_GUARD})")
    u = _walk.evolution_operator(spec)
    eye = np.eye(spec.dim)
    m = u.copy()
    for t in range(1, tmax + 1):
        if np.linalg.norm(m - eye) <= tol:
            return PeriodResult(status="finite", method="bruteforce", period=t)
        m = m @ u
    return PeriodResult(status="no_period_up_to", method="bruteforce", bound=tmax)


# --- analytic dispatch -----------------------------------------------------

#: the only angle fractions that rational (permutation / Grover-type) coins occupy
_SPECIAL_FRACTIONS = tuple(Fraction(k, 6) for k in range(6))


def _identity_coin_period(n: int) -> int:
    # lcm of c_l * p_l with 2l/n = m_l/p_l in lowest terms, c_l = 2 for odd m_l
    vals = []
    for l in range(1, n):
        f = Fraction(2 * l, n)
        c = 1 if f.numerator % 2 == 0 else 2
        vals.append(c * f.denominator)
    return _lcm(vals)


def _half_step_period(n: int, doubled: bool) -> int:
    # lcm{2, 2 p_l} with m_l/p_l the lowest-terms form of 2l/n (doubled) or l/n
    vals = [2]
    for l in range(1, n):
        f = Fraction(2 * l, n) if doubled else Fraction(l, n)
        vals.append(2 * f.denominator)
    return _lcm(vals)


def _reconstruct_angle(family: str, x, y) -> tuple[float, float]:
    """(cos theta, sin theta) recovered from the first two coefficients."""
    if family in ("X", "Z"):
        cos_t = (3.0 * complex(x).real - 1.0) / 2.0
        sin_t = math.sqrt(3.0) * (complex(y).real - (1.0 - cos_t) / 3.0)
    else:
        cos_t = (3.0 * complex(x).real + 1.0) / 2.0
        sin_t = math.sqrt(3.0) * (complex(y).real + (1.0 + cos_t) / 3.0)
    return cos_t, sin_t


def _theta_fraction_of(spec_coin: _coins.Coin3, family: str, x, y,
                       qmax: int) -> Optional[Fraction]:
    """theta/(2*pi) as an exact fraction: attached to the coin, or recovered
    via atan2 and continued-fraction classification."""
    if spec_coin.theta_frac is not None:
        return spec_coin.theta_frac % 1
    cos_t, sin_t = _reconstruct_angle(family, x, y)
    theta = math.atan2(sin_t, cos_t) % _TWO_PI
    return classify_fraction(theta / _TWO_PI, qmax)


def period_analytic(spec: _walk.WalkSpec, qmax: int = QMAX_DEFAULT) -> PeriodResult:
    """Closed-form period dispatch on the coin family.

    Requires a = 0 (mod n) so the momentum phases e^{-ika} collapse to 1 on
    every block; other liveliness values return not_applicable and are left
    to the spectral and brute-force routes.  Permutation and Grover-type
    coins are matched by matrix; generic coins dispatch on the rational
    angle class of theta.  Exact rational coins that are not (up to sign)
    permutations or Grover-type are aperiodic for every n.
    """
    def na(reason):
        return PeriodResult(status="not_applicable", method="analytic", theorem=reason)

    def finite(t, tag):
        return PeriodResult(status="finite", method="analytic", period=int(t), theorem=tag)

    def infinite(tag):
        return PeriodResult(status="proven_infinite", method="analytic", theorem=tag)

    n = spec.n
    if spec.a % n != 0:
        return na("phase-condition-unmet")

    cls = _coins.classify(spec.coin.matrix)
    fam = cls.family

    frac = _theta_fraction_of(spec.coin, fam, cls.x, cls.y, qmax)
    special = None
    if cls.is_permutation or cls.is_grover_type or _is_negated_special(spec.coin):
        # rational coins occupy angles that are multiples of pi/3; snap exactly
        special = _snap_special_angle(fam, cls)
        if special is not None:
            frac = special

    if fam == "X":
        if frac == 0:
            return finite(_identity_coin_period(n), "x-family:identity-lcm")
        if frac in (Fraction(1, 3), Fraction(2, 3)):
            return finite(3, "x-family:cyclic-permutation")
        if n != 3:
            return _rational_or_infinite(spec, cls, "x-family:aperiodic-off-3cycle", infinite, na, frac)
        if frac is None:
            return _rational_or_infinite(spec, cls, "x-family:aperiodic-angle", infinite, na, frac)
        return finite(_lcm([3, frac.denominator]), "x-family:n3-rational-angle")

    if fam == "Z":
        if frac in (Fraction(0), Fraction(2, 3)):
            return finite(_half_step_period(n, doubled=False), "z-family:permutation-lcm")
        if frac == Fraction(1, 3):
            return finite(2, "z-family:swap-coin")
        if n != 3:
            return _rational_or_infinite(spec, cls, "z-family:aperiodic-off-3cycle", infinite, na, frac)
        if frac is None:
            return _rational_or_infinite(spec, cls, "z-family:aperiodic-angle", infinite, na, frac)
        q = (frac - Fraction(1, 3)).denominator
        return finite(_lcm([2, 2 * q]), "z-family:n3-rational-angle")

    if fam == "Y":
        if frac == Fraction(1, 2):
            return finite(_half_step_period(n, doubled=True), "y-family:negated-identity-lcm")
        if frac in (Fraction(1, 6), Fraction(5, 6)):
            return finite(6, "y-family:negated-cyclic")
        if n != 3:
            return _rational_or_infinite(spec, cls, "y-family:aperiodic-off-3cycle", infinite, na, frac)
        if frac is None:
            return _rational_or_infinite(spec, cls, "y-family:aperiodic-angle", infinite, na, frac)
        q = (2 * frac).denominator  # theta/pi = m/q
        return finite(_lcm([6, 2 * q]), "y-family:n3-rational-angle")

    # fam == "W"
    if frac in (Fraction(1, 2), Fraction(1, 6)):
        return finite(_half_step_period(n, doubled=False), "w-family:permutation-lcm")
    if frac == Fraction(5, 6):
        return finite(2, "w-family:negated-swap")
    if n != 3:
        return _rational_or_infinite(spec, cls, "w-family:aperiodic-off-3cycle", infinite, na, frac)
    if frac is None:
        return _rational_or_infinite(spec, cls, "w-family:aperiodic-angle", infinite, na, frac)
    q = (frac + Fraction(1, 6)).denominator
    return finite(_lcm([2, 2 * q]), "w-family:n3-rational-angle")


def _is_negated_special(coin: _coins.Coin3) -> bool:
    mf = coin.as_float()
    if np.max(np.abs(mf.imag)) > DEFAULT_TOL:
        return False
    neg = -mf.real
    return (
        _coins._nearest_permutation(neg) is not None
        or _coins._nearest_grover_type(neg) is not None
    )


def _snap_special_angle(family: str, cls: _coins.Classification) -> Optional[Fraction]:
    cos_t, sin_t = _reconstruct_angle(family, cls.x, cls.y)
    for frac in _SPECIAL_FRACTIONS:
        if abs(cos_t - math.cos(_TWO_PI * float(frac))) <= 1e-9 and abs(
            sin_t - math.sin(_TWO_PI * float(frac))
        ) <= 1e-9:
            return frac
    return None


def _rational_or_infinite(spec, cls, tag, infinite, na, frac):
    """Generic coin with no finite-period row.

    Any non-special coin is aperiodic when n != 3.  At n = 3, an exact
    rational coin that is not (up to sign) a permutation or Grover-type
    matrix has cos(theta) rational while theta/pi is not, so it is
    aperiodic as well; a floating coin whose angle failed to classify
    stays undecided.
    """
    if spec.n != 3:
        return infinite(tag)
    if spec.coin.exact:
        return infinite("rational-coin:aperiodic")
    return na("angle-unclassified")


# --- cross validation ------------------------------------------------------

METHODS = ("analytic", "spectral", "bruteforce")


@dataclass(frozen=True)
class CrossValidation:
    spec: _walk.WalkSpec
    results: tuple
    agreement: bool


def _pairwise_consistent(a: PeriodResult, b: PeriodResult) -> bool:
    if "not_applicable" in (a.status, b.status):
        return True
    if a.finite and b.finite:
        return a.period == b.period
    for fin, other in ((a, b), (b, a)):
        if fin.finite and other.status == "no_period_up_to":
            if other.bound is not None and fin.period <= other.bound:
                return False
        if fin.finite and other.status == "proven_infinite":
            return False
    return True


def cross_validate(spec: _walk.WalkSpec, tmax: int = TMAX_DEFAULT, qmax: int = QMAX_DEFAULT,
                   methods=METHODS) -> CrossValidation:
    """Run the requested methods and flag any inconsistency between them."""
    results = []
    for method in methods:
        if method == "analytic":
            results.append(period_analytic(spec, qmax))
        elif method == "spectral":
            results.append(period_spectral(spec, qmax))
        elif method == "bruteforce":
            results.append(period_bruteforce(spec, tmax))
        else:
            raise ValueError(f"unknown method {method!r}")
    agreement = all(
        _pairwise_consistent(results[i], results[j])
        for i in range(len(results))
        for j in range(i + 1, len(results))
    )
    return CrossValidation(spec=spec, results=tuple(results), agreement=agreement)


def report_json(cv: CrossValidation) -> dict:
    """Period report document per the shared schema."""
    return {
        "n": cv.spec.n,
        "a": cv.spec.a,
        "coin": _coins.coin_to_json(cv.spec.coin),
        "results": [
            {
                "method": r.method,
                "status": r.status,
                "period": r.period,
                "bound": r.bound,
                "theorem": r.theorem,
            }
            for r in cv.results
        ],
        "agreement": cv.agreement,
    }
