"""Exact rational and floating matrix kernels.

Matrices come in two representations, distinguished by dtype:

* exact  -- numpy object arrays whose entries are ``fractions.Fraction``
* float  -- numpy complex128 arrays

Exact matrices stay exact under +, -, @ and transpose; every routine that
needs floating arithmetic converts explicitly via :func:`to_float`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, NotUnitary, NumericalFailure, OutOfRange

#: default tolerance for unitarity / orthogonality checks
DEFAULT_TOL = 1e-10
#: residual target for polished eigenvalues
RESIDUAL_TOL = 1e-13

_TWO_PI = 2.0 * math.pi


def is_exact(m: np.ndarray) -> bool:
    return m.dtype == object


def to_float(m: np.ndarray) -> np.ndarray:
    """Convert either representation to complex128."""
    if is_exact(m):
        return np.array([[complex(e) for e in row] for row in m], dtype=complex)
    return np.asarray(m, dtype=complex)


def exact_identity(n: int = 3) -> np.ndarray:
    return np.array(
        [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)],
        dtype=object,
    )


def exact_matrix(rows) -> np.ndarray:
    """Build an exact matrix from any nested iterable of Fraction-convertibles."""
    return np.array([[Fraction(e) for e in row] for row in rows], dtype=object)


def orthogonality_defect(m: np.ndarray) -> float:
    """``||M^T M - I||_F`` with the plain (unconjugated) transpose.

    Zero exactly for exact orthogonal matrices; the complex-parameter coins
    are complex *orthogonal*, not unitary, so no conjugation here.
    """
    if is_exact(m):
        if np.array_equal(m.T @ m, exact_identity(m.shape[0])):
            return 0.0
        m = to_float(m)
    mf = np.asarray(m, dtype=complex)
    return float(np.linalg.norm(mf.T @ mf - np.eye(mf.shape[0])))


def unitarity_defect(m: np.ndarray) -> float:
    """``||M^dagger M - I||_F``."""
    mf = to_float(m)
    return float(np.linalg.norm(mf.conj().T @ mf - np.eye(mf.shape[0])))


def exact_det3(m: np.ndarray) -> Fraction:
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def char_poly_coeffs(m: np.ndarray):
    """Coefficients (c2, c1, c0) of det(lam*I - M) = lam^3 + c2 lam^2 + c1 lam + c0.

    Computed directly from the nine entries (cofactor expansion), so the
    result is exact when the input is exact.
    """
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    c2 = -(a + e + i)
    c1 = (a * e - b * d) + (a * i - c * g) + (e * i - f * h)
    c0 = -(a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g))
    return c2, c1, c0


def principal_arg(z: complex) -> float:
    """Argument mapped into [0, 2*pi), with values within 1e-12 of 2*pi wrapped to 0."""
    a = cmath.phase(z) % _TWO_PI
    if _TWO_PI - a < 1e-12:
        return 0.0
    return a


def _exact_coeff_pair(v) -> tuple[Fraction, Fraction]:
    """(re, im) of an entry as exact Fractions (doubles are rationals)."""
    if isinstance(v, (Fraction, int)):
        return Fraction(v), Fraction(0)
    c = complex(v)
    return Fraction(c.real), Fraction(c.imag)


def _cp_add(a, b):
    return a[0] + b[0], a[1] + b[1]


def _cp_sub(a, b):
    return a[0] - b[0], a[1] - b[1]


def _cp_mul(a, b):
    return a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0]


def _exact_char_poly_pairs(m: np.ndarray):
    """Characteristic coefficients as exact complex-rational (re, im) pairs.

    Rounding the coefficients to doubles splits a double eigenvalue of the
    exact cubic by ~sqrt(eps); polishing against the exact coefficients is
    what recovers clustered eigenvalues to full precision.
    """
    a, b, c = (_exact_coeff_pair(v) for v in m[0])
    d, e, f = (_exact_coeff_pair(v) for v in m[1])
    g, h, i = (_exact_coeff_pair(v) for v in m[2])
    c2 = tuple(-v for v in _cp_add(_cp_add(a, e), i))
    c1 = _cp_add(
        _cp_add(_cp_sub(_cp_mul(a, e), _cp_mul(b, d)), _cp_sub(_cp_mul(a, i), _cp_mul(c, g))),
        _cp_sub(_cp_mul(e, i), _cp_mul(f, h)),
    )
    det = _cp_add(
        _cp_sub(
            _cp_mul(a, _cp_sub(_cp_mul(e, i), _cp_mul(f, h))),
            _cp_mul(b, _cp_sub(_cp_mul(d, i), _cp_mul(f, g))),
        ),
        _cp_mul(c, _cp_sub(_cp_mul(d, h), _cp_mul(e, g))),
    )
    c0 = tuple(-v for v in det)
    return [(Fraction(1), Fraction(0)), c2, c1, c0]


def _exact_horner(coeffs, lam: complex) -> complex:
    """Evaluate a polynomial at a double, carrying exact rational arithmetic.

    The absolute error of the result is ~eps * |value| instead of ~eps, which
    is what lets Newton keep converging inside a root cluster.
    """
    lr, li = Fraction(lam.real), Fraction(lam.imag)
    ar, ai = coeffs[0]
    for br, bi in coeffs[1:]:
        ar, ai = ar * lr - ai * li + br, ar * li + ai * lr + bi
    return complex(ar, ai)


def _cluster_polish(lam: complex, exact_coeffs) -> complex:
    for _ in range(60):
        f = _exact_horner(exact_coeffs, lam)
        fp = _exact_horner(
            [(3 * exact_coeffs[0][0], 3 * exact_coeffs[0][1]),
             (2 * exact_coeffs[1][0], 2 * exact_coeffs[1][1]),
             exact_coeffs[2]],
            lam,
        )
        if abs(fp) < 1e-30:
            break
        step = f / fp
        lam = lam - step
        if abs(step) < 1e-14:
            break
    return lam


def _solve_cluster(polished, exact_coeffs):
    """Resolve clustered roots by exact deflation.

    Independent Newton seeds can fall into the same basin when two roots
    nearly coincide, silently losing a root.  Instead: polish the root
    farthest from the cluster, divide it out of the cubic in exact rational
    arithmetic, and solve the remaining quadratic through its exactly
    computed discriminant, which sidesteps the sqrt(eps) cancellation floor.
    """
    d01 = abs(polished[0] - polished[1])
    d02 = abs(polished[0] - polished[2])
    d12 = abs(polished[1] - polished[2])
    if d01 <= d02 and d01 <= d12:
        iso = 2
    elif d02 <= d01 and d02 <= d12:
        iso = 1
    else:
        iso = 0
    r = _cluster_polish(polished[iso], exact_coeffs)

    _, c2, c1, _ = exact_coeffs
    rp = (Fraction(r.real), Fraction(r.imag))
    b = _cp_add(c2, rp)  # quotient is lam^2 + b lam + c
    c = _cp_add(c1, _cp_mul(rp, b))
    disc = _cp_sub(_cp_mul(b, b), (4 * c[0], 4 * c[1]))
    sq = cmath.sqrt(complex(disc[0], disc[1]))
    bb = complex(b[0], b[1])
    q1 = _cluster_polish((-bb + sq) / 2.0, exact_coeffs)
    q2 = _cluster_polish((-bb - sq) / 2.0, exact_coeffs)
    return [r, q1, q2]


def eig3_unitary(m: np.ndarray, tol: float = DEFAULT_TOL) -> list[complex]:
    """Eigenvalues of a 3x3 unitary matrix, sorted by principal argument.

    The characteristic polynomial is assembled exactly from the entries,
    solved in closed form (Cardano), and each root is polished with at most
    50 Newton steps to residual < 1e-13.  Clustered roots get a second
    polishing pass with exactly evaluated residuals, since plain double
    evaluation noise caps the accuracy of a near-double root at ~1e-8.
    Raises :class:`NotUnitary` when ``||M^dagger M - I||_F > tol`` and
    :class:`NumericalFailure` when a root fails to polish.
    """
    m = np.asarray(m)
    if m.shape != (3, 3):
        raise DimensionMismatch(f"expected 3x3 matrix, got {m.shape}")
    defect = unitarity_defect(m)
    if not defect <= tol:  # also catches NaN/Inf entries
        raise NotUnitary(f"unitarity defect {defect:.3e} exceeds tol {tol:.3e}")

    e2, e1, e0 = char_poly_coeffs(m)
    c2, c1, c0 = complex(e2), complex(e1), complex(e0)

    # depressed cubic t^3 + p t + q, lam = t - c2/3
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2**3 / 27.0 - c2 * c1 / 3.0 + c0
    disc = (q / 2.0) ** 2 + (p / 3.0) ** 3
    sq = cmath.sqrt(disc)
    u3 = -q / 2.0 + sq
    if abs(u3) < 1e-30:
        u3 = -q / 2.0 - sq
    if abs(u3) < 1e-30:
        roots = [-c2 / 3.0] * 3  # triple root
    else:
        u = u3 ** (1.0 / 3.0)
        omega = complex(-0.5, math.sqrt(3.0) / 2.0)
        roots = []
        for k in range(3):
            uk = u * omega**k
            roots.append(uk - p / (3.0 * uk) - c2 / 3.0)

    polished = []
    for lam in roots:
        ok = False
        for _ in range(50):
            f = ((lam + c2) * lam + c1) * lam + c0
            if abs(f) < RESIDUAL_TOL:
                ok = True
                break
            fp = (3.0 * lam + 2.0 * c2) * lam + c1
            if abs(fp) < 1e-30:
                break
            lam = lam - f / fp
        if not ok:
            f = ((lam + c2) * lam + c1) * lam + c0
            if abs(f) >= RESIDUAL_TOL:
                raise NumericalFailure(
                    f"root polishing stalled at residual {abs(f):.3e}"
                )
        polished.append(lam)

    # near a triple root the residual target is met ~1e-13^(1/3) = 5e-5 away
    # from the true root, so the cluster detector must be wider than that
    if min(
        abs(polished[0] - polished[1]),
        abs(polished[0] - polished[2]),
        abs(polished[1] - polished[2]),
    ) < 1e-3:
        polished = _solve_cluster(polished, _exact_char_poly_pairs(m))

    # the input is certified unitary within tol, so any radial offset of a
    # root (true offsets reach ~sqrt(eps) at defective configurations) is
    # known error; project onto the circle, but refuse clearly broken roots
    for i, lam in enumerate(polished):
        if abs(abs(lam) - 1.0) > 1e-6:
            raise NumericalFailure(f"eigenvalue modulus {abs(lam):.15f} is not 1")
        polished[i] = lam / abs(lam)

    polished.sort(key=principal_arg)
    return polished


def mat_power_norm_defect(m: np.ndarray, t: int) -> float:
    """``||M^t - I||_F`` for a square matrix, raw repeated-squaring product."""
    mf = to_float(m)
    if mf.ndim != 2 or mf.shape[0] != mf.shape[1]:
        raise DimensionMismatch(f"matrix is not square: {mf.shape}")
    if t < 1:
        raise OutOfRange("power must be a positive integer")
    power = np.linalg.matrix_power(mf, t)
    return float(np.linalg.norm(power - np.eye(mf.shape[0])))
