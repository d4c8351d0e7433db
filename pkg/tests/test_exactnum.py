import math
from fractions import Fraction

import numpy as np
import pytest

from livelywalk import coins, eig3_unitary, mat_power_norm_defect
from livelywalk.errors import DimensionMismatch, NotUnitary
from livelywalk.exactnum import (
    char_poly_coeffs,
    exact_identity,
    orthogonality_defect,
    to_float,
)

from conftest import random_unitary3, assert_same_multiset


GROVER = (2.0 / 3.0) * np.ones((3, 3)) - np.eye(3)
CYCLE = np.array([[0.0, 1, 0], [0, 0, 1], [1, 0, 0]])


class TestEig3:
    def test_identity(self):
        assert eig3_unitary(np.eye(3)) == pytest.approx([1, 1, 1])

    def test_grover(self):
        # char poly of (2/3)J - I factors as (lam - 1)(lam + 1)^2
        lams = eig3_unitary(GROVER)
        assert lams == pytest.approx([1, -1, -1])

    def test_cyclic_permutation(self):
        # companion-matrix oracle: the roots of lam^3 = 1
        oracle = sorted(np.roots([1, 0, 0, -1]), key=lambda z: np.angle(z) % (2 * math.pi))
        lams = eig3_unitary(CYCLE)
        assert np.max(np.abs(np.array(lams) - np.array(oracle))) < 1e-12

    def test_sorted_by_principal_argument(self, rng):
        for _ in range(200):
            lams = eig3_unitary(random_unitary3(rng))
            args = [np.angle(z) % (2 * math.pi) for z in lams]
            args = [0.0 if 2 * math.pi - a < 1e-9 else a for a in args]
            assert args == sorted(args)

    def test_matches_numpy_oracle(self, rng):
        for _ in range(500):
            u = random_unitary3(rng)
            assert_same_multiset(eig3_unitary(u), np.linalg.eigvals(u), tol=1e-10)

    def test_eigenvalue_product_equals_det(self, rng):
        for _ in range(300):
            u = random_unitary3(rng)
            lams = eig3_unitary(u, tol=1e-10)
            assert abs(np.prod(lams) - np.linalg.det(u)) <= 10 * 1e-10

    def test_moduli_on_unit_circle(self, rng):
        for _ in range(300):
            for lam in eig3_unitary(random_unitary3(rng)):
                assert abs(abs(lam) - 1) < 1e-10

    def test_rejects_non_unitary(self):
        with pytest.raises(NotUnitary):
            eig3_unitary(np.eye(3) * 1.5)

    def test_rejects_nan_entries(self):
        m = np.eye(3, dtype=complex)
        m[0, 0] = np.nan
        with pytest.raises(NotUnitary):
            eig3_unitary(m)

    def test_rejects_wrong_shape(self):
        with pytest.raises(DimensionMismatch):
            eig3_unitary(np.eye(4))

    def test_exact_input(self):
        g = coins.grover_type(1)
        assert eig3_unitary(g.matrix) == pytest.approx([1, -1, -1])

    def test_double_eigenvalue_resolved_to_full_precision(self):
        # involutive coin: spectrum {1, -1, -1}; double roots of the float
        # char poly split by ~sqrt(eps) unless polished against exact
        # coefficients
        c = coins.coin_from_theta("W", 1.8481147461448004).as_float()
        lams = eig3_unitary(c)
        assert np.max(np.abs(np.array(lams) - np.array([1, -1, -1]))) < 1e-12

    def test_near_degenerate_cluster_matches_numpy(self, rng):
        # rotate a defective-direction family through angles near the split
        for delta in (0.0, 1e-12, 1e-9, 1e-7, 1e-5):
            m = np.diag(
                [np.exp(1j * (math.pi + delta)), np.exp(1j * math.pi), 1.0]
            )
            q = random_unitary3(rng)
            u = q @ m @ q.conj().T
            assert_same_multiset(eig3_unitary(u), np.linalg.eigvals(u), tol=5e-10)

    def test_close_pair_not_merged(self, rng):
        # both Cardano seeds can land in one Newton basin when two roots sit
        # ~1e-8 apart; the deflation path must still return distinct roots
        for delta in (3e-9, 1e-8, 5e-8, 1e-7):
            m = np.diag([1.0, np.exp(1j * delta), np.exp(0.4j)])
            q = random_unitary3(rng)
            u = q @ m @ q.conj().T
            lams = eig3_unitary(u)
            assert_same_multiset(lams, np.diag(m), tol=1e-12)

    def test_near_triple_root(self, rng):
        # residual-based polishing alone leaves ~5e-5 scatter at triple roots
        for delta in (0.0, 1e-10, 1e-7):
            m = np.diag([1.0, np.exp(1j * delta), np.exp(-1j * delta)])
            q = random_unitary3(rng)
            u = q @ m @ q.conj().T
            assert_same_multiset(eig3_unitary(u), np.diag(m), tol=1e-11)


class TestCharPoly:
    def test_exact_coefficients(self):
        g = coins.grover_type(1)
        c2, c1, c0 = char_poly_coeffs(g.matrix)
        # (lam - 1)(lam + 1)^2 = lam^3 + lam^2 - lam - 1
        assert (c2, c1, c0) == (Fraction(1), Fraction(-1), Fraction(-1))

    def test_float_matches_polyval(self, rng):
        u = random_unitary3(rng)
        c2, c1, c0 = char_poly_coeffs(u)
        for lam in np.linalg.eigvals(u):
            assert abs(((lam + c2) * lam + c1) * lam + c0) < 1e-12


class TestMatPowerDefect:
    def test_identity(self):
        assert mat_power_norm_defect(np.eye(3), 7) == 0.0

    def test_sign_flip_squares_away(self):
        assert mat_power_norm_defect(np.diag([-1.0, 1.0]), 2) == pytest.approx(0.0, abs=1e-15)

    def test_third_root_squared(self):
        m = np.diag([np.exp(2j * math.pi / 3), 1.0])
        assert mat_power_norm_defect(m, 2) == pytest.approx(math.sqrt(3), abs=1e-12)

    def test_rejects_non_square(self):
        with pytest.raises(DimensionMismatch):
            mat_power_norm_defect(np.ones((2, 3)), 2)


class TestRepresentations:
    def test_orthogonal_inverse_is_transpose(self, rng):
        for _ in range(200):
            fam = coins.FAMILIES[rng.integers(0, 4)]
            c = coins.coin_from_theta(fam, rng.uniform(0, 2 * math.pi)).as_float()
            assert np.linalg.norm(c @ c.T - np.eye(3)) <= 1e-10

    def test_exact_identity_roundtrip(self):
        assert np.array_equal(to_float(exact_identity()), np.eye(3).astype(complex))

    def test_exact_orthogonality_is_exact_zero(self):
        assert orthogonality_defect(coins.grover_type(5).matrix) == 0.0


def test_rational_arithmetic_exact_bulk():
    # a/b + c/d must equal (ad + cb)/(bd) as verified by integer cross
    # multiplication, over 10^6 random pairs
    rng = np.random.default_rng(7)
    nums = rng.integers(-999, 1000, size=(10**6, 2))
    dens = rng.integers(1, 1000, size=(10**6, 2))
    for (a, c), (b, d) in zip(nums, dens):
        s = Fraction(int(a), int(b)) + Fraction(int(c), int(d))
        assert s.numerator * (b * d) == (a * d + c * b) * s.denominator
        assert s.denominator > 0
        assert math.gcd(s.numerator, s.denominator) == 1
