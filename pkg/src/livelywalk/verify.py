"""Sampled verification suites behind the `verify` CLI subcommand.

Each suite draws deterministic samples from a seeded generator, checks one
library-wide invariant, and reports counts.  These are the same properties
the test suite pins down; the CLI exposes them for ad-hoc runs at other
sample sizes and seeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import coins as _coins
from . import period as _period
from . import walk as _walk
from .errors import LivelyWalkError
from .exactnum import eig3_unitary, orthogonality_defect

SUITES = (
    "orthogonality",
    "closure",
    "decompose-roundtrip",
    "spectrum-symmetry",
    "blockdiag-equivalence",
    "period-consistency",
)

_FAMILY_DET = {"X": 1, "Y": -1, "Z": -1, "W": 1}


@dataclass
class SuiteResult:
    name: str
    checks: int
    failures: int
    worst: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _random_coin(rng, family=None) -> _coins.Coin3:
    fam = family or _coins.FAMILIES[rng.integers(0, 4)]
    return _coins.coin_from_theta(fam, float(rng.uniform(0.0, 2.0 * math.pi)))


def run_orthogonality(seed: int = 0, samples: int = 1000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    failures, worst, checks = 0, 0.0, 0
    for family in _coins.FAMILIES:
        for _ in range(samples):
            coin = _random_coin(rng, family)
            defect = orthogonality_defect(coin.matrix)
            det = np.linalg.det(coin.as_float())
            checks += 1
            worst = max(worst, defect)
            if defect > 1e-12 or abs(det - _FAMILY_DET[family]) > 1e-10:
                failures += 1
    return SuiteResult("orthogonality", checks, failures, worst)


def run_closure(seed: int = 0, samples: int = 1000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    sum_sign = {"X": 1, "Y": -1, "Z": 1, "W": -1}
    basis = {"X": "cyclic", "Y": "cyclic", "Z": "transposition", "W": "transposition"}
    parity = {"cyclic": 0, "transposition": 1}
    for _ in range(samples):
        a, b = _random_coin(rng), _random_coin(rng)
        try:
            prod = _coins.multiply(a, b)
            cp = _coins.classify(prod.matrix)
        except LivelyWalkError:
            failures += 1
            continue
        want_parity = (parity[basis[a.family]] + parity[basis[b.family]]) % 2
        want_sign = sum_sign[a.family] * sum_sign[b.family]
        if parity[cp.basis] != want_parity or sum_sign[cp.family] != want_sign:
            failures += 1
    return SuiteResult("closure", samples, failures, worst)


def run_decompose_roundtrip(seed: int = 0, samples: int = 1000) -> SuiteResult:
    rng = np.random.default_rng(seed)
    failures, worst = 0, 0.0
    for _ in range(samples):
        coin = _random_coin(rng)
        coeffs = _coins.decompose_linear_sum(coin.matrix)
        x, y, z = coin.params
        err = max(abs(coeffs.x - x), abs(coeffs.y - y), abs(coeffs.z - z))
        worst = max(worst, err)
        if err > 1e-14:
            failures += 1
    return SuiteResult("decompose-roundtrip", samples, failures, worst)


def _multiset_distance(a, b) -> float:
    """Greedy nearest matching of two equal-size complex multisets."""
    a = np.asarray(a, dtype=complex)
    b = list(np.asarray(b, dtype=complex))
    worst = 0.0
    for x in a:
        gaps = [abs(x - y) for y in b]
        j = int(np.argmin(gaps))
        worst = max(worst, gaps[j])
        b.pop(j)
    return worst


def run_spectrum_symmetry(seed: int = 0, samples: int = 200) -> SuiteResult:
    """For a = 0 and X-family coins the block spectra at l and n-l coincide."""
    rng = np.random.default_rng(seed)
    failures, worst, checks = 0, 0.0, 0
    for _ in range(samples):
        n = int(rng.integers(3, 13))
        spec = _walk.WalkSpec(n=n, a=0, coin=_random_coin(rng, "X"))
        for l in range(1, n // 2 + 1):
            lo = eig3_unitary(_walk.reduced_block(spec, l).uk)
            hi = eig3_unitary(_walk.reduced_block(spec, n - l).uk)
            err = _multiset_distance(lo, hi)
            checks += 1
            worst = max(worst, err)
            if err > 1e-8:
                failures += 1
    return SuiteResult("spectrum-symmetry", checks, failures, worst)


def run_blockdiag_equivalence(seed: int = 0, samples: int = 1) -> SuiteResult:
    """Dense eigenvalues match the union over momentum blocks, n <= 12."""
    rng = np.random.default_rng(seed)
    failures, worst, checks = 0, 0.0, 0
    for _ in range(samples):
        for n in range(2, 13):
            for a in range(0, n // 2 + 1):
                for family in _coins.FAMILIES:
                    spec = _walk.WalkSpec(n=n, a=a, coin=_random_coin(rng, family))
                    dense = np.linalg.eigvals(_walk.evolution_operator(spec))
                    blocks = [e.value for e in _walk.spectrum(spec)]
                    err = _multiset_distance(dense, blocks)
                    checks += 1
                    worst = max(worst, err)
                    if err > 1e-8:
                        failures += 1
    return SuiteResult("blockdiag-equivalence", checks, failures, worst)


def _special_coins():
    out = []
    for p in range(1, 7):
        base = _coins.perm_matrix(p)
        out.append(base)
        out.append(_coins.Coin3(matrix=-base.matrix))
        out.append(_coins.grover_type(p))
        out.append(_coins.grover_type(p, negate=True))
    return out


def run_period_consistency(seed: int = 0, samples: int = 0, nmax: int = 8,
                           tmax: int = _period.TMAX_DEFAULT) -> SuiteResult:
    """Analytic, spectral and brute-force periods agree for all special coins, a = 0."""
    failures, checks = 0, 0
    for coin in _special_coins():
        for n in range(2, nmax + 1):
            cv = _period.cross_validate(_walk.WalkSpec(n=n, a=0, coin=coin), tmax=tmax)
            checks += 1
            if not cv.agreement:
                failures += 1
    return SuiteResult("period-consistency", checks, failures, 0.0)


_RUNNERS = {
    "orthogonality": run_orthogonality,
    "closure": run_closure,
    "decompose-roundtrip": run_decompose_roundtrip,
    "spectrum-symmetry": run_spectrum_symmetry,
    "blockdiag-equivalence": run_blockdiag_equivalence,
    "period-consistency": run_period_consistency,
}


def run_suite(name: str, seed: int = 0, samples: int | None = None) -> SuiteResult:
    if name not in _RUNNERS:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    runner = _RUNNERS[name]
    if samples is None:
        return runner(seed=seed)
    return runner(seed=seed, samples=samples)
