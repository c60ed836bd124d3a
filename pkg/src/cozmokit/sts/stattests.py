"""The seven randomness statistics and Berlekamp-Massey.

Each test takes a :class:`~cozmokit.bitseq.BitSequence` and returns a
:class:`TestResult`.  Formulas follow NIST SP 800-22.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from .. import _kernels
from ..bitseq import BitSequence
from ..errors import InputError, InputTooShortError, ParameterError
from .special import erfc, igamc, normal_cdf

DEFAULT_ALPHA = 0.01


class Verdict(str, enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class TestResult:
    """Outcome of one statistical test.

    ``pvalues`` is empty only for a not-applicable result.
    """

    __test__ = False  # keep pytest from collecting this class

    name: str
    pvalues: Tuple[float, ...]
    verdict: Verdict
    alpha: float = DEFAULT_ALPHA
    params: Dict[str, object] = field(default_factory=dict)
    statistics: Dict[str, float] = field(default_factory=dict)
    warnings: Tuple[str, ...] = ()
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def to_dict(self) -> dict:
        out = {
            "name": self.name,
            "pvalues": list(self.pvalues),
            "verdict": self.verdict.value,
            "params": dict(self.params),
            "statistics": dict(self.statistics),
            "warnings": list(self.warnings),
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def judge(name, pvalues, alpha, **extra) -> TestResult:
    pvalues = tuple(min(1.0, max(0.0, float(p))) for p in pvalues)
    verdict = Verdict.PASS if all(p >= alpha for p in pvalues) else Verdict.FAIL
    return TestResult(name, pvalues, verdict, alpha, **extra)


def not_applicable(name, reason, alpha=DEFAULT_ALPHA, **extra) -> TestResult:
    return TestResult(name, (), Verdict.NOT_APPLICABLE, alpha, reason=reason, **extra)


def _bits(seq) -> np.ndarray:
    arr = seq.bits if isinstance(seq, BitSequence) else np.asarray(seq, dtype=np.uint8)
    if arr.size == 0:
        raise InputError("empty sequence")
    return arr


def _short_warning(n: int, minimum: int = 100) -> Tuple[str, ...]:
    return (f"n={n} is below the recommended minimum of {minimum}",) if n < minimum else ()


# -- frequency ---------------------------------------------------------------


def frequency_test(seq, alpha: float = DEFAULT_ALPHA) -> TestResult:
    bits = _bits(seq)
    n = bits.size
    s = 2 * int(np.count_nonzero(bits)) - n
    p = erfc(abs(s) / math.sqrt(2.0 * n))
    return judge("Frequency", [p], alpha, statistics={"S": s}, warnings=_short_warning(n))


# -- cumulative sums ---------------------------------------------------------

# |x| beyond this many standard deviations gives Phi differences of exactly 0
_NORMAL_CUTOFF = 40.0


def cusum_pvalue(z: int, n: int) -> float:
    root = math.sqrt(n)
    reach = _NORMAL_CUTOFF * root / z / 4.0 + 2.0

    def k_range(lo, hi):
        return range(max(math.floor(lo), -math.ceil(reach)), min(math.floor(hi), math.ceil(reach)) + 1)

    s1 = sum(
        normal_cdf((4 * k + 1) * z / root) - normal_cdf((4 * k - 1) * z / root)
        for k in k_range((-n / z + 1) / 4, (n / z - 1) / 4)
    )
    s2 = sum(
        normal_cdf((4 * k + 3) * z / root) - normal_cdf((4 * k + 1) * z / root)
        for k in k_range((-n / z - 3) / 4, (n / z - 1) / 4)
    )
    return 1.0 - s1 + s2


def max_excursion(bits: np.ndarray) -> int:
    walk = np.cumsum(2 * bits.astype(np.int64) - 1)
    return int(np.max(np.abs(walk)))


def cusum_test(seq, mode: str = "forward", alpha: float = DEFAULT_ALPHA) -> TestResult:
    if mode not in ("forward", "backward"):
        raise ParameterError(f"mode must be 'forward' or 'backward', got {mode!r}")
    bits = _bits(seq)
    if mode == "backward":
        bits = bits[::-1]
    z = max_excursion(bits)
    p = cusum_pvalue(z, bits.size)
    return judge(
        "Cumulative Sums",
        [p],
        alpha,
        params={"mode": mode},
        statistics={"z": z},
        warnings=_short_warning(bits.size),
    )


# -- overlapping-pattern counts ----------------------------------------------


def pattern_counts(bits: np.ndarray, m: int) -> np.ndarray:
    """Counts of every m-bit pattern over the n cyclic windows of ``bits``.

    Entry ``v`` counts windows reading ``v`` in binary, first bit most
    significant.
    """
    n = bits.size
    if m == 0:
        return np.array([n], dtype=np.int64)
    ext = np.concatenate([bits, bits[: m - 1]]).astype(np.int64)
    v = np.zeros(n, dtype=np.int64)
    for j in range(m):
        v <<= 1
        v |= ext[j : j + n]
    return np.bincount(v, minlength=1 << m)


def shorter_counts(counts: np.ndarray) -> np.ndarray:
    """(m-1)-bit cyclic counts from m-bit ones: merge on the last bit."""
    return counts.reshape(-1, 2).sum(axis=1)


def _phi(counts: np.ndarray, n: int) -> float:
    c = counts[counts > 0] / n
    return float(np.sum(c * np.log(c)))


def approx_entropy_test(seq, m: int = 10, alpha: float = DEFAULT_ALPHA) -> TestResult:
    bits = _bits(seq)
    n = bits.size
    if m < 1 or m + 1 > n:
        raise ParameterError(f"block length m={m} out of range for n={n}")
    warnings = _short_warning(n)
    if m >= math.log2(n) - 4:
        warnings += (f"m={m} is not below log2(n) - 4 = {math.log2(n) - 4:.2f}",)
    upper = pattern_counts(bits, m + 1)
    apen = _phi(shorter_counts(upper), n) - _phi(upper, n)
    chi2 = 2.0 * n * (math.log(2.0) - apen)
    p = igamc(2.0 ** (m - 1), chi2 / 2.0)
    return judge(
        "Approximate Entropy",
        [p],
        alpha,
        params={"m": m},
        statistics={"ApEn": apen, "chi2": chi2},
        warnings=warnings,
    )


def _psi2(counts: np.ndarray, n: int) -> float:
    m = int(counts.size).bit_length() - 1
    if m == 0:
        return 0.0
    return (2.0**m) / n * float(np.dot(counts, counts)) - n


def serial_test(seq, m: int = 16, alpha: float = DEFAULT_ALPHA) -> TestResult:
    bits = _bits(seq)
    n = bits.size
    if m < 2 or m > n:
        raise ParameterError(f"block length m={m} out of range for n={n}")
    warnings = _short_warning(n)
    if m >= math.log2(n) - 2:
        warnings += (f"m={m} is not below log2(n) - 2 = {math.log2(n) - 2:.2f}",)
    c_m = pattern_counts(bits, m)
    c_m1 = shorter_counts(c_m)
    c_m2 = shorter_counts(c_m1)
    psi_m, psi_m1, psi_m2 = _psi2(c_m, n), _psi2(c_m1, n), _psi2(c_m2, n)
    del1 = psi_m - psi_m1
    del2 = psi_m - 2.0 * psi_m1 + psi_m2
    p1 = igamc(2.0 ** (m - 2), max(del1, 0.0) / 2.0)
    p2 = igamc(2.0 ** (m - 3), max(del2, 0.0) / 2.0)
    return judge(
        "Serial",
        [p1, p2],
        alpha,
        params={"m": m},
        statistics={"psi2_m": psi_m, "del_psi2": del1, "del2_psi2": del2},
        warnings=warnings,
    )


# -- longest run of ones -----------------------------------------------------

# (minimum n, block length, category edges low..high, probabilities)
_RUN_REGIMES = (
    (750_000, 10_000, (10, 16), (0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727)),
    (6_272, 128, (4, 9), (0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124)),
    (128, 8, (1, 4), (0.2148, 0.3672, 0.2305, 0.1875)),
)


def longest_run_test(seq, alpha: float = DEFAULT_ALPHA) -> TestResult:
    bits = _bits(seq)
    n = bits.size
    for min_n, block, (low, high), probs in _RUN_REGIMES:
        if n >= min_n:
            break
    else:
        raise InputTooShortError(f"longest-run test needs n >= 128, got {n}")
    count = n // block
    runs = _kernels.block_longest_runs(np.ascontiguousarray(bits[: count * block]).reshape(count, block))
    nu = np.bincount(np.clip(runs, low, high) - low, minlength=len(probs)).astype(float)
    expected = count * np.asarray(probs)
    chi2 = float(np.sum((nu - expected) ** 2 / expected))
    p = igamc((len(probs) - 1) / 2.0, chi2 / 2.0)
    return judge(
        "Longest Run of Ones",
        [p],
        alpha,
        params={"M": block, "N": count},
        statistics={"chi2": chi2, "nu": nu.astype(int).tolist()},
    )


# -- runs --------------------------------------------------------------------


def runs_test(seq, alpha: float = DEFAULT_ALPHA) -> TestResult:
    bits = _bits(seq)
    n = bits.size
    pi = np.count_nonzero(bits) / n
    tau = 2.0 / math.sqrt(n)
    if abs(pi - 0.5) >= tau:
        return not_applicable(
            "Runs",
            f"frequency prerequisite failed: |pi - 1/2| = {abs(pi - 0.5):.6g} >= {tau:.6g}",
            alpha,
            statistics={"pi": pi},
        )
    v = 1 + int(np.count_nonzero(bits[1:] != bits[:-1]))
    p = erfc(abs(v - 2.0 * n * pi * (1 - pi)) / (2.0 * math.sqrt(2.0 * n) * pi * (1 - pi)))
    return judge("Runs", [p], alpha, statistics={"V": v, "pi": pi}, warnings=_short_warning(n))


# -- linear complexity -------------------------------------------------------

# asymptotic probabilities of the seven T categories: 1/96, 1/32, ..., 1/48
LINEAR_COMPLEXITY_PROBS = (1 / 96, 1 / 32, 1 / 8, 1 / 2, 1 / 4, 1 / 16, 1 / 48)


def berlekamp_massey(seq) -> int:
    """Length of the shortest LFSR that generates ``seq``."""
    return int(_kernels.berlekamp_massey(np.ascontiguousarray(_bits(seq))))


def expected_complexity(block: int) -> float:
    return block / 2.0 + (9.0 + (-1) ** (block + 1)) / 36.0 - (block / 3.0 + 2.0 / 9.0) / 2.0**block


def linear_complexity_test(seq, M: int = 500, alpha: float = DEFAULT_ALPHA) -> TestResult:
    bits = _bits(seq)
    n = bits.size
    if M < 1:
        raise ParameterError(f"block size M={M} must be positive")
    count = n // M
    if count == 0:
        raise ParameterError(f"too few blocks: n={n} holds no block of M={M}")
    warnings = []
    if not 500 <= M <= 5000:
        warnings.append(f"M={M} is outside the recommended range [500, 5000]")
    if count < 200:
        warnings.append(f"only {count} blocks; at least 200 are recommended")
    blocks = np.ascontiguousarray(bits[: count * M]).reshape(count, M)
    lengths = _kernels.block_complexities(blocks)
    mu = expected_complexity(M)
    t = (-1.0) ** M * (lengths - mu) + 2.0 / 9.0
    category = np.searchsorted(np.array([-2.5, -1.5, -0.5, 0.5, 1.5, 2.5]), t, side="left")
    nu = np.bincount(category, minlength=7).astype(float)
    expected = count * np.asarray(LINEAR_COMPLEXITY_PROBS)
    chi2 = float(np.sum((nu - expected) ** 2 / expected))
    p = igamc(3.0, chi2 / 2.0)
    return judge(
        "Linear Complexity",
        [p],
        alpha,
        params={"M": M, "N": count},
        statistics={"chi2": chi2, "nu": nu.astype(int).tolist()},
        warnings=tuple(warnings),
    )
