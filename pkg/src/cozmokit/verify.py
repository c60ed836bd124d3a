"""Self-checks comparing independent routes to the same answer."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List

import numpy as np

from . import trivium, vectors
from .a51 import a51_keystream, a51_load_standard, majority
from .bitseq import BitSequence
from .sts.stattests import berlekamp_massey


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def minimal_lfsr_bruteforce(bits) -> int:
    """Shortest LFSR length for ``bits`` by trying every tap set in turn."""
    s = np.asarray(bits, dtype=np.int64)
    n = s.size
    for length in range(n + 1):
        if length == n:
            return n
        # rows: windows s[i-1], ..., s[i-length] for i = length..n-1
        windows = np.stack([s[length - j : n - j] for j in range(1, length + 1)], axis=1) if length else None
        target = s[length:]
        if length == 0:
            if not target.any():
                return 0
            continue
        taps = np.array(list(itertools.product((0, 1), repeat=length)), dtype=np.int64)
        predicted = (windows @ taps.T) & 1
        if np.any(np.all(predicted == target[:, None], axis=0)):
            return length
    return n


def random_loaded_states(count: int, rng: np.random.Generator) -> np.ndarray:
    states = np.empty((count, trivium.STATE_BITS), np.uint8)
    for i in range(count):
        key = BitSequence(rng.integers(0, 2, trivium.KEY_BITS))
        iv = BitSequence(rng.integers(0, 2, trivium.IV_BITS))
        states[i] = trivium.trivium_load(key, iv).s
    return states


def check_matrix_equivalence(states: int = 100, steps: int = 10_000, seed: int = 0) -> CheckResult:
    """Shift-register update vs ``A z + b(z)`` on a batch of loaded states."""
    rng = np.random.default_rng(seed)
    direct = random_loaded_states(states, rng)
    matrix = direct.copy()
    for step in range(steps):
        trivium.clock_bits(direct)
        matrix = trivium.trivium_step_matrix(matrix)
        if not np.array_equal(direct, matrix):
            bad = int(np.count_nonzero(np.any(direct != matrix, axis=1)))
            return CheckResult("trivium matrix form", False, f"{bad} states diverged at step {step + 1}")
    return CheckResult("trivium matrix form", True, f"{states} states x {steps} steps, 0 mismatches")


def check_matrix_probe() -> CheckResult:
    """A against columns obtained by clocking the linearised cipher on unit vectors."""
    probe = np.eye(trivium.STATE_BITS, dtype=np.uint8)
    trivium.clock_bits(probe, nonlinear=False)
    a = trivium.trivium_transition_matrix()
    ok = np.array_equal(a, probe.T)
    return CheckResult("trivium transition matrix", ok, "unit-vector probe " + ("agrees" if ok else "differs"))


def check_majority() -> CheckResult:
    bad = [t for t in itertools.product((0, 1), repeat=3) if majority(*t) != int(sum(t) >= 2)]
    return CheckResult("majority truth table", not bad, f"8 inputs, {len(bad)} mismatches")


def check_berlekamp_massey(full_length: int = 12, random_count: int = 1000, seed: int = 0) -> CheckResult:
    rng = np.random.default_rng(seed)
    bad = 0
    total = 0
    for length in range(1, full_length + 1):
        for word in range(1 << length):
            bits = [(word >> (length - 1 - i)) & 1 for i in range(length)]
            total += 1
            bad += berlekamp_massey(BitSequence(bits)) != minimal_lfsr_bruteforce(bits)
    for _ in range(random_count):
        bits = rng.integers(0, 2, int(rng.integers(1, 17)))
        total += 1
        bad += berlekamp_massey(BitSequence(bits)) != minimal_lfsr_bruteforce(bits)
    return CheckResult("berlekamp-massey vs brute force", bad == 0, f"{total} sequences, {bad} mismatches")


def check_trivium_vectors() -> CheckResult:
    bad = []
    for vec in vectors.TRIVIUM_ESTREAM:
        ks = trivium.trivium_keystream(trivium.from_estream_hex(vec["key"]), trivium.from_estream_hex(vec["iv"]), 512)
        if trivium.to_estream_bytes(ks).hex().upper() != vec["stream_0_63"]:
            bad.append(vec["name"])
    return CheckResult(
        "trivium eSTREAM vectors", not bad, f"{len(vectors.TRIVIUM_ESTREAM)} vectors, failing: {bad or 'none'}"
    )


def check_a51_vector() -> CheckResult:
    v = vectors.A51_GSM
    ks = a51_keystream(a51_load_standard(v["key"], v["frame"]), 2 * vectors.BURST_BITS)
    ok = (
        ks[: vectors.BURST_BITS].to_bytes_padded().hex().upper() == v["a_to_b"]
        and ks[vectors.BURST_BITS :].to_bytes_padded().hex().upper() == v["b_to_a"]
    )
    return CheckResult("a5/1 GSM reference burst", ok, "228 bits " + ("match" if ok else "differ"))


def run_all(seed: int = 0, states: int = 100, steps: int = 10_000) -> List[CheckResult]:
    return [
        check_trivium_vectors(),
        check_matrix_probe(),
        check_matrix_equivalence(states, steps, seed),
        check_majority(),
        check_a51_vector(),
        check_berlekamp_massey(seed=seed),
    ]
