"""Trivium keystream generator.

The production path is the shift-register form (:func:`trivium_clock` for
single steps, a compiled loop for bulk output).  The matrix form
``z(t+1) = A z(t) + b(t)`` over GF(2) is kept alongside as an independent
cross-check of the update rule.

State cells are numbered s1..s288 as in the usual description of the
cipher; ``TriviumState.s[i - 1]`` holds ``s_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple, Union

import numpy as np

from . import _kernels
from .bitseq import BitSequence, as_bits
from .errors import UsageError

KEY_BITS = 80
IV_BITS = 80
STATE_BITS = 288
WARMUP_CLOCKS = 4 * STATE_BITS  # 1152

_CHUNK = 1 << 22

KeyLike = Union[str, BitSequence]


@dataclass(frozen=True)
class TriviumParams:
    """Register and tap sizes of the matrix form, all in thirds.

    Register boundaries sit at 3*n1, 3*n2, 3*n3 and the linear taps at
    3*u1 .. 3*u6 (every Trivium tap is a multiple of three).
    """

    n1: int = 31
    n2: int = 59
    n3: int = 96
    u: Tuple[int, ...] = (22, 23, 54, 57, 81, 88)

    def __post_init__(self):
        if not 0 < self.n1 < self.n2 < self.n3:
            raise ValueError("need 0 < n1 < n2 < n3")
        if len(self.u) != 6 or not all(0 < ui <= self.n3 for ui in self.u):
            raise ValueError("u must hold six tap thirds within the state")

    @property
    def size(self) -> int:
        return 3 * self.n3


class TriviumState:
    """288 state bits plus the number of clocks applied since loading."""

    __slots__ = ("s", "clocks")

    def __init__(self, s, clocks: int = 0):
        arr = np.array(s, dtype=np.uint8).reshape(-1)
        if arr.size != STATE_BITS:
            raise ValueError(f"Trivium state must hold {STATE_BITS} bits, got {arr.size}")
        arr.setflags(write=False)
        self.s = arr
        self.clocks = clocks

    def __getitem__(self, i: int) -> int:
        """1-based cell access: ``state[1]`` is s1."""
        if not 1 <= i <= STATE_BITS:
            raise IndexError(i)
        return int(self.s[i - 1])

    def __eq__(self, other) -> bool:
        if not isinstance(other, TriviumState):
            return NotImplemented
        return self.clocks == other.clocks and np.array_equal(self.s, other.s)

    def __repr__(self) -> str:
        return f"TriviumState(clocks={self.clocks}, s={np.packbits(self.s).tobytes().hex()})"


def clock_bits(s: np.ndarray, nonlinear: bool = True) -> np.ndarray:
    """Apply one Trivium update in place to ``s[..., 0:288]``; return the output bit(s).

    Works on a single state or on a stack of states.  With
    ``nonlinear=False`` the three AND terms are dropped, leaving the linear
    part of the update.
    """
    t1 = s[..., 65] ^ s[..., 92]
    t2 = s[..., 161] ^ s[..., 176]
    t3 = s[..., 242] ^ s[..., 287]
    z = t1 ^ t2 ^ t3
    fa = t1 ^ s[..., 170]
    fb = t2 ^ s[..., 263]
    fc = t3 ^ s[..., 68]
    if nonlinear:
        fa ^= s[..., 90] & s[..., 91]
        fb ^= s[..., 174] & s[..., 175]
        fc ^= s[..., 285] & s[..., 286]
    s[..., 1:] = s[..., :-1].copy()
    s[..., 0] = fc
    s[..., 93] = fa
    s[..., 177] = fb
    return z


def trivium_load(key: KeyLike, iv: KeyLike) -> TriviumState:
    """s1..s80 = key, s94..s173 = IV, s286..s288 = 1, everything else 0."""
    k = as_bits(key, KEY_BITS, "Trivium key")
    v = as_bits(iv, IV_BITS, "Trivium IV")
    s = np.zeros(STATE_BITS, dtype=np.uint8)
    s[0:80] = k.bits
    s[93:173] = v.bits
    s[285:288] = 1
    return TriviumState(s, 0)


def trivium_clock(state: TriviumState) -> Tuple[TriviumState, int]:
    s = state.s.copy()
    z = clock_bits(s)
    return TriviumState(s, state.clocks + 1), int(z)


def trivium_warmup(state: TriviumState) -> TriviumState:
    if state.clocks != 0:
        raise UsageError(f"warm-up needs a freshly loaded state (clocks={state.clocks})")
    s = state.s.copy()
    _kernels.trivium_run(s, WARMUP_CLOCKS, np.empty(0, np.uint8))
    return TriviumState(s, WARMUP_CLOCKS)


def run(state: TriviumState, n: int) -> Tuple[TriviumState, BitSequence]:
    """Clock ``n`` times, returning the advanced state and the outputs."""
    s = state.s.copy()
    out = np.empty(n, dtype=np.uint8)
    for lo in range(0, n, _CHUNK):
        _kernels.trivium_run(s, 0, out[lo : lo + _CHUNK])
    return TriviumState(s, state.clocks + n), BitSequence._wrap(out)


def trivium_keystream(key: KeyLike, iv: KeyLike, n: int) -> BitSequence:
    """Load, warm up, then return ``n`` keystream bits in generation order.

    The cipher is nominally good for 2**64 bits per key/IV; that bound is
    not enforced.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    return run(trivium_warmup(trivium_load(key, iv)), n)[1]


# -- eSTREAM conventions ---------------------------------------------------
# The eSTREAM reference code numbers key bits LSB-first within bytes and
# loads them into s80..s1 (reversed); its keystream bytes are packed
# LSB-first.  These helpers translate to and from this package's
# MSB-first K1..K80 ordering.


def from_estream_hex(text: str) -> BitSequence:
    """Key or IV given as eSTREAM hex -> K1..K80 in load order."""
    raw = bytes.fromhex(text)
    return BitSequence.from_bytes(raw[::-1])


def to_estream_bytes(seq: BitSequence) -> bytes:
    """Pack keystream bits LSB-first, the eSTREAM test-vector layout."""
    return np.packbits(seq.bits, bitorder="little").tobytes()


# -- matrix form -------------------------------------------------------------


def trivium_transition_matrix(params: TriviumParams = TriviumParams()) -> np.ndarray:
    """Linear part A of the state update as a 0/1 uint8 matrix.

    Rows and columns are 0-based here, so cell ``a_ij`` of the usual
    1-based description is ``A[i - 1, j - 1]``.
    """
    size = params.size
    u1, u2, u3, u4, u5, u6 = (3 * x for x in params.u)
    a = np.zeros((size, size), dtype=np.uint8)
    for j in (u2, u5, size):
        a[0, j - 1] = 1
    for j in (u1, u4):
        a[3 * params.n1, j - 1] = 1
    for j in (u3, u6):
        a[3 * params.n2, j - 1] = 1
    idx = np.arange(1, size)
    a[idx, idx - 1] = 1
    return a


@lru_cache(maxsize=8)
def _row_taps(params: TriviumParams) -> np.ndarray:
    # column indices of the ones in each row of A, padded with a sentinel
    # column that always reads zero
    a = trivium_transition_matrix(params)
    width = int(a.sum(axis=1).max())
    taps = np.full((params.size, width), params.size, dtype=np.intp)
    for i in range(params.size):
        cols = np.flatnonzero(a[i])
        taps[i, : cols.size] = cols
    taps.setflags(write=False)
    return taps


def nonlinear_segment(z: np.ndarray, params: TriviumParams = TriviumParams()) -> np.ndarray:
    """The AND-term vector b(t); nonzero only at rows 1, 3*n1+1, 3*n2+1."""
    z = np.asarray(z, dtype=np.uint8)
    b = np.zeros_like(z)
    for row, edge in ((0, 3 * params.n3), (3 * params.n1, 3 * params.n1), (3 * params.n2, 3 * params.n2)):
        b[..., row] = z[..., edge - 3] & z[..., edge - 2]
    return b


def trivium_step_matrix(z: np.ndarray, params: TriviumParams = TriviumParams()) -> np.ndarray:
    """``A z + b(z)`` over GF(2) for one state vector or a stack of them."""
    z = np.asarray(z, dtype=np.uint8)
    padded = np.concatenate([z, np.zeros(z.shape[:-1] + (1,), np.uint8)], axis=-1)
    linear = np.bitwise_xor.reduce(padded[..., _row_taps(params)], axis=-1)
    return linear ^ nonlinear_segment(z, params)
