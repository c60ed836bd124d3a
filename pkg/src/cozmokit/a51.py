"""A5/1: three majority-clocked LFSRs of 19, 22 and 23 bits.

The 64 register cells are numbered r0..r63 across the bank: register A is
r0..r18, B is r19..r40, C is r41..r63.  New bits enter at the first cell
of a register (r0, r19, r41) and the last cells (r18, r40, r63) feed the
output.
"""

from __future__ import annotations

from typing import Tuple, Union

import numpy as np

from . import _kernels
from .bitseq import BitSequence, as_bits

KEY_BITS = 64
FRAME_BITS = 22
REGISTER_BITS = 64

# (first cell, last cell, clock tap, feedback taps), global indices
REG_A = (0, 18, 8, (13, 16, 17, 18))
REG_B = (19, 40, 29, (39, 40))
REG_C = (41, 63, 51, (48, 61, 62, 63))
REGISTERS = (REG_A, REG_B, REG_C)

MIX_STEPS = 100


def majority(l: int, m: int, n: int) -> int:
    return (l & m) ^ (m & n) ^ (l & n)


class A51State:
    """The 64-cell register bank r0..r63."""

    __slots__ = ("r",)

    def __init__(self, r=None):
        arr = np.zeros(REGISTER_BITS, np.uint8) if r is None else np.array(r, dtype=np.uint8).reshape(-1)
        if arr.size != REGISTER_BITS:
            raise ValueError(f"A5/1 state must hold {REGISTER_BITS} bits, got {arr.size}")
        arr.setflags(write=False)
        self.r = arr

    @property
    def reg_a(self) -> np.ndarray:
        return self.r[0:19]

    @property
    def reg_b(self) -> np.ndarray:
        return self.r[19:41]

    @property
    def reg_c(self) -> np.ndarray:
        return self.r[41:64]

    def __getitem__(self, i: int) -> int:
        return int(self.r[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, A51State):
            return NotImplemented
        return np.array_equal(self.r, other.r)

    def __repr__(self) -> str:
        return "A51State(A={}, B={}, C={})".format(
            *("".join(map(str, reg.tolist())) for reg in (self.reg_a, self.reg_b, self.reg_c))
        )


def in_majority(r) -> Tuple[bool, bool, bool]:
    """Which registers step: those whose clock tap equals the majority bit."""
    m = majority(int(r[8]), int(r[29]), int(r[51]))
    return int(r[8]) == m, int(r[29]) == m, int(r[51]) == m


def output_bit(r) -> int:
    return int(r[18]) ^ int(r[40]) ^ int(r[63])


def feedback(r, reg) -> int:
    fb = 0
    for tap in reg[3]:
        fb ^= int(r[tap])
    return fb


def shift_in(r: np.ndarray, reg, bit: int) -> None:
    """Shift one register toward its last cell in place, inserting ``bit``."""
    lo, hi = reg[0], reg[1]
    r[lo + 1 : hi + 1] = r[lo:hi].copy()
    r[lo] = bit


def a51_clock(state: A51State) -> Tuple[A51State, int]:
    """One majority-clocked step; the output is read before the shift."""
    r = state.r.copy()
    z = output_bit(r)
    for reg, moves in zip(REGISTERS, in_majority(r)):
        if moves:
            shift_in(r, reg, feedback(state.r, reg))
    return A51State(r), z


def a51_load_raw(key: Union[str, BitSequence]) -> A51State:
    """Fill r0..r63 with K1..K64 in order."""
    return A51State(as_bits(key, KEY_BITS, "A5/1 key").bits)


def a51_load_standard(key: Union[str, BitSequence], frame: int) -> A51State:
    """GSM key/frame setup, for checking against published A5/1 vectors.

    Key bits are consumed byte by byte, least significant bit first within
    each byte (the GSM order), then the 22 frame-number bits LSB first.
    Each bit is XORed into all three registers after a forced clock of all
    three.  100 majority-clocked mixing steps follow.  One more step is
    taken at the end: the reference procedure reads its first keystream
    bit after clocking, while :func:`a51_clock` reads before, so the state
    returned here makes :func:`a51_keystream` produce the published burst.
    """
    k = as_bits(key, KEY_BITS, "A5/1 key")
    if not 0 <= frame < 1 << FRAME_BITS:
        raise ValueError(f"frame number must be in [0, 2**22), got {frame}")
    gsm_order = k.bits.reshape(8, 8)[:, ::-1].reshape(-1)
    frame_bits = [(frame >> i) & 1 for i in range(FRAME_BITS)]
    r = np.zeros(REGISTER_BITS, np.uint8)
    for bit in list(gsm_order) + frame_bits:
        before = r.copy()
        for reg in REGISTERS:
            shift_in(r, reg, feedback(before, reg) ^ int(bit))
    _kernels.a51_run(r, np.empty(MIX_STEPS + 1, np.uint8))
    return A51State(r)


def a51_keystream(state: A51State, n: int) -> BitSequence:
    return a51_run(state, n)[1]


def a51_run(state: A51State, n: int) -> Tuple[A51State, BitSequence]:
    if n < 0:
        raise ValueError("n must be non-negative")
    r = state.r.copy()
    out = np.empty(n, np.uint8)
    _kernels.a51_run(r, out)
    return A51State(r), BitSequence._wrap(out)
