"""COZMO: Trivium output driving an A5/1-shaped register bank.

Each step reads the keystream bit ``t = r18 ^ r40 ^ r63`` first, then
consumes one Trivium bit ``z`` and routes the register feedbacks across
registers::

    p1 = r13 ^ r16 ^ r17 ^ r18       -> enters B at r19
    p2 = r39 ^ r40                   -> enters C at r41
    p3 = r48 ^ r61 ^ r62 ^ r63 ^ z   -> enters A at r0

Registers step only when their clock tap (r8, r29, r51) agrees with the
majority; the others keep their contents and their feedback bit is
dropped.  The bank starts at all zeros and runs 64 silent steps after
Trivium's own 1152-clock warm-up, 1216 Trivium clocks in all.

Caveat: the bank has an absorbing state.  Once register A sits out of
the majority with r8 = 1 and p1 = 0 while B and C are all zero, B and C
keep shifting in zeros and A never moves again, so the output is
constant from then on.  With the default warm-up every key reaches it
before the first output bit.  The ``"fill"`` warm-up, which loads the bank
straight from 64 Trivium output bits, postpones it to some point usually
within the first few hundred thousand bits.  See :func:`is_absorbed`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from . import _kernels, trivium
from .a51 import REG_A, REG_B, REG_C, A51State, feedback, in_majority, output_bit, shift_in
from .bitseq import BitSequence
from .trivium import KeyLike, TriviumState

BANK_WARMUP_STEPS = 64
TOTAL_WARMUP_CLOCKS = trivium.WARMUP_CLOCKS + BANK_WARMUP_STEPS

_CHUNK = 1 << 20


@dataclass(frozen=True, eq=True)
class CozmoState:
    trivium: TriviumState
    regs: A51State
    warmed: bool = False
    steps: int = 0


def cozmo_step(state: CozmoState) -> Tuple[CozmoState, int]:
    r = state.regs.r
    t = output_bit(r)
    triv, z = trivium.trivium_clock(state.trivium)
    p1 = feedback(r, REG_A)
    p2 = feedback(r, REG_B)
    p3 = feedback(r, REG_C) ^ z
    new = r.copy()
    move_a, move_b, move_c = in_majority(r)
    if move_a:
        shift_in(new, REG_A, p3)
    if move_b:
        shift_in(new, REG_B, p1)
    if move_c:
        shift_in(new, REG_C, p2)
    steps = state.steps + 1 if state.warmed else state.steps
    return replace(state, trivium=triv, regs=A51State(new), steps=steps), t


WARMUP_MODES = ("step", "fill")


def cozmo_init(key: KeyLike, iv: KeyLike, warmup: str = "step") -> CozmoState:
    """Load and warm up: 1152 Trivium clocks, then 64 more into the bank.

    ``warmup="step"`` runs 64 ordinary steps (outputs discarded) from the
    all-zero bank.  ``warmup="fill"`` instead writes the next 64 Trivium
    output bits into r0..r63 in order.
    """
    triv = trivium.trivium_warmup(trivium.trivium_load(key, iv))
    if warmup == "step":
        state = CozmoState(triv, A51State())
        for _ in range(BANK_WARMUP_STEPS):
            state, _ = cozmo_step(state)
    elif warmup == "fill":
        triv, fill = trivium.run(triv, BANK_WARMUP_STEPS)
        state = CozmoState(triv, A51State(fill.bits))
    else:
        raise ValueError(f"warmup must be one of {WARMUP_MODES}, got {warmup!r}")
    return replace(state, warmed=True, steps=0)


def is_absorbed(regs: A51State) -> bool:
    """True for bank states the step function can never leave.

    A is out of the majority (r8 = 1 against zero taps in B and C), its
    feedback p1 into B is 0, and B and C are all zero.
    """
    r = regs.r
    return r[8] == 1 and feedback(r, REG_A) == 0 and not r[19:].any()


def cozmo_run(state: CozmoState, n: int) -> Tuple[CozmoState, BitSequence]:
    """Emit ``n`` bits from ``state`` with the compiled loop."""
    if n < 0:
        raise ValueError("n must be non-negative")
    triv = state.trivium
    regs = state.regs.r.copy()
    out = np.empty(n, np.uint8)
    for lo in range(0, n, _CHUNK):
        hi = min(n, lo + _CHUNK)
        triv, z = trivium.run(triv, hi - lo)
        _kernels.cozmo_run(regs, z.bits, out[lo:hi])
    steps = state.steps + n if state.warmed else state.steps
    return replace(state, trivium=triv, regs=A51State(regs), steps=steps), BitSequence._wrap(out)


def cozmo_keystream(key: KeyLike, iv: KeyLike, n: int, warmup: str = "step") -> BitSequence:
    return cozmo_run(cozmo_init(key, iv, warmup), n)[1]


def cozmo_encrypt(key: KeyLike, iv: KeyLike, data: BitSequence, warmup: str = "step") -> BitSequence:
    """XOR ``data`` with the keystream; the same call decrypts."""
    return data ^ cozmo_keystream(key, iv, len(data), warmup)


cozmo_decrypt = cozmo_encrypt
