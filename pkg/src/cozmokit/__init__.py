"""Trivium, A5/1 and the COZMO combined keystream generator, plus the
seven-test randomness battery used to assess them."""

from .a51 import A51State, a51_clock, a51_keystream, a51_load_raw, a51_load_standard, majority
from .bitseq import BitSequence, bitseq_from_ascii, bitseq_from_hex, bitseq_to_hex, bitseq_xor
from .cozmo import CozmoState, cozmo_decrypt, cozmo_encrypt, cozmo_init, cozmo_keystream, cozmo_step
from .errors import (
    CozmoError,
    DomainError,
    FormatError,
    InputError,
    InputTooShortError,
    LengthError,
    ParameterError,
    UsageError,
)
from .trivium import (
    TriviumParams,
    TriviumState,
    trivium_clock,
    trivium_keystream,
    trivium_load,
    trivium_step_matrix,
    trivium_transition_matrix,
    trivium_warmup,
)

__version__ = "0.1.0"
