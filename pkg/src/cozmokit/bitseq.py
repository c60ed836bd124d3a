"""Immutable bit sequences and their text/binary encodings.

Bit ordering convention used everywhere in the package: index 0 is the
first generated (or first transmitted) bit, and bytes expand
most-significant bit first.  So ``BitSequence.from_hex("80")`` is
``1,0,0,0,0,0,0,0`` and the first key bit ``K1`` is the top bit of the
first key byte.
"""

from __future__ import annotations

import hashlib
import re
from typing import Iterable, Iterator, Union

import numpy as np

from .errors import FormatError, LengthError

_HEX = frozenset("0123456789abcdefABCDEF")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


class BitSequence:
    """An ordered, immutable sequence of bits backed by a uint8 array."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Union[Iterable[int], np.ndarray] = ()):
        arr = np.array(bits, dtype=np.uint8).reshape(-1)
        if arr.size and arr.max() > 1:
            raise ValueError("bits must be 0 or 1")
        self._bits = _frozen(arr)

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "BitSequence":
        # trusted constructor: arr is a fresh 0/1 uint8 array
        obj = cls.__new__(cls)
        obj._bits = _frozen(np.ascontiguousarray(arr, dtype=np.uint8))
        return obj

    @classmethod
    def zeros(cls, n: int) -> "BitSequence":
        return cls._wrap(np.zeros(n, dtype=np.uint8))

    @classmethod
    def from_hex(cls, text: str) -> "BitSequence":
        for pos, ch in enumerate(text):
            if ch not in _HEX:
                raise FormatError(f"non-hex character {ch!r} at position {pos}")
        if len(text) % 2:
            raise FormatError(f"odd number of hex digits ({len(text)})")
        return cls.from_bytes(bytes.fromhex(text))

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitSequence":
        return cls._wrap(np.unpackbits(np.frombuffer(bytes(data), dtype=np.uint8)))

    @classmethod
    def from_ascii(cls, text: str) -> "BitSequence":
        compact = re.sub(r"\s+", "", text)
        bad = re.search(r"[^01]", compact)
        if bad:
            raise FormatError(f"unexpected character {bad.group()!r} in bit text")
        raw = np.frombuffer(compact.encode("ascii"), dtype=np.uint8)
        return cls._wrap(raw - ord("0"))

    @property
    def bits(self) -> np.ndarray:
        """Read-only uint8 view of the bits."""
        return self._bits

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    def to_bytes(self) -> bytes:
        if len(self) % 8:
            raise LengthError(f"length {len(self)} is not a multiple of 8")
        return np.packbits(self._bits).tobytes()

    def to_bytes_padded(self) -> bytes:
        """Pack into bytes, zero-filling the low bits of a partial last byte."""
        return np.packbits(self._bits).tobytes()

    def to_ascii(self) -> str:
        return (self._bits + ord("0")).tobytes().decode("ascii")

    def digest(self) -> str:
        """SHA-256 over the bit length and the packed bits."""
        h = hashlib.sha256(len(self).to_bytes(8, "big"))
        h.update(np.packbits(self._bits).tobytes())
        return h.hexdigest()

    def __xor__(self, other: "BitSequence") -> "BitSequence":
        if not isinstance(other, BitSequence):
            return NotImplemented
        if len(self) != len(other):
            raise LengthError(f"cannot xor sequences of length {len(self)} and {len(other)}")
        return BitSequence._wrap(self._bits ^ other._bits)

    def __add__(self, other: "BitSequence") -> "BitSequence":
        if not isinstance(other, BitSequence):
            return NotImplemented
        return BitSequence._wrap(np.concatenate([self._bits, other._bits]))

    def __len__(self) -> int:
        return int(self._bits.size)

    def __iter__(self) -> Iterator[int]:
        return iter(self._bits.tolist())

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            return BitSequence._wrap(self._bits[idx].copy())
        return int(self._bits[idx])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitSequence):
            return NotImplemented
        return np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash((len(self), self._bits.tobytes()))

    def __repr__(self) -> str:
        if len(self) <= 64:
            return f"BitSequence('{self.to_ascii()}')"
        return f"BitSequence(<{len(self)} bits, {self[:32].to_ascii()}...>)"


def bitseq_from_hex(text: str) -> BitSequence:
    return BitSequence.from_hex(text)


def bitseq_to_hex(seq: BitSequence) -> str:
    return seq.to_hex()


def bitseq_from_ascii(text: str) -> BitSequence:
    return BitSequence.from_ascii(text)


def bitseq_xor(a: BitSequence, b: BitSequence) -> BitSequence:
    return a ^ b


def as_bits(value: Union[str, BitSequence, Iterable[int]], nbits: int, what: str) -> BitSequence:
    """Coerce a hex string or bit iterable to a BitSequence of exactly ``nbits``."""
    if isinstance(value, str):
        seq = BitSequence.from_hex(value.strip())
    elif isinstance(value, BitSequence):
        seq = value
    else:
        seq = BitSequence(value)
    if len(seq) != nbits:
        raise LengthError(f"{what} must be {nbits} bits, got {len(seq)}")
    return seq
