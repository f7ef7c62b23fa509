"""Finite binary words, Parikh vectors and substitutions.

Words are immutable and bit-packed: letter i of a word lives in bit i of a
Python integer, so concatenation, powers and slicing are single big-int
operations and multi-megabyte words stay compact (1 bit per letter).

Every operation that materializes letters is guarded by a global cap
(default 2**28 letters, overridable via the URWORD_MAX_LETTERS environment
variable) and raises :class:`SizeLimitError` instead of silently truncating.
"""

from __future__ import annotations

import os
import sys
from dataclasses import dataclass

from .errors import SizeLimitError

# parameters and breakpoint lengths are serialized in decimal and routinely
# exceed the interpreter's 4300-digit conversion guard
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(2_000_000)

DEFAULT_CAP = 1 << 28

_cap = int(os.environ.get("URWORD_MAX_LETTERS", DEFAULT_CAP))


def materialization_cap() -> int:
    return _cap


def set_materialization_cap(cap: int) -> int:
    """Set the global letter cap, returning the previous value."""
    global _cap
    if cap < 1:
        raise ValueError("cap must be positive")
    old = _cap
    _cap = int(cap)
    return old


def check_cap(predicted: int, what: str = "word") -> None:
    if predicted > _cap:
        raise SizeLimitError(predicted, _cap, what)


class Word:
    """An immutable finite word over {0, 1}, packed one letter per bit."""

    __slots__ = ("_bits", "_len")

    def __init__(self, bits: int, length: int):
        if length < 0:
            raise ValueError("negative length")
        if bits < 0 or bits >> length:
            raise ValueError("bits do not fit the declared length")
        self._bits = bits
        self._len = length

    # -- constructors ------------------------------------------------------

    @classmethod
    def from01(cls, text) -> "Word":
        """Build a word from a '0'/'1' string or ASCII bytes."""
        if isinstance(text, (bytes, bytearray)):
            text = text.decode("ascii")
        n = len(text)
        check_cap(n)
        if n == 0:
            return EMPTY
        bits = int(text[::-1], 2)
        return cls(bits, n)

    @classmethod
    def zeros(cls, n: int) -> "Word":
        check_cap(n)
        return cls(0, n)

    @classmethod
    def ones(cls, n: int) -> "Word":
        check_cap(n)
        return cls((1 << n) - 1, n)

    @classmethod
    def letter(cls, value: int) -> "Word":
        if value not in (0, 1):
            raise ValueError("letter must be 0 or 1")
        return ZERO_LETTER if value == 0 else ONE_LETTER

    # -- basic queries -----------------------------------------------------

    def __len__(self) -> int:
        return self._len

    def __bool__(self) -> bool:
        return self._len > 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Word)
            and self._len == other._len
            and self._bits == other._bits
        )

    def __hash__(self) -> int:
        return hash((self._len, self._bits))

    def __getitem__(self, idx):
        if isinstance(idx, slice):
            start, stop, step = idx.indices(self._len)
            if step != 1:
                raise ValueError("only contiguous slices are supported")
            n = max(0, stop - start)
            return Word((self._bits >> start) & ((1 << n) - 1), n)
        if idx < 0:
            idx += self._len
        if not 0 <= idx < self._len:
            raise IndexError("letter index out of range")
        return (self._bits >> idx) & 1

    def __iter__(self):
        bits = self._bits
        for _ in range(self._len):
            yield bits & 1
            bits >>= 1

    def __repr__(self) -> str:
        if self._len <= 64:
            return f"Word({self.to01()!r})"
        head = self[:32].to01()
        return f"Word({head!r}... len={self._len})"

    # -- conversions -------------------------------------------------------

    def to01(self) -> str:
        if self._len == 0:
            return ""
        return format(self._bits, f"0{self._len}b")[::-1]

    def to_bytes01(self) -> bytes:
        return self.to01().encode("ascii")

    # -- structure ---------------------------------------------------------

    def count(self, letter: int) -> int:
        ones = self._bits.bit_count()
        return ones if letter == 1 else self._len - ones

    def __add__(self, other: "Word") -> "Word":
        n = self._len + other._len
        check_cap(n)
        return Word(self._bits | (other._bits << self._len), n)

    def repeat(self, k: int) -> "Word":
        """Concatenation of k copies of this word."""
        if k < 0:
            raise ValueError("negative repeat count")
        n = self._len * k
        check_cap(n)
        if k == 0 or self._len == 0:
            return EMPTY
        # binary build-up: doubling keeps this linear in the output size
        result_bits, result_len = 0, 0
        piece_bits, piece_len = self._bits, self._len
        while k:
            if k & 1:
                result_bits |= piece_bits << result_len
                result_len += piece_len
            k >>= 1
            if k:
                piece_bits |= piece_bits << piece_len
                piece_len <<= 1
        return Word(result_bits, result_len)

    def __mul__(self, k: int) -> "Word":
        return self.repeat(k)

    def startswith(self, prefix: "Word") -> bool:
        if prefix._len > self._len:
            return False
        return self._bits & ((1 << prefix._len) - 1) == prefix._bits

    def reversed(self) -> "Word":
        return Word.from01(self.to01()[::-1])


EMPTY = Word(0, 0)
ZERO_LETTER = Word(0, 1)
ONE_LETTER = Word(1, 1)


@dataclass(frozen=True)
class Parikh:
    """Letter-count vector of a binary word: (number of 0s, number of 1s)."""

    zeros: int
    ones: int

    def __post_init__(self):
        if self.zeros < 0 or self.ones < 0:
            raise ValueError("negative letter count")

    @property
    def total(self) -> int:
        return self.zeros + self.ones

    def __add__(self, other: "Parikh") -> "Parikh":
        return Parikh(self.zeros + other.zeros, self.ones + other.ones)

    def scaled(self, k: int) -> "Parikh":
        return Parikh(self.zeros * k, self.ones * k)

    def as_tuple(self):
        return (self.zeros, self.ones)


def parikh(w: Word) -> Parikh:
    ones = w.count(1)
    return Parikh(len(w) - ones, ones)


@dataclass(frozen=True)
class Substitution:
    """A binary morphism given by the images of the two letters."""

    image0: Word
    image1: Word

    def __post_init__(self):
        if len(self.image0) == 0 or len(self.image1) == 0:
            raise ValueError("substitution images must be non-empty")

    def image(self, letter: int) -> Word:
        return self.image0 if letter == 0 else self.image1

    def apply_parikh(self, p: Parikh) -> Parikh:
        """Image Parikh vector: the incidence matrix applied to p."""
        p0, p1 = parikh(self.image0), parikh(self.image1)
        return Parikh(
            p.zeros * p0.zeros + p.ones * p1.zeros,
            p.zeros * p0.ones + p.ones * p1.ones,
        )

    def output_length(self, w: Word) -> int:
        p = parikh(w)
        return p.zeros * len(self.image0) + p.ones * len(self.image1)


def apply_substitution(s: Substitution, w: Word) -> Word:
    """Concatenate the images of the letters of w, in order."""
    check_cap(s.output_length(w), "substitution image")
    if len(w) == 0:
        return EMPTY
    images = (s.image0.to_bytes01(), s.image1.to_bytes01())
    return Word.from01(b"".join(images[b & 1] for b in w.to_bytes01()))


def count_occurrences(text: Word, pattern: Word) -> int:
    """Number of (possibly overlapping) occurrences of pattern in text."""
    if len(pattern) == 0:
        raise ValueError("pattern must be non-empty")
    if len(pattern) > len(text):
        return 0
    hay = text.to_bytes01()
    needle = pattern.to_bytes01()
    count = 0
    pos = hay.find(needle)
    while pos != -1:
        count += 1
        pos = hay.find(needle, pos + 1)
    return count


def occurrence_positions(text_bytes: bytes, pattern_bytes: bytes):
    """Start offsets of all (overlapping) occurrences, ascending."""
    if not pattern_bytes:
        raise ValueError("pattern must be non-empty")
    out = []
    pos = text_bytes.find(pattern_bytes)
    while pos != -1:
        out.append(pos)
        pos = text_bytes.find(pattern_bytes, pos + 1)
    return out
