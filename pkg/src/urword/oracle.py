"""Brute-force ground truth for factor statistics of a finite text.

A suffix automaton over the 0/1 text gives exact distinct-factor counts for
every length and exact extension sets, in linear memory.  Everything here is
deterministic: same text, same answers, independent of the symbolic theory
it is used to cross-check.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from .errors import IndexBudgetError, IndexRangeError
from .words import Word

DEFAULT_INDEX_BUDGET = 2_000_000_000  # bytes


class BispecialType(Enum):
    STRONG = "strong"
    WEAK = "weak"
    ORDINARY = "ordinary"
    NONE = "none"

    @property
    def sign(self) -> Optional[int]:
        """The complexity-difference contribution: +1, -1, 0, or None."""
        if self is BispecialType.STRONG:
            return 1
        if self is BispecialType.WEAK:
            return -1
        if self is BispecialType.ORDINARY:
            return 0
        return None


_ALL_PAIRS = {(0, 0), (0, 1), (1, 0), (1, 1)}
_DIAGONAL = {(0, 0), (1, 1)}
_ANTIDIAGONAL = {(0, 1), (1, 0)}


def _classify_pairs(pairs: set) -> BispecialType:
    if pairs == _ALL_PAIRS:
        return BispecialType.STRONG
    if pairs == _DIAGONAL or pairs == _ANTIDIAGONAL:
        return BispecialType.WEAK
    return BispecialType.ORDINARY


class FactorIndex:
    """Queryable index of all factors of a text up to a length bound.

    Built once, immutable afterwards; concurrent queries are safe.
    """

    def __init__(self, text: Word, max_n: int, memory_budget: int = DEFAULT_INDEX_BUDGET):
        if max_n < 0:
            raise ValueError("max_n must be >= 0")
        if max_n > len(text):
            raise IndexRangeError(
                f"max_n {max_n} exceeds text length {len(text)}"
            )
        n = len(text)
        predicted = (2 * n + 5) * 8 * 5 + n + (max_n + 2) * 8
        if predicted > memory_budget:
            raise IndexBudgetError(predicted, memory_budget)
        self.text_word = text
        self.text = text.to_bytes01()
        self.max_n = max_n
        self._build()
        self._profile = self._complexity_profile()
        self._bispecial_cache: dict[int, list] = {}

    # -- construction --------------------------------------------------------

    def _build(self) -> None:
        n = len(self.text)
        cap = 2 * n + 5
        minus = b"\xff" * (8 * cap)
        length = array("q", bytes(8 * cap))
        link = array("q", minus)
        next0 = array("q", minus)
        next1 = array("q", minus)
        first_end = array("q", bytes(8 * cap))
        size = 1
        last = 0
        link[0] = -1
        for pos in range(n):
            nxt = next1 if self.text[pos] & 1 else next0
            cur = size
            size += 1
            length[cur] = length[last] + 1
            first_end[cur] = pos + 1
            p = last
            while p >= 0 and nxt[p] == -1:
                nxt[p] = cur
                p = link[p]
            if p == -1:
                link[cur] = 0
            else:
                q = nxt[p]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = size
                    size += 1
                    length[clone] = length[p] + 1
                    link[clone] = link[q]
                    next0[clone] = next0[q]
                    next1[clone] = next1[q]
                    first_end[clone] = first_end[q]
                    while p >= 0 and nxt[p] == q:
                        nxt[p] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur
        self._len = length
        self._link = link
        self._next0 = next0
        self._next1 = next1
        self._first_end = first_end
        self._size = size

    def _complexity_profile(self) -> list[int]:
        diff = [0] * (self.max_n + 2)
        length, link = self._len, self._link
        max_n = self.max_n
        for s in range(1, self._size):
            lo = length[link[s]] + 1
            if lo > max_n:
                continue
            hi = min(length[s], max_n)
            diff[lo] += 1
            diff[hi + 1] -= 1
        profile = [1] * (max_n + 1)  # the empty word at n = 0
        running = 0
        for m in range(1, max_n + 1):
            running += diff[m]
            profile[m] = running
        return profile

    # -- raw queries ---------------------------------------------------------

    def _walk(self, word: bytes) -> int:
        state = 0
        next0, next1 = self._next0, self._next1
        for b in word:
            state = (next1 if b & 1 else next0)[state]
            if state == -1:
                return -1
        return state

    def contains(self, w: Word) -> bool:
        return self._walk(w.to_bytes01()) != -1

    def right_extensions(self, w: Word) -> set[int]:
        state = self._walk(w.to_bytes01())
        if state == -1:
            return set()
        out = set()
        if self._next0[state] != -1:
            out.add(0)
        if self._next1[state] != -1:
            out.add(1)
        return out

    def left_extensions(self, w: Word) -> set[int]:
        wb = w.to_bytes01()
        out = set()
        if self._walk(b"0" + wb) != -1:
            out.add(0)
        if self._walk(b"1" + wb) != -1:
            out.add(1)
        return out

    def extension_pairs(self, w: Word) -> set[tuple[int, int]]:
        """Observed (left, right) letter pairs around occurrences of w."""
        wb = w.to_bytes01()
        pairs = set()
        for x in (0, 1):
            st = self._walk(bytes((48 + x,)) + wb)
            if st == -1:
                continue
            if self._next0[st] != -1:
                pairs.add((x, 0))
            if self._next1[st] != -1:
                pairs.add((x, 1))
        return pairs

    # -- factor statistics ----------------------------------------------------

    def complexity_hat(self, n: int) -> int:
        """Number of distinct factors of length n (a lower bound for the
        infinite word unless the text already contains them all)."""
        if not 0 <= n <= self.max_n:
            raise IndexRangeError(f"n={n} outside indexed range 0..{self.max_n}")
        return self._profile[n]

    def step_hat(self, n: int) -> int:
        if n + 1 > self.max_n:
            raise IndexRangeError(f"step at n={n} needs max_n >= {n + 1}")
        return self._profile[n + 1] - self._profile[n]

    def classify_bispecial(self, w: Word) -> BispecialType:
        """Strong / weak / ordinary for bispecial w, NONE otherwise."""
        if len(w) + 2 > self.max_n:
            raise IndexRangeError(
                f"classification of a length-{len(w)} word needs max_n >= {len(w) + 2}"
            )
        wb = w.to_bytes01()
        state = self._walk(wb)
        if state == -1:
            return BispecialType.NONE
        if self._next0[state] == -1 or self._next1[state] == -1:
            return BispecialType.NONE
        s_by_left = []
        for x in (0, 1):
            st = self._walk(bytes((48 + x,)) + wb)
            if st == -1:
                return BispecialType.NONE
            s_by_left.append(st)
        pairs = set()
        for x, st in zip((0, 1), s_by_left):
            if self._next0[st] != -1:
                pairs.add((x, 0))
            if self._next1[st] != -1:
                pairs.add((x, 1))
        return _classify_pairs(pairs)

    def bispecials(self, max_len: int) -> list[tuple[str, BispecialType]]:
        """All bispecial factors of length <= max_len, with their types.

        Candidates are read off the automaton states carrying two outgoing
        letters (the right-special factors), then filtered for left
        specialness.  Sorted by (length, word); cached per bound.
        """
        if max_len + 2 > self.max_n:
            raise IndexRangeError(
                f"bispecial enumeration to length {max_len} needs max_n >= {max_len + 2}"
            )
        cached = self._bispecial_cache.get(max_len)
        if cached is not None:
            return cached
        length, link = self._len, self._link
        next0, next1 = self._next0, self._next1
        first_end = self._first_end
        text = self.text
        found: list[tuple[str, BispecialType]] = []

        # the empty word: right/left special iff both letters occur
        if next0[0] != -1 and next1[0] != -1:
            pairs = set()
            for x in (0, 1):
                st = (next0 if x == 0 else next1)[0]
                if next0[st] != -1:
                    pairs.add((x, 0))
                if next1[st] != -1:
                    pairs.add((x, 1))
            found.append(("", _classify_pairs(pairs)))

        walk = self._walk
        for s in range(1, self._size):
            if next0[s] == -1 or next1[s] == -1:
                continue
            lo = length[link[s]] + 1
            if lo > max_len:
                continue
            hi = min(length[s], max_len)
            e = first_end[s]
            for n in range(lo, hi + 1):
                wb = text[e - n : e]
                st0 = walk(b"0" + wb)
                if st0 == -1:
                    continue
                st1 = walk(b"1" + wb)
                if st1 == -1:
                    continue
                pairs = set()
                for x, st in ((0, st0), (1, st1)):
                    if next0[st] != -1:
                        pairs.add((x, 0))
                    if next1[st] != -1:
                        pairs.add((x, 1))
                found.append((wb.decode("ascii"), _classify_pairs(pairs)))
        found.sort(key=lambda item: (len(item[0]), item[0]))
        self._bispecial_cache[max_len] = found
        return found

    def signed_bispecials(self, max_len: int) -> list[tuple[str, BispecialType]]:
        """Only the strong/weak bispecials (the ones with nonzero sign)."""
        return [
            (w, t)
            for (w, t) in self.bispecials(max_len)
            if t in (BispecialType.STRONG, BispecialType.WEAK)
        ]

    def step_identity_table(self, n_max: int) -> list["StepIdentityRow"]:
        """Per-n comparison of the measured first difference with the
        bispecial sum 1 + sum of signs over |w| < n."""
        if n_max + 2 > self.max_n:
            raise IndexRangeError(
                f"identity table to n={n_max} needs max_n >= {n_max + 2}"
            )
        by_len = [0] * (n_max + 1)
        if n_max >= 1:
            for w, t in self.bispecials(n_max - 1):
                by_len[len(w)] += t.sign
        rows = []
        running = 0
        for n in range(n_max + 1):
            predicted = 1 + running
            step = self.step_hat(n)
            rows.append(StepIdentityRow(n, step, predicted, step == predicted))
            if n <= n_max - 1:
                running += by_len[n]
        return rows

    def factor_lines(self, n: int) -> list[str]:
        """The distinct length-n factors as sorted text lines (diff-friendly)."""
        if not 0 <= n <= self.max_n:
            raise IndexRangeError(f"n={n} outside indexed range 0..{self.max_n}")
        if n == 0:
            return [""]
        length, link, first_end = self._len, self._link, self._first_end
        text = self.text
        out = []
        for s in range(1, self._size):
            if length[link[s]] + 1 <= n <= length[s]:
                e = first_end[s]
                out.append(text[e - n : e].decode("ascii"))
        out.sort()
        return out


@dataclass(frozen=True)
class StepIdentityRow:
    n: int
    step: int
    predicted: int
    equal: bool


def build_index(text: Word, max_n: int, memory_budget: int = DEFAULT_INDEX_BUDGET) -> FactorIndex:
    return FactorIndex(text, max_n, memory_budget)


def window_density(text: Word, letter: int, start: int, width: int) -> Fraction:
    """Exact density of a letter inside text[start : start + width]."""
    if letter not in (0, 1):
        raise ValueError("letter must be 0 or 1")
    if width < 1:
        raise ValueError("width must be positive")
    if start < 0 or start + width > len(text):
        raise IndexRangeError(
            f"window [{start}, {start + width}) outside text of length {len(text)}"
        )
    return Fraction(text[start : start + width].count(letter), width)


def every_window_contains(text: Word, pattern: Word, window: int) -> bool:
    """True iff each length-`window` factor of text contains the pattern."""
    if len(pattern) == 0 or window < len(pattern):
        return False
    if window > len(text):
        return True  # no full window exists
    hay = text.to_bytes01()
    needle = pattern.to_bytes01()
    slack = window - len(pattern)
    last_start = len(hay) - window
    prev = -1
    pos = hay.find(needle)
    while pos != -1:
        if prev == -1:
            if pos > slack:
                return False
        elif pos - prev > slack + 1 and prev + 1 <= last_start:
            return False
        prev = pos
        pos = hay.find(needle, pos + 1)
    if prev == -1:
        return False
    return prev >= last_start
