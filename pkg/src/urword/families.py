"""Parameter families and the two-letter substitution tower built from them.

A family is three positive integer sequences (l_i), (m_i), (n_i).  Level i
defines the substitution 0 -> 0^m 1^l, 1 -> 0^m 1^n; composing levels h,
h+1, ..., h+i-1 on a single letter yields the rank-i words of the tower at
level h, written u (seed 0) and v (seed 1).  They obey

    u_{i+1} = u_i^{m}  v_i^{l}      v_{i+1} = u_i^{m}  v_i^{n}

with the level index increasing inward, so Parikh vectors follow an exact
integer recurrence that never materializes letters.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import FamilyConfigError, FamilyDepthError
from .words import (
    EMPTY,
    ONE_LETTER,
    ZERO_LETTER,
    Parikh,
    Substitution,
    Word,
    check_cap,
    parikh,
)


def short_int(x: int) -> str:
    """Decimal rendering that stays readable for multi-thousand-digit values.

    Beyond ~90k digits decimal conversion is quadratic, so only the binary
    magnitude is reported there.
    """
    if x.bit_length() > 300_000:
        return f"(~2^{x.bit_length() - 1})"
    s = str(x)
    if len(s) <= 32:
        return s
    return f"{s[:12]}..{s[-6:]}({len(s)}d)"


class ParameterFamily:
    """Base class: lazily evaluated, memoized level parameters."""

    kind = "custom"

    def __init__(self):
        self._levels: dict[int, tuple[int, int, int]] = {}
        self._parikh: dict[tuple[int, int], tuple[Parikh, Parikh]] = {}
        self._memo: dict = {}
        self._lock = threading.Lock()

    def memo(self, key, factory):
        """Get-or-compute cache for derived per-level data (thread-safe)."""
        with self._lock:
            if key in self._memo:
                return self._memo[key]
        value = factory()  # pure computation, safe to race
        with self._lock:
            return self._memo.setdefault(key, value)

    # subclasses provide _raw_level(i) -> (l, m, n)

    @property
    def depth(self) -> Optional[int]:
        """Number of defined levels, or None if unbounded."""
        return None

    def _raw_level(self, i: int) -> tuple[int, int, int]:
        raise NotImplementedError

    def level(self, i: int) -> tuple[int, int, int]:
        if i < 0:
            raise ValueError("level index must be >= 0")
        d = self.depth
        if d is not None and i >= d:
            raise FamilyDepthError(i, d)
        with self._lock:
            got = self._levels.get(i)
            if got is None:
                got = self._raw_level(i)
                if min(got) < 1:
                    raise FamilyConfigError(
                        f"level {i}: parameters must be positive, got {got}"
                    )
                self._levels[i] = got
        return got

    def l(self, i: int) -> int:
        return self.level(i)[0]

    def m(self, i: int) -> int:
        return self.level(i)[1]

    def n(self, i: int) -> int:
        return self.level(i)[2]

    def level_valid(self, i: int) -> bool:
        """Per-level validity metadata: ordering, and growth from level i-1."""
        l1, m1, n1 = self.level(i)
        if not l1 < m1 < n1:
            return False
        if i == 0:
            return True
        l0, m0, n0 = self.level(i - 1)
        return l0 < l1 and m0 < m1 and n0 < n1

    def max_level_defined(self, limit: int) -> int:
        """Largest level < limit that is defined (finite families truncate)."""
        d = self.depth
        return limit if d is None else min(limit, d - 1)

    def describe(self) -> dict:
        raise NotImplementedError


class PaperFamily(ParameterFamily):
    """The built-in doubly exponential family: powers of two at every level."""

    kind = "paper_star"

    def _raw_level(self, i: int) -> tuple[int, int, int]:
        e = 1 << i
        return (1 << (2 * e + 4), 1 << (8 * e), 1 << (10 * e))

    def describe(self) -> dict:
        return {"kind": "paper_star"}


class CustomFamily(ParameterFamily):
    """A family given by explicit finite tables."""

    kind = "custom"

    def __init__(self, l, m, n, validate: bool = True):
        super().__init__()
        self._l = [int(x) for x in l]
        self._m = [int(x) for x in m]
        self._n = [int(x) for x in n]
        if not (len(self._l) == len(self._m) == len(self._n)):
            raise FamilyConfigError("l, m, n tables must have equal length")
        if not self._l:
            raise FamilyConfigError("family needs at least one level")
        if any(x < 1 for x in self._l + self._m + self._n):
            raise FamilyConfigError("all parameters must be positive integers")
        if validate:
            for i in range(len(self._l)):
                if not self.level_valid(i):
                    raise FamilyConfigError(
                        f"level {i}: need l < m < n and strict growth, got "
                        f"l={self._l[i]} m={self._m[i]} n={self._n[i]}"
                    )

    @property
    def depth(self) -> Optional[int]:
        return len(self._l)

    def _raw_level(self, i: int) -> tuple[int, int, int]:
        return (self._l[i], self._m[i], self._n[i])

    def describe(self) -> dict:
        return {"kind": "custom", "l": self._l, "m": self._m, "n": self._n}


PAPER = PaperFamily()


def parse_family(obj) -> ParameterFamily:
    """Build a family from its dict description (see README for the schema)."""
    if isinstance(obj, str):
        if obj in ("paper", "paper_star"):
            return PAPER
        raise FamilyConfigError(f"unknown family name {obj!r}")
    if not isinstance(obj, dict):
        raise FamilyConfigError("family description must be a dict")
    kind = obj.get("kind")
    if kind in ("paper", "paper_star"):
        return PAPER
    if kind == "custom":
        try:
            return CustomFamily(obj["l"], obj["m"], obj["n"])
        except KeyError as exc:
            raise FamilyConfigError(f"custom family needs key {exc}") from None
    raise FamilyConfigError(f"unknown family kind {kind!r}")


def load_family_file(path) -> ParameterFamily:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FamilyConfigError(f"{path}: not valid JSON ({exc})") from None
    return parse_family(obj)


# -- substitutions and tower words ------------------------------------------


def substitution_at(fam: ParameterFamily, h: int) -> Substitution:
    """The level-h substitution 0 -> 0^m 1^l, 1 -> 0^m 1^n, materialized."""
    if h < 0:
        raise ValueError("level must be >= 0")
    l_, m_, n_ = fam.level(h)
    zeros = Word.zeros(m_)
    return Substitution(zeros + Word.ones(l_), zeros + Word.ones(n_))


def apply_level(fam: ParameterFamily, h: int, w: Word) -> Word:
    """Apply the level-h substitution, materializing only the images used."""
    l_, m_, n_ = fam.level(h)
    z, o = parikh(w).as_tuple()
    check_cap(z * (m_ + l_) + o * (m_ + n_), "substitution image")
    if len(w) == 0:
        return EMPTY
    img0 = (Word.zeros(m_) + Word.ones(l_)).to_bytes01() if z else b""
    img1 = (Word.zeros(m_) + Word.ones(n_)).to_bytes01() if o else b""
    images = (img0, img1)
    return Word.from01(b"".join(images[b & 1] for b in w.to_bytes01()))


def parikh_uv(fam: ParameterFamily, h: int, i: int) -> tuple[Parikh, Parikh]:
    """Exact Parikh vectors of the rank-i tower words at level h."""
    if i < 0:
        raise ValueError("rank must be >= 0")
    with fam._lock:
        best = fam._parikh.get((h, i))
    if best is not None:
        return best
    u, v = Parikh(1, 0), Parikh(0, 1)
    start = 0
    # resume from the deepest cached rank below i
    for j in range(i - 1, 0, -1):
        cached = fam._parikh.get((h, j))
        if cached is not None:
            u, v = cached
            start = j
            break
    for j in range(start, i):
        l_, m_, n_ = fam.level(h + j)
        um = u.scaled(m_)
        u, v = um + v.scaled(l_), um + v.scaled(n_)
        with fam._lock:
            fam._parikh[(h, j + 1)] = (u, v)
    return (u, v)


def word_length(fam: ParameterFamily, h: int, i: int, which: str) -> int:
    u, v = parikh_uv(fam, h, i)
    return (u if which == "u" else v).total


def _check_which(which: str) -> None:
    if which not in ("u", "v"):
        raise ValueError("which must be 'u' or 'v'")


def generate_word(fam: ParameterFamily, h: int, i: int, which: str) -> Word:
    """Materialize the rank-i tower word at level h (seed 0 for u, 1 for v)."""
    _check_which(which)
    if i < 0:
        raise ValueError("rank must be >= 0")
    check_cap(word_length(fam, h, i, which), f"{which}-word rank {i} level {h}")
    u, v = ZERO_LETTER, ONE_LETTER
    for j in range(i):
        l_, m_, n_ = fam.level(h + j)
        um = u.repeat(m_)
        if j == i - 1:
            return um + v.repeat(l_ if which == "u" else n_)
        u, v = um + v.repeat(l_), um + v.repeat(n_)
    return u if which == "u" else v


def prefix_stream(fam: ParameterFamily, h: int, length: int) -> Word:
    """First `length` letters of the infinite level-h word.

    Expands block by block and cuts off at `length`, so suffix-heavy v-blocks
    that the prefix never reaches are not materialized.
    """
    if length < 0:
        raise ValueError("length must be >= 0")
    check_cap(length, "prefix")
    if length == 0:
        return EMPTY
    rank = 0
    while word_length(fam, h, rank, "u") < length:
        rank += 1

    memo: dict[tuple[int, str], Word] = {}

    def full(r: int, which: str) -> Word:
        key = (r, which)
        w = memo.get(key)
        if w is None:
            w = expand(r, which, word_length(fam, h, r, which))
            memo[key] = w
        return w

    def expand(r: int, which: str, t: int) -> Word:
        if t == 0:
            return EMPTY
        if r == 0:
            return ZERO_LETTER if which == "u" else ONE_LETTER
        l_, m_, n_ = fam.level(h + r - 1)
        reps_v = l_ if which == "u" else n_
        lu = word_length(fam, h, r - 1, "u")
        lv = word_length(fam, h, r - 1, "v")
        out = EMPTY
        k = min(m_, t // lu)
        if k:
            out = full(r - 1, "u").repeat(k)
            t -= k * lu
        if t and k < m_:
            return out + expand(r - 1, "u", t)
        if t:
            k2 = min(reps_v, t // lv)
            if k2:
                out = out + full(r - 1, "v").repeat(k2)
                t -= k2 * lv
            if t:
                out = out + expand(r - 1, "v", t)
        return out

    return expand(rank, "u", length)


# -- the padded image map ----------------------------------------------------


def affine_image_parikh(fam: ParameterFamily, h: int, p: Parikh) -> Parikh:
    """Parikh vector of the padded image: matrix [[m,m],[l,n]] plus (m, 2l)."""
    l_, m_, n_ = fam.level(h)
    return Parikh(
        m_ * (p.zeros + p.ones + 1),
        l_ * p.zeros + n_ * p.ones + 2 * l_,
    )


def bispecial_image(fam: ParameterFamily, h: int, v: Word) -> Word:
    """The padded image 1^l sigma_h(v) 0^m 1^l of a level-(h+1) word."""
    l_, m_, n_ = fam.level(h)
    predicted = affine_image_parikh(fam, h, parikh(v)).total
    check_cap(predicted, f"padded image at level {h}")
    mid = apply_level(fam, h, v) if len(v) else EMPTY
    return Word.ones(l_) + mid + Word.zeros(m_) + Word.ones(l_)


# -- hypothesis checking -----------------------------------------------------


@dataclass(frozen=True)
class CheckDetail:
    name: str
    ok: Optional[bool]
    note: str


@dataclass(frozen=True)
class HypothesisReport:
    """Exact-arithmetic verdicts for the level-i growth requirements."""

    level: int
    structural_ok: bool
    ratio_growth_ok: bool
    vector_lemma_ok: bool
    min_growth_factor: Optional[Fraction]
    details: tuple[CheckDetail, ...]

    @property
    def all_ok(self) -> bool:
        return self.structural_ok and self.ratio_growth_ok and self.vector_lemma_ok


def hypothesis_check(fam: ParameterFamily, i: int) -> HypothesisReport:
    """Evaluate the ordering, ratio-growth and interleaving inequalities at level i.

    Failures are reported, never raised; each named inequality lands in
    `details` with its exact outcome.
    """
    if i < 0:
        raise ValueError("level must be >= 0")
    details: list[CheckDetail] = []
    l1, m1, n1 = fam.level(i)

    ordered_here = l1 < m1 < n1
    details.append(
        CheckDetail(
            f"ordering[{i}]",
            ordered_here,
            f"l={short_int(l1)} m={short_int(m1)} n={short_int(n1)}",
        )
    )
    structural = ordered_here
    if i >= 1:
        l0, m0, n0 = fam.level(i - 1)
        ordered_prev = l0 < m0 < n0
        increasing = l0 < l1 and m0 < m1 and n0 < n1
        details.append(CheckDetail(f"ordering[{i - 1}]", ordered_prev, ""))
        details.append(CheckDetail(f"increasing[{i - 1}->{i}]", increasing, ""))
        structural = structural and ordered_prev and increasing

    if i == 0:
        ratio_ok = True
        growth = None
        details.append(CheckDetail("ratio_growth", None, "first level"))
        # separation needed by the rank-0 breakpoint chain, informational here
        details.append(
            CheckDetail("block_separation[0]", l1 + 1 < m1, "l0 + 1 < m0")
        )
    else:
        g_ml = Fraction(m1 * l0, l1 * m0)
        g_nm = Fraction(n1 * m0, m1 * n0)
        ratio_ok = g_ml > 1 and g_nm > 1
        growth = min(g_ml, g_nm)
        details.append(
            CheckDetail("ratio_m_over_l", g_ml > 1, f"growth factor {g_ml}")
        )
        details.append(
            CheckDetail("ratio_n_over_m", g_nm > 1, f"growth factor {g_nm}")
        )

    if i == 0:
        # only the middle inequality is expressible at the first level
        ok2 = m1 + 2 * l1 + 1 < n1
        details.append(CheckDetail("vector_ineq_2", ok2, "m + 2l + 1 < n"))
        details.append(
            CheckDetail("vector_ineq_1", None, "needs the previous level")
        )
        details.append(
            CheckDetail("vector_ineq_3", None, "needs the previous level")
        )
        vector_ok = ok2
    else:
        ok1 = n0 * l1 + l0 < l0 * m1
        ok2 = m1 + 2 * l1 + 1 < n1
        ok3 = l0 * m1 + 2 * n0 * l1 < n0 * (n1 - 1)
        details.append(
            CheckDetail(
                "vector_ineq_1",
                ok1,
                f"{short_int(n0 * l1 + l0)} < {short_int(l0 * m1)}",
            )
        )
        details.append(
            CheckDetail(
                "vector_ineq_2",
                ok2,
                f"{short_int(m1 + 2 * l1 + 1)} < {short_int(n1)}",
            )
        )
        details.append(
            CheckDetail(
                "vector_ineq_3",
                ok3,
                f"{short_int(l0 * m1 + 2 * n0 * l1)} < {short_int(n0 * (n1 - 1))}",
            )
        )
        vector_ok = ok1 and ok2 and ok3

    return HypothesisReport(
        level=i,
        structural_ok=structural,
        ratio_growth_ok=ratio_ok,
        vector_lemma_ok=vector_ok,
        min_growth_factor=growth,
        details=tuple(details),
    )


# -- recurrence bound --------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceBound:
    """Window length guaranteeing an occurrence of the rank-i prefix word."""

    rank: int
    value: int


def recurrence_bound(fam: ParameterFamily, i: int) -> RecurrenceBound:
    """Regressive recursion: start with n_i + 1 at level i and push down to 0."""
    if i < 0:
        raise ValueError("rank must be >= 0")
    value = fam.n(i) + 1
    for j in range(i, 0, -1):
        l_, m_, n_ = fam.level(j - 1)
        value = (m_ + n_) * (value + 1)
    return RecurrenceBound(rank=i, value=value)
