"""Symbolic bispecial structure of the tower word.

Every strong or weak bispecial factor of the level-h word arises by padding
substitution images around one of four rank-0 seeds: the empty word, the
short 1-block 1^l, the 0-block 0^(m-1), or the long 1-block 1^(n-1).  Their
Parikh vectors follow an exact affine recurrence, so lengths with thousands
of digits cost nothing, and the first complexity difference is a piecewise
constant function of the resulting breakpoints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import (
    FamilyDepthError,
    InvalidFamilyError,
    NotAFactorError,
    ShortFactorError,
    TheoryViolation,
)
from .families import (
    ParameterFamily,
    affine_image_parikh,
    apply_level,
    bispecial_image,
    hypothesis_check,
)
from .oracle import BispecialType
from .words import EMPTY, Parikh, Word, check_cap

KINDS = ("a", "b", "c", "d")

_DECLARED = {
    "a": BispecialType.STRONG,
    "b": BispecialType.STRONG,
    "c": BispecialType.WEAK,
    "d": BispecialType.WEAK,
}


@dataclass(frozen=True)
class BispecialKind:
    """Identity of a symbolic bispecial: seed kind, tower rank, base level."""

    kind: str
    rank: int
    level: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.rank < 0 or self.level < 0:
            raise ValueError("rank and level must be >= 0")

    @property
    def declared_type(self) -> BispecialType:
        return _DECLARED[self.kind]


def _seed_parikh(fam: ParameterFamily, kind: str, seed_level: int) -> Parikh:
    if kind == "a":  # the empty seed consumes no parameters
        return Parikh(0, 0)
    l_, m_, n_ = fam.level(seed_level)
    if kind == "b":
        return Parikh(0, l_)
    if kind == "c":
        return Parikh(m_ - 1, 0)
    return Parikh(0, n_ - 1)


def _seed_word(fam: ParameterFamily, kind: str, seed_level: int) -> Word:
    if kind == "a":
        return EMPTY
    l_, m_, n_ = fam.level(seed_level)
    if kind == "b":
        return Word.ones(l_)
    if kind == "c":
        return Word.zeros(m_ - 1)
    return Word.ones(n_ - 1)


def bispecial_parikh(fam: ParameterFamily, k: BispecialKind) -> Parikh:
    """Exact Parikh vector of the kind word, without materializing it."""

    def compute() -> Parikh:
        p = _seed_parikh(fam, k.kind, k.level + k.rank)
        for h in range(k.level + k.rank - 1, k.level - 1, -1):
            p = affine_image_parikh(fam, h, p)
        return p

    return fam.memo(("bisp_parikh", k.kind, k.rank, k.level), compute)


def bispecial_length(fam: ParameterFamily, k: BispecialKind) -> int:
    return bispecial_parikh(fam, k).total


def bispecial_word(fam: ParameterFamily, k: BispecialKind) -> Word:
    """Materialize the kind word (rank applications of the padded image)."""
    check_cap(bispecial_length(fam, k), f"bispecial {k.kind}_{k.rank}")
    w = _seed_word(fam, k.kind, k.level + k.rank)
    for h in range(k.level + k.rank - 1, k.level - 1, -1):
        w = bispecial_image(fam, h, w)
    return w


def theory_signed_bispecials(fam: ParameterFamily, max_len: int) -> dict[str, BispecialType]:
    """All predicted strong/weak bispecials of the level-0 word up to a
    length bound, as 0/1 strings mapped to their declared types."""
    out: dict[str, BispecialType] = {}
    for kind in KINDS:
        rank = 0
        while True:
            k = BispecialKind(kind, rank)
            try:
                length = bispecial_length(fam, k)
            except FamilyDepthError:
                break
            if length > max_len:
                break
            out[bispecial_word(fam, k).to01()] = _DECLARED[kind]
            rank += 1
    return out


def short_bispecials(fam: ParameterFamily, h: int) -> list[tuple[Word, BispecialType]]:
    """The four bispecials of the level-h word containing no '10'."""
    l_, m_, n_ = fam.level(h)
    return [
        (EMPTY, BispecialType.STRONG),
        (Word.ones(l_), BispecialType.STRONG),
        (Word.zeros(m_ - 1), BispecialType.WEAK),
        (Word.ones(n_ - 1), BispecialType.WEAK),
    ]


# -- Parikh comparison and the interleaving chain ----------------------------


def parikh_less(v: Parikh, w: Parikh) -> bool:
    """Componentwise <= with strictly smaller total length."""
    return v.zeros <= w.zeros and v.ones <= w.ones and v.total < w.total


def parikh_scaled_below(w: Parikh, v: Parikh, lam: Fraction) -> bool:
    """w > lam * (v + (1,1)) in both components, exactly."""
    return w.zeros > lam * (v.zeros + 1) and w.ones > lam * (v.ones + 1)


@dataclass(frozen=True)
class ChainResult:
    ok: bool
    checked_to: int
    first_failure: Optional[str] = None


def ordering_check(fam: ParameterFamily, i_max: int) -> ChainResult:
    """Verify D_{i-1} < B_i < C_i < A_{i+1} < D_i for 1 <= i <= i_max."""
    vec = lambda kind, rank: bispecial_parikh(fam, BispecialKind(kind, rank))
    for i in range(1, i_max + 1):
        chain = [
            (f"D_{i - 1}", vec("d", i - 1)),
            (f"B_{i}", vec("b", i)),
            (f"C_{i}", vec("c", i)),
            (f"A_{i + 1}", vec("a", i + 1)),
            (f"D_{i}", vec("d", i)),
        ]
        for (name1, p1), (name2, p2) in zip(chain, chain[1:]):
            if not parikh_less(p1, p2):
                return ChainResult(False, i, f"{name1} < {name2} fails at i={i}")
    return ChainResult(True, i_max)


def length_chain_check(fam: ParameterFamily, i_max: int) -> ChainResult:
    """Verify |b_i| < |c_i| < |a_{i+1}| < |d_i| < |b_{i+1}| for 0 <= i <= i_max."""
    ln = lambda kind, rank: bispecial_length(fam, BispecialKind(kind, rank))
    for i in range(i_max + 1):
        seq = [
            (f"|b_{i}|", ln("b", i)),
            (f"|c_{i}|", ln("c", i)),
            (f"|a_{i + 1}|", ln("a", i + 1)),
            (f"|d_{i}|", ln("d", i)),
            (f"|b_{i + 1}|", ln("b", i + 1)),
        ]
        for (name1, x1), (name2, x2) in zip(seq, seq[1:]):
            if not x1 < x2:
                return ChainResult(False, i, f"{name1} < {name2} fails at i={i}")
    return ChainResult(True, i_max)


# -- breakpoints and the complexity function ---------------------------------


@dataclass(frozen=True)
class BreakpointRow:
    """The four interval endpoints contributed by rank i, plus the next start."""

    rank: int
    len_b: int
    len_c: int
    len_a_next: int
    len_d: int
    len_b_next: int


def _validated(fam: ParameterFamily, level: int) -> bool:
    rep = fam.memo(("hyp", level), lambda: hypothesis_check(fam, level))
    return rep.structural_ok and rep.vector_lemma_ok


def _gate_rank(fam: ParameterFamily, rank: int) -> None:
    """Refuse rank-i breakpoints unless the proof's inequalities are validated
    at every consumed level (0..rank+1)."""
    if not _validated(fam, 0):
        raise InvalidFamilyError("level 0 fails the validated-hypothesis gate")
    if fam.l(0) + 1 >= fam.m(0):
        raise InvalidFamilyError(
            "level 0 needs l + 1 < m to separate the first two breakpoints"
        )
    for lev in range(1, rank + 2):
        if not _validated(fam, lev):
            raise InvalidFamilyError(
                f"level {lev} fails the validated-hypothesis gate; "
                f"rank-{rank} breakpoints refused"
            )


def breakpoint_row(fam: ParameterFamily, rank: int) -> BreakpointRow:
    """Gated, cached breakpoint lengths for one rank (ascending order checked)."""

    def compute() -> BreakpointRow:
        _gate_rank(fam, rank)
        ln = lambda kind, r: bispecial_length(fam, BispecialKind(kind, r))
        row = BreakpointRow(
            rank=rank,
            len_b=ln("b", rank),
            len_c=ln("c", rank),
            len_a_next=ln("a", rank + 1),
            len_d=ln("d", rank),
            len_b_next=ln("b", rank + 1),
        )
        chain = (row.len_b, row.len_c, row.len_a_next, row.len_d, row.len_b_next)
        if not all(x < y for x, y in zip(chain, chain[1:])):
            raise TheoryViolation(
                f"breakpoints out of order at rank {rank}: {chain}"
            )
        return row

    return fam.memo(("breakpoints", rank), compute)


def breakpoint_table(fam: ParameterFamily, max_rank: int) -> list[BreakpointRow]:
    return [breakpoint_row(fam, i) for i in range(max_rank + 1)]


def complexity_step(fam: ParameterFamily, n: int) -> int:
    """The first complexity difference s(n): 1 at n=0, otherwise 2 or 3."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    i = 0
    while True:
        row = breakpoint_row(fam, i)
        if i == 0 and n <= row.len_b:
            return 2
        if n <= row.len_c:
            return 3 if n > row.len_b else 2
        if n <= row.len_a_next:
            return 2
        if n <= row.len_d:
            return 3
        if n <= row.len_b_next:
            return 2
        i += 1


def complexity(fam: ParameterFamily, n: int) -> int:
    """The factor complexity p(n), summed in closed form over the
    constant-step intervals so n may be astronomically large."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    total = 2 * n
    top = n - 1  # steps s(1) .. s(n-1) contribute; count the +1 intervals
    i = 0
    while True:
        row = breakpoint_row(fam, i)
        if row.len_b > top:
            break
        total += max(0, min(row.len_c, top) - min(row.len_b, top))
        total += max(0, min(row.len_d, top) - min(row.len_a_next, top))
        if row.len_b_next >= top:
            break
        i += 1
    return total


def max_symbolic_length(fam: ParameterFamily, limit: int) -> int:
    """Largest n <= limit on which the piecewise step formula is validated
    (smaller when the family runs out of depth or fails the gate)."""
    from .errors import UrwordError

    best = 0
    i = 0
    while True:
        try:
            row = breakpoint_row(fam, i)
        except UrwordError:
            return best
        best = row.len_b_next
        if best >= limit:
            return limit
        i += 1


@dataclass(frozen=True)
class LiminfWitness:
    """Exact complexity ratio at the rank-(i+1) b-breakpoint and its bound."""

    rank: int
    length: int
    value: Fraction
    bound: Fraction
    scaling_ok: bool


def liminf_witness(fam: ParameterFamily, i: int) -> LiminfWitness:
    """p(|b_{i+1}|)/|b_{i+1}| together with 2 + 1/|b_{i+1}| + 1/l_{i+1};
    also checks B_{i+1} > l_{i+1} (D_i + (1,1)) componentwise."""
    b_next = bispecial_parikh(fam, BispecialKind("b", i + 1))
    d_i = bispecial_parikh(fam, BispecialKind("d", i))
    length = b_next.total
    l_next = fam.l(i + 1)
    value = Fraction(complexity(fam, length), length)
    bound = 2 + Fraction(1, length) + Fraction(1, l_next)
    scaling_ok = parikh_scaled_below(b_next, d_i, Fraction(l_next))
    if value > bound:
        raise TheoryViolation(
            f"complexity ratio {value} exceeds bound {bound} at rank {i}"
        )
    return LiminfWitness(i, length, value, bound, scaling_ok)


# -- desubstitution (synchronization) -----------------------------------------


@dataclass(frozen=True)
class Desubstitution:
    """Unique decomposition of a long factor: suffix, inner word, prefix."""

    s: Word
    v: Word
    p: Word


def _runs(segment: bytes) -> tuple[int, int]:
    """Split a '10'-free segment as 0^a 1^b and return (a, b)."""
    a = segment.find(b"1")
    if a == -1:
        return len(segment), 0
    return a, len(segment) - a


def desubstitute(fam: ParameterFamily, h: int, w: Word) -> Desubstitution:
    """Cut w at every '10' (image borders) and read off s, v, p.

    Raises ShortFactorError when w contains no '10', NotAFactorError when the
    pieces are not suffix / full images / prefix of the level-h images.
    """
    l_, m_, n_ = fam.level(h)
    wb = w.to_bytes01()
    borders = []
    pos = wb.find(b"10")
    while pos != -1:
        borders.append(pos + 1)
        pos = wb.find(b"10", pos + 1)
    if not borders:
        raise ShortFactorError("word contains no '10'; it is short at this level")

    s_seg = wb[: borders[0]]
    p_seg = wb[borders[-1] :]

    a, b = _runs(s_seg)  # s always ends in '1'
    if a == 0:
        if b > n_:
            raise NotAFactorError(f"leading 1-run of {b} exceeds n={n_}")
    else:
        if a > m_ or b not in (l_, n_):
            raise NotAFactorError(
                f"0^{a} 1^{b} is not a suffix of a level-{h} image"
            )

    c, d = _runs(p_seg)  # p always starts with '0'
    if d == 0:
        if c > m_:
            raise NotAFactorError(f"trailing 0-run of {c} exceeds m={m_}")
    else:
        if c != m_ or d > n_:
            raise NotAFactorError(
                f"0^{c} 1^{d} is not a prefix of a level-{h} image"
            )

    letters = []
    for x, y in zip(borders, borders[1:]):
        za, ob = _runs(wb[x:y])
        if za == m_ and ob == l_:
            letters.append("0")
        elif za == m_ and ob == n_:
            letters.append("1")
        else:
            raise NotAFactorError(
                f"inner block 0^{za} 1^{ob} is not a level-{h} image"
            )
    v = Word.from01("".join(letters))

    s_word, p_word = Word.from01(s_seg), Word.from01(p_seg)
    if s_word + apply_level(fam, h, v) + p_word != w:
        raise TheoryViolation("desubstitution did not reconstruct its input")
    return Desubstitution(s_word, v, p_word)
