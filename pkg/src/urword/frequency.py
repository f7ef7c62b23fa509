"""Letter-density obstruction to uniform frequencies, in exact rationals.

The 0-density along the u-tower and the 1-density along the v-tower each
stay above a telescoping product bound; their sum never drops below 3/2,
while a common frequency assignment would force it to 1.  No floating point
anywhere: the 3/2 floor is an exact claim and all rationals stay tiny.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import TheoryViolation
from .families import ParameterFamily, parikh_uv, word_length
from .words import count_occurrences
from . import families

THREE_HALVES = Fraction(3, 2)


def ratios_exact(fam: ParameterFamily, i: int) -> tuple[Fraction, Fraction]:
    """(0-density of the rank-i u-word, 1-density of the rank-i v-word)."""
    u, v = parikh_uv(fam, 0, i)
    return Fraction(u.zeros, u.total), Fraction(v.ones, v.total)


def paper_density_product(i: int) -> Fraction:
    """Specialized product for the built-in family: prod_{j=1..i} 1/(1 + 2^-2^j)."""
    out = Fraction(1)
    for j in range(1, i + 1):
        power = 1 << (1 << j)  # 2^(2^j)
        out *= Fraction(power, power + 1)
    return out


def product_bounds(fam: ParameterFamily, i: int) -> tuple[Fraction, Fraction]:
    """The two telescoping lower bounds for the rank-i densities (i >= 1).

    For the built-in family both closed forms collapse to the same
    power-of-two product; that equality is asserted exactly.
    """
    if i < 1:
        raise ValueError("bounds are defined for i >= 1")
    l0, m0, _ = fam.level(0)
    bound_u0 = Fraction(1) / (1 + Fraction(l0, m0))
    for j in range(1, i):
        lj, mj, _ = fam.level(j)
        _, _, n_prev = fam.level(j - 1)
        l_prev = fam.l(j - 1)
        bound_u0 /= 1 + Fraction(lj * n_prev, mj * l_prev)
    bound_v1 = Fraction(1)
    for j in range(i):
        _, mj, nj = fam.level(j)
        bound_v1 /= 1 + Fraction(mj, nj)
    if fam.kind == "paper_star":
        special = paper_density_product(i)
        if bound_u0 != special or bound_v1 != special:
            raise TheoryViolation(
                f"specialized product disagrees with the general bounds at i={i}"
            )
    return bound_u0, bound_v1


def closed_form_check(i: int, convention: str = "displayed") -> bool:
    """Telescoping identity (4/3) P_i = 1/(1 - 2^-2^(i+1)) for the built-in
    family's product, under either indexing convention.

    "displayed": P_i = prod_{j=1..i} (so P_0 is the empty product 1).
    "shifted":   P_i = prod_{j=1..i+1} (the rank-0 product already carries
                 the first factor).
    """
    if convention == "displayed":
        p = paper_density_product(i)
    elif convention == "shifted":
        p = paper_density_product(i + 1)
    else:
        raise ValueError("convention must be 'displayed' or 'shifted'")
    rhs = Fraction(1) / (1 - Fraction(1, 1 << (1 << (i + 1))))
    return Fraction(4, 3) * p == rhs


def _rat_json(x: Optional[Fraction]) -> Optional[dict]:
    if x is None:
        return None
    try:
        approx = float(x)
    except OverflowError:
        approx = None
    return {"num": str(x.numerator), "den": str(x.denominator), "approx": approx}


@dataclass(frozen=True)
class FrequencyReport:
    """Exact densities, bounds and excess at one rank."""

    rank: int
    ratio_u0: Fraction
    ratio_v1: Fraction
    bound_u0: Optional[Fraction]
    bound_v1: Optional[Fraction]
    excess: Fraction
    density_product: Optional[Fraction]  # specialized product, built-in family only

    def as_json(self) -> dict:
        """Decimal-string rationals; the float field is non-authoritative."""
        return {
            "rank": self.rank,
            "ratio_u0": _rat_json(self.ratio_u0),
            "ratio_v1": _rat_json(self.ratio_v1),
            "bound_u0": _rat_json(self.bound_u0),
            "bound_v1": _rat_json(self.bound_v1),
            "excess": _rat_json(self.excess),
            "density_product": _rat_json(self.density_product),
        }


def excess_check(fam: ParameterFamily, i: int) -> FrequencyReport:
    """Full density report at rank i; the 3/2 floor is asserted for the
    built-in family and merely reported for custom ones."""
    ratio_u0, ratio_v1 = ratios_exact(fam, i)
    bound_u0 = bound_v1 = None
    product = None
    if i >= 1:
        bound_u0, bound_v1 = product_bounds(fam, i)
    if fam.kind == "paper_star":
        product = paper_density_product(i)
        if ratio_u0 + ratio_v1 < THREE_HALVES:
            raise TheoryViolation(f"density excess below 3/2 at rank {i}")
    return FrequencyReport(
        rank=i,
        ratio_u0=ratio_u0,
        ratio_v1=ratio_v1,
        bound_u0=bound_u0,
        bound_v1=bound_v1,
        excess=ratio_u0 + ratio_v1,
        density_product=product,
    )


def length_ratio_bound_ok(fam: ParameterFamily, i: int) -> bool:
    """|v_i| / |u_i| <= n_{i-1} / l_{i-1}, exactly (i >= 1)."""
    if i < 1:
        raise ValueError("defined for i >= 1")
    lu = word_length(fam, 0, i, "u")
    lv = word_length(fam, 0, i, "v")
    l_prev, _, n_prev = fam.level(i - 1)
    return Fraction(lv, lu) <= Fraction(n_prev, l_prev)


@dataclass(frozen=True)
class ObstructionRow:
    rank: int
    length_u: int
    length_v: int
    ratio_u0: Fraction
    ratio_v1: Fraction
    excess: Fraction
    gap: Fraction
    v_occurrence: str  # "searched" or "by_construction"


@dataclass(frozen=True)
class ObstructionReport:
    rows: tuple[ObstructionRow, ...]
    min_gap: Fraction
    all_gaps_ge_half: bool


def obstruction_report(
    fam: ParameterFamily, i_max: int, search_budget: int = 1 << 22
) -> ObstructionReport:
    """Per-rank densities of the two witness factor families and the excess
    gap: a frequency assignment summing to 1 cannot dominate both.

    Each v-word is confirmed to occur inside the next u-word by an actual
    text search whenever that fits the budget (it sits right after the
    u-blocks), otherwise recorded as holding by construction.
    """
    rows = []
    for i in range(i_max + 1):
        ratio_u0, ratio_v1 = ratios_exact(fam, i)
        lu = word_length(fam, 0, i, "u")
        lv = word_length(fam, 0, i, "v")
        needed = fam.m(i) * lu + lv if i + 1 <= _max_rank(fam) else None
        occurrence = "by_construction"
        if needed is not None and needed <= search_budget:
            prefix = families.prefix_stream(fam, 0, needed)
            v_word = families.generate_word(fam, 0, i, "v")
            if count_occurrences(prefix, v_word) < 1:
                raise TheoryViolation(
                    f"v-word of rank {i} not found in the length-{needed} prefix"
                )
            occurrence = "searched"
        excess = ratio_u0 + ratio_v1
        rows.append(
            ObstructionRow(
                rank=i,
                length_u=lu,
                length_v=lv,
                ratio_u0=ratio_u0,
                ratio_v1=ratio_v1,
                excess=excess,
                gap=excess - 1,
                v_occurrence=occurrence,
            )
        )
    min_gap = min(r.gap for r in rows)
    return ObstructionReport(
        rows=tuple(rows),
        min_gap=min_gap,
        all_gaps_ge_half=min_gap >= Fraction(1, 2),
    )


def _max_rank(fam: ParameterFamily) -> int:
    d = fam.depth
    return 10**9 if d is None else d
