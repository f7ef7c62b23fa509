"""Named verification checks over a parameter family.

Each check is a pure function from (family, params) to a status in
{pass, fail, unsaturated, skipped} plus JSON-ready details.  Oracle-backed
checks follow a two-prefix protocol: answers must agree at prefix lengths
L and 2L, and additionally fall below a structural trust bound derived from
the block lengths (a long periodic power can make two short prefixes agree
on statistics that the infinite word later contradicts).
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import bispecial, families, frequency, oracle
from .errors import (
    FamilyDepthError,
    InvalidFamilyError,
    SizeLimitError,
    UrwordError,
)
from .families import ParameterFamily, word_length
from .words import Parikh, Word, count_occurrences, materialization_cap

PASS = "pass"
FAIL = "fail"
UNSATURATED = "unsaturated"
SKIPPED = "skipped"


@dataclass(frozen=True)
class SuiteParams:
    max_rank: int = 12
    ordering_rank: int = 10
    closed_form_rank: int = 10
    liminf_rank: int = 8
    complexity_samples: int = 64
    complexity_limit: int = 10**50
    prop_samples: int = 2000
    prop_levels: int = 5
    sync_words: int = 60
    sync_max_level: int = 3
    recurrence_budget: int = 1 << 22
    oracle_prefix: int = 200_000
    oracle_max_n: int = 400
    seed: int = 20240811


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    statement: str
    details: dict


@dataclass(frozen=True)
class SuiteResult:
    family: dict
    params: dict
    results: tuple[CheckResult, ...]

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if r.status == FAIL)

    @property
    def ok(self) -> bool:
        return self.failed == 0


def rational_json(x: Optional[Fraction]) -> Optional[dict]:
    if x is None:
        return None
    try:
        approx = float(x)
    except OverflowError:
        approx = None
    return {
        "num": str(x.numerator),
        "den": str(x.denominator),
        "approx": approx,  # non-authoritative convenience value
    }


def _rank_limit(fam: ParameterFamily, want: int, levels_needed_at: int = 0) -> int:
    """Clamp a rank so every consumed level exists for finite families.

    `levels_needed_at`: highest level index used at rank i is i + offset.
    """
    d = fam.depth
    if d is None:
        return want
    return min(want, d - 1 - levels_needed_at)


# -- individual checks --------------------------------------------------------


def _check_hypothesis(fam: ParameterFamily, P: SuiteParams):
    top = fam.max_level_defined(P.max_rank)
    failures = []
    per_level = {}
    for i in range(top + 1):
        rep = families.hypothesis_check(fam, i)
        per_level[str(i)] = {
            "structural": rep.structural_ok,
            "ratio_growth": rep.ratio_growth_ok,
            "vector": rep.vector_lemma_ok,
        }
        if not rep.all_ok:
            failures.extend(
                f"level {i}: {d.name}" for d in rep.details if d.ok is False
            )
    details = {"levels": top + 1, "per_level": per_level, "failures": failures}
    return (PASS if not failures else FAIL), details


def _check_frequency_floor(fam: ParameterFamily, P: SuiteParams):
    top = _rank_limit(fam, P.max_rank, levels_needed_at=-1)
    bad = []
    min_excess = None
    for i in range(top + 1):
        rep = frequency.excess_check(fam, i)
        if min_excess is None or rep.excess < min_excess:
            min_excess = rep.excess
        if rep.excess < Fraction(3, 2):
            bad.append(i)
    details = {
        "ranks": top + 1,
        "min_excess": rational_json(min_excess),
        "below_floor": bad,
    }
    return (PASS if not bad else FAIL), details


def _check_product_bounds(fam: ParameterFamily, P: SuiteParams):
    top = _rank_limit(fam, P.max_rank, levels_needed_at=-1)
    bad = []
    for i in range(1, top + 1):
        r0, r1 = frequency.ratios_exact(fam, i)
        b0, b1 = frequency.product_bounds(fam, i)
        if r0 < b0 or r1 < b1:
            bad.append(i)
    details = {"ranks_checked": list(range(1, top + 1)), "violations": bad}
    return (PASS if not bad else FAIL), details


def _check_closed_form(fam: ParameterFamily, P: SuiteParams):
    if fam.kind != "paper_star":
        return SKIPPED, {"note": "telescoping product is specific to the built-in family"}
    outcomes = {}
    for convention in ("displayed", "shifted"):
        outcomes[convention] = all(
            frequency.closed_form_check(i, convention)
            for i in range(P.closed_form_rank + 1)
        )
    validated = [c for c, ok in outcomes.items() if ok]
    details = {
        "ranks": P.closed_form_rank + 1,
        "per_convention": outcomes,
        "validated_convention": validated[0] if validated else None,
    }
    return (PASS if validated else FAIL), details


def _check_ordering_chain(fam: ParameterFamily, P: SuiteParams):
    top = _rank_limit(fam, P.ordering_rank, levels_needed_at=0)
    if top < 1:
        return SKIPPED, {"note": "family too shallow for the vector chain"}
    res = bispecial.ordering_check(fam, top)
    details = {"i_max": top, "first_failure": res.first_failure}
    return (PASS if res.ok else FAIL), details


def _check_length_chain(fam: ParameterFamily, P: SuiteParams):
    top = _rank_limit(fam, P.ordering_rank, levels_needed_at=1)
    if top < 0:
        return SKIPPED, {"note": "family too shallow for the length chain"}
    res = bispecial.length_chain_check(fam, top)
    details = {"i_max": top, "first_failure": res.first_failure}
    return (PASS if res.ok else FAIL), details


def _check_complexity_bound(fam: ParameterFamily, P: SuiteParams):
    limit = bispecial.max_symbolic_length(fam, P.complexity_limit)
    if limit < 1:
        return SKIPPED, {"note": "no validated length range"}
    rng = random.Random(P.seed ^ 0xC0DE)
    ns = {1, limit}
    for _ in range(P.complexity_samples):
        u = rng.random()
        ns.add(max(1, min(limit, int(limit**u))))
    bad = []
    for n in sorted(ns):
        if bispecial.complexity(fam, n) > 3 * n + 1:
            bad.append(n)
    details = {
        "samples": len(ns),
        "limit": str(limit),
        "violations": [str(n) for n in bad],
    }
    return (PASS if not bad else FAIL), details


def _check_liminf(fam: ParameterFamily, P: SuiteParams):
    top = _rank_limit(fam, P.liminf_rank, levels_needed_at=2)
    if top < 0:
        return SKIPPED, {"note": "family too shallow for the ratio witness"}
    values = []
    problems = []
    for i in range(top + 1):
        w = bispecial.liminf_witness(fam, i)
        values.append(w.value)
        if w.value > w.bound:
            problems.append(f"value above bound at rank {i}")
        if not w.scaling_ok:
            problems.append(f"scaling inequality fails at rank {i}")
    decreasing = all(b < a for a, b in zip(values, values[1:]))
    if not decreasing and fam.kind == "paper_star":
        # slow-growing custom families may not be in the asymptotic regime yet
        problems.append("witness values not strictly decreasing")
    details = {
        "ranks": top + 1,
        "values": [rational_json(v) for v in values],
        "decreasing": decreasing,
        "problems": problems,
    }
    return (PASS if not problems else FAIL), details


def _prop_levels(fam: ParameterFamily, P: SuiteParams) -> list[int]:
    top = fam.max_level_defined(P.prop_levels)
    return list(range(top + 1))


def _check_affine_monotone(fam: ParameterFamily, P: SuiteParams):
    rng = random.Random(P.seed + 101)
    levels = _prop_levels(fam, P)
    per_level = max(1, P.prop_samples // len(levels))
    violations = 0
    total = 0
    for lev in levels:
        for _ in range(per_level):
            v = Parikh(rng.randint(0, 10**6), rng.randint(0, 10**6))
            d0, d1 = rng.randint(0, 1000), rng.randint(0, 1000)
            if d0 == 0 and d1 == 0:
                d1 = 1
            w = Parikh(v.zeros + d0, v.ones + d1)
            vi = families.affine_image_parikh(fam, lev, v)
            wi = families.affine_image_parikh(fam, lev, w)
            total += 1
            if not bispecial.parikh_less(vi, wi):
                violations += 1
    details = {"instances": total, "levels": levels, "violations": violations}
    return (PASS if violations == 0 else FAIL), details


def _check_affine_scaling(fam: ParameterFamily, P: SuiteParams):
    rng = random.Random(P.seed + 202)
    levels = _prop_levels(fam, P)
    per_level = max(1, P.prop_samples // len(levels))
    violations = 0
    total = 0
    for lev in levels:
        n_lev = fam.n(lev)
        lam_top = min(n_lev, 10**4)
        for _ in range(per_level):
            den = rng.randint(1, 64)
            lam = Fraction(rng.randint(1, lam_top * den), den)
            if lam > n_lev:
                lam = Fraction(n_lev)
            v = Parikh(rng.randint(0, 10**5), rng.randint(0, 10**5))
            w = Parikh(
                int(lam * (v.zeros + 1)) + 1 + rng.randint(0, 10**4),
                int(lam * (v.ones + 1)) + 1 + rng.randint(0, 10**4),
            )
            vi = families.affine_image_parikh(fam, lev, v)
            wi = families.affine_image_parikh(fam, lev, w)
            total += 1
            if not bispecial.parikh_scaled_below(w, v, lam):
                violations += 1  # generator broke its own premise
            elif not bispecial.parikh_scaled_below(wi, vi, lam):
                violations += 1
    details = {"instances": total, "levels": levels, "violations": violations}
    return (PASS if violations == 0 else FAIL), details


def _sync_levels(fam: ParameterFamily, P: SuiteParams) -> list[int]:
    """Levels whose worst-case padded image of a 50-letter word stays modest."""
    budget = min(materialization_cap(), 1 << 26)
    out = []
    top = fam.max_level_defined(P.sync_max_level)
    for h in range(top + 1):
        l_, m_, n_ = fam.level(h)
        if 50 * (m_ + n_) + m_ + 2 * l_ <= budget:
            out.append(h)
    return out


def _check_sync_roundtrip(fam: ParameterFamily, P: SuiteParams):
    rng = random.Random(P.seed + 303)
    levels = _sync_levels(fam, P)
    if not levels:
        return SKIPPED, {"note": "no level fits the materialization budget"}
    mismatches = 0
    total = 0
    for _ in range(P.sync_words):
        h = levels[rng.randrange(len(levels))]
        l_, m_, _ = fam.level(h)
        length = rng.randint(0, 50)
        v = Word.from01("".join(rng.choice("01") for _ in range(length)))
        image = families.bispecial_image(fam, h, v)
        got = bispecial.desubstitute(fam, h, image)
        total += 1
        expected_s = Word.ones(l_)
        expected_p = Word.zeros(m_) + Word.ones(l_)
        if got.s != expected_s or got.v != v or got.p != expected_p:
            mismatches += 1
    details = {"roundtrips": total, "levels": levels, "mismatches": mismatches}
    return (PASS if mismatches == 0 else FAIL), details


def _check_uniform_recurrence(fam: ParameterFamily, P: SuiteParams):
    ranks = []
    for i in (0, 1):
        if fam.depth is not None and i >= fam.depth:
            continue
        bound = families.recurrence_bound(fam, i).value
        if 10 * bound <= P.recurrence_budget:
            ranks.append((i, bound))
    if not ranks:
        return SKIPPED, {"note": "recurrence windows exceed the prefix budget"}
    length = 10 * max(bound for _, bound in ranks)
    prefix = families.prefix_stream(fam, 0, length)
    problems = []
    for i, bound in ranks:
        pattern = families.generate_word(fam, 0, i, "u")
        if not oracle.every_window_contains(prefix, pattern, bound):
            problems.append(f"window of length {bound} misses the rank-{i} word")
    forbidden = Word.ones(fam.n(0) + 1)
    if count_occurrences(prefix, forbidden) != 0:
        problems.append(f"forbidden 1-run of length {fam.n(0) + 1} occurs")
    details = {
        "ranks": [i for i, _ in ranks],
        "prefix_length": length,
        "problems": problems,
    }
    return (PASS if not problems else FAIL), details


# -- the oracle-vs-theory check ------------------------------------------------


def trusted_saturation_bound(fam: ParameterFamily, prefix_len: int, k_cap: int) -> int:
    """Largest factor length whose statistics a prefix of this length can
    pin down, judged from block sizes alone.

    Length-K windows cannot tell apart v-block run lengths beyond what they
    can see, so every length-K factor of the infinite word occurs by the end
    of the first block of the next scale up; anything longer is untrusted.
    """
    best = 0
    j = 0
    while True:
        try:
            block = word_length(fam, 0, j + 2, "u")
            vis_hi = (fam.l(j + 1) + 1) * word_length(fam, 0, j + 1, "v") + 2
        except FamilyDepthError:
            break
        lo = 1 if j == 0 else (fam.l(j) + 1) * word_length(fam, 0, j, "v") + 2
        hi = min(k_cap, vis_hi - 1, prefix_len - block)
        if hi >= lo:
            best = max(best, hi)
        if block >= prefix_len or lo > k_cap:
            break
        j += 1
    return best


def _bisp_stable_below(list_a, list_b) -> int:
    """First length at which the two bispecial inventories disagree."""
    from itertools import zip_longest

    for x, y in zip_longest(list_a, list_b):
        if x != y:
            return min(
                len(x[0]) if x else 1 << 62,
                len(y[0]) if y else 1 << 62,
            )
    return 1 << 62


def _check_oracle_equivalence(fam: ParameterFamily, P: SuiteParams):
    L, K = P.oracle_prefix, P.oracle_max_n
    if K + 2 > L:
        return SKIPPED, {"note": "prefix shorter than the requested factor length"}
    try:
        prefix1 = families.prefix_stream(fam, 0, L)
        prefix2 = families.prefix_stream(fam, 0, 2 * L)
    except (FamilyDepthError, SizeLimitError) as exc:
        return SKIPPED, {"note": f"prefix unavailable: {exc}"}
    trusted = trusted_saturation_bound(fam, L, K)

    idx1 = oracle.build_index(prefix1, K + 2)
    prof1 = [idx1.complexity_hat(n) for n in range(K + 2)]
    bisp1 = idx1.bispecials(max(0, K - 1))
    identity1 = idx1.step_identity_table(K)
    signed1 = [(w, t) for (w, t) in bisp1 if t.sign]
    del idx1

    idx2 = oracle.build_index(prefix2, K + 2)
    prof2 = [idx2.complexity_hat(n) for n in range(K + 2)]
    bisp2 = idx2.bispecials(max(0, K - 1))
    del idx2

    stable_len = _bisp_stable_below(bisp1, bisp2)

    try:
        mismatches = []
        saturated_rows = 0
        unsaturated_rows = 0
        for n in range(K + 1):
            sat = (
                n <= trusted
                and prof1[n] == prof2[n]
                and prof1[n + 1] == prof2[n + 1]
                and n <= stable_len
            )
            if not sat:
                unsaturated_rows += 1
                continue
            saturated_rows += 1
            step_hat = prof1[n + 1] - prof1[n]
            if step_hat != bispecial.complexity_step(fam, n):
                mismatches.append(f"step mismatch at n={n}")
            if prof1[n] != bispecial.complexity(fam, n):
                mismatches.append(f"complexity mismatch at n={n}")
            if not identity1[n].equal:
                mismatches.append(f"bispecial-sum identity fails at n={n}")

        match_limit = min(trusted, stable_len, K) - 2
        found: dict = {}
        if match_limit >= 0:
            theory = bispecial.theory_signed_bispecials(fam, match_limit)
            found = {w: t for (w, t) in signed1 if len(w) <= match_limit}
            for w, t in found.items():
                expect = theory.get(w)
                if expect is None:
                    mismatches.append(f"oracle bispecial {w[:40]!r} not predicted")
                elif expect is not t:
                    mismatches.append(f"type mismatch for {w[:40]!r}")
            for w in theory:
                if w not in found:
                    mismatches.append(
                        f"predicted bispecial of length {len(w)} not found"
                    )
    except InvalidFamilyError as exc:
        return SKIPPED, {"note": f"symbolic side not validated: {exc}"}

    details = {
        "prefix": L,
        "max_n": K,
        "trusted_length": trusted,
        "saturated_rows": saturated_rows,
        "unsaturated_rows": unsaturated_rows,
        "signed_bispecials_matched": len(found),
        "mismatches": mismatches[:20],
    }
    if mismatches:
        return FAIL, details
    return (PASS if unsaturated_rows == 0 else UNSATURATED), details


CHECKS: list[tuple[str, str, Callable]] = [
    (
        "hypothesis",
        "parameter inequalities behind the interleaving argument hold at every "
        "level: n[i-1]l[i]+l[i-1] < l[i-1]m[i], m[i]+2l[i]+1 < n[i], "
        "l[i-1]m[i]+2n[i-1]l[i] < n[i-1](n[i]-1); m/l and n/m ratios grow",
        _check_hypothesis,
    ),
    (
        "frequency_floor",
        "0-density along the u-tower plus 1-density along the v-tower is >= 3/2 "
        "at every rank",
        _check_frequency_floor,
    ),
    (
        "product_bounds",
        "tower letter densities dominate the telescoping product lower bounds",
        _check_product_bounds,
    ),
    (
        "closed_form",
        "the built-in family's density product telescopes to "
        "(3/4) / (1 - 2^-(2^(i+1)))",
        _check_closed_form,
    ),
    (
        "ordering_chain",
        "Parikh vectors of the bispecial families interleave: "
        "D[i-1] < B[i] < C[i] < A[i+1] < D[i]",
        _check_ordering_chain,
    ),
    (
        "length_chain",
        "bispecial lengths interleave: |b_i| < |c_i| < |a_(i+1)| < |d_i| < |b_(i+1)|",
        _check_length_chain,
    ),
    (
        "complexity_bound",
        "factor complexity satisfies p(n) <= 3n + 1 on log-uniform samples",
        _check_complexity_bound,
    ),
    (
        "liminf",
        "p(|b_(i+1)|)/|b_(i+1)| <= 2 + 1/|b_(i+1)| + 1/l_(i+1), strictly "
        "decreasing toward 2",
        _check_liminf,
    ),
    (
        "affine_monotone",
        "the padded-image map preserves the Parikh order V < W",
        _check_affine_monotone,
    ),
    (
        "affine_scaling",
        "the padded-image map preserves W > lambda (V + (1,1)) for lambda > 0",
        _check_affine_scaling,
    ),
    (
        "sync_roundtrip",
        "decomposing a padded image recovers (1^l, v, 0^m 1^l) uniquely via the "
        "'10' border scan",
        _check_sync_roundtrip,
    ),
    (
        "uniform_recurrence",
        "every window of the recurrence-bound length contains the tower prefix "
        "word, and the forbidden 1-run never occurs",
        _check_uniform_recurrence,
    ),
    (
        "oracle_equivalence",
        "brute-force factor statistics of a generated prefix match the symbolic "
        "predictions on saturated lengths",
        _check_oracle_equivalence,
    ),
]

CHECK_NAMES = [name for name, _, _ in CHECKS]


def run_suite(
    fam: ParameterFamily,
    params: SuiteParams = SuiteParams(),
    names: Optional[list[str]] = None,
    workers: int = 4,
) -> SuiteResult:
    """Run the named checks (all by default) in a worker pool; result order
    follows the registry regardless of completion order."""
    selected = []
    for name, statement, fn in CHECKS:
        if names is None or name in names:
            selected.append((name, statement, fn))
    if names is not None:
        unknown = set(names) - {name for name, _, _ in CHECKS}
        if unknown:
            raise ValueError(f"unknown checks: {sorted(unknown)}")

    def run_one(entry):
        name, statement, fn = entry
        try:
            status, details = fn(fam, params)
        except InvalidFamilyError as exc:
            status, details = SKIPPED, {"note": f"hypothesis gate: {exc}"}
        except UrwordError as exc:
            status, details = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
        return CheckResult(name=name, status=status, statement=statement, details=details)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = tuple(pool.map(run_one, selected))
    return SuiteResult(
        family=fam.describe(),
        params=asdict(params),
        results=results,
    )
