"""Deterministic report rendering: CSV tables and the suite JSON document.

Identical inputs produce byte-identical output: keys are sorted, line
terminators fixed, no timestamps, rationals serialized as decimal
numerator/denominator strings (the float field is a convenience only).
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Optional

from . import bispecial, families, frequency, oracle
from .errors import FamilyDepthError, SizeLimitError
from .families import ParameterFamily
from .suite import SuiteResult, trusted_saturation_bound


def stable_json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def suite_json(result: SuiteResult) -> dict:
    counts = {"pass": 0, "fail": 0, "unsaturated": 0, "skipped": 0}
    for r in result.results:
        counts[r.status] += 1
    return {
        "family": result.family,
        "params": result.params,
        "checks": [
            {
                "name": r.name,
                "status": r.status,
                "statement": r.statement,
                "details": r.details,
            }
            for r in result.results
        ],
        "counts": counts,
        "ok": result.ok,
    }


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _frac_cols(x: Optional[Fraction]) -> list[str]:
    if x is None:
        return ["", ""]
    return [str(x.numerator), str(x.denominator)]


def complexity_report(
    fam: ParameterFamily,
    n_max: int,
    oracle_prefix: Optional[int] = None,
) -> str:
    """Rows n, s(n), p(n); with an oracle prefix also the measured values and
    a saturation flag from the two-prefix protocol."""
    header = ["n", "step", "complexity", "step_hat", "complexity_hat", "saturated"]
    prof1 = prof2 = None
    trusted = -1
    if oracle_prefix is not None:
        prefix1 = families.prefix_stream(fam, 0, oracle_prefix)
        prefix2 = families.prefix_stream(fam, 0, 2 * oracle_prefix)
        idx1 = oracle.build_index(prefix1, n_max + 1)
        prof1 = [idx1.complexity_hat(n) for n in range(n_max + 2)]
        del idx1
        idx2 = oracle.build_index(prefix2, n_max + 1)
        prof2 = [idx2.complexity_hat(n) for n in range(n_max + 2)]
        del idx2
        trusted = trusted_saturation_bound(fam, oracle_prefix, n_max)
    rows = []
    for n in range(n_max + 1):
        row = [
            str(n),
            str(bispecial.complexity_step(fam, n)),
            str(bispecial.complexity(fam, n)),
        ]
        if prof1 is None:
            row += ["", "", ""]
        else:
            sat = (
                n <= trusted
                and prof1[n] == prof2[n]
                and prof1[n + 1] == prof2[n + 1]
            )
            row += [
                str(prof1[n + 1] - prof1[n]),
                str(prof1[n]),
                "1" if sat else "0",
            ]
        rows.append(row)
    return _csv_text(header, rows)


def bispecial_report(fam: ParameterFamily, rank_max: int) -> str:
    """Breakpoint table: the interval endpoints per rank, in decimal."""
    header = ["rank", "len_b", "len_c", "len_a_next", "len_d"]
    rows = []
    for i in range(rank_max + 1):
        row = bispecial.breakpoint_row(fam, i)
        rows.append(
            [str(i), str(row.len_b), str(row.len_c), str(row.len_a_next), str(row.len_d)]
        )
    return _csv_text(header, rows)


def frequency_report(fam: ParameterFamily, rank_max: int) -> str:
    header = [
        "rank",
        "ratio_u0_num",
        "ratio_u0_den",
        "ratio_v1_num",
        "ratio_v1_den",
        "bound_u0_num",
        "bound_u0_den",
        "bound_v1_num",
        "bound_v1_den",
        "excess_num",
        "excess_den",
        "excess_ge_3_2",
    ]
    rows = []
    for i in range(rank_max + 1):
        rep = frequency.excess_check(fam, i)
        rows.append(
            [str(i)]
            + _frac_cols(rep.ratio_u0)
            + _frac_cols(rep.ratio_v1)
            + _frac_cols(rep.bound_u0)
            + _frac_cols(rep.bound_v1)
            + _frac_cols(rep.excess)
            + ["1" if rep.excess >= Fraction(3, 2) else "0"]
        )
    return _csv_text(header, rows)


def recurrence_report(
    fam: ParameterFamily, rank_max: int, check_budget: int = 1 << 22
) -> str:
    """Window bounds per rank; ranks cheap enough are verified on a real
    prefix (every window of the bound length contains the rank word)."""
    header = ["rank", "window_bound", "checked_prefix", "windows_ok"]
    rows = []
    for i in range(rank_max + 1):
        bound = families.recurrence_bound(fam, i).value
        checked = ""
        ok = ""
        if 10 * bound <= check_budget:
            length = 10 * bound
            try:
                prefix = families.prefix_stream(fam, 0, length)
                pattern = families.generate_word(fam, 0, i, "u")
                checked = str(length)
                ok = (
                    "1"
                    if oracle.every_window_contains(prefix, pattern, bound)
                    else "0"
                )
            except (FamilyDepthError, SizeLimitError):
                checked, ok = "", ""
        rows.append([str(i), str(bound), checked, ok])
    return _csv_text(header, rows)


REPORT_KINDS = ("complexity", "bispecial", "frequency", "recurrence")


def render_report(fam: ParameterFamily, kind: str, **kwargs) -> str:
    if kind == "complexity":
        return complexity_report(
            fam, kwargs.get("n_max", 200), kwargs.get("oracle_prefix")
        )
    if kind == "bispecial":
        return bispecial_report(fam, kwargs.get("rank_max", 8))
    if kind == "frequency":
        return frequency_report(fam, kwargs.get("rank_max", 8))
    if kind == "recurrence":
        return recurrence_report(
            fam, kwargs.get("rank_max", 3), kwargs.get("check_budget", 1 << 22)
        )
    raise ValueError(f"unknown report kind {kind!r}")
