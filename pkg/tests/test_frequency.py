from fractions import Fraction

import pytest

from urword import (
    closed_form_check,
    excess_check,
    obstruction_report,
    paper_density_product,
    product_bounds,
    ratios_exact,
)
from urword.frequency import length_ratio_bound_ok


def test_ratios_examples(paper):
    assert ratios_exact(paper, 0) == (Fraction(1), Fraction(1))
    assert ratios_exact(paper, 1) == (Fraction(4, 5), Fraction(4, 5))
    r0, _ = ratios_exact(paper, 2)
    assert r0 == Fraction(257, 325)


def test_product_bounds_examples(paper):
    assert product_bounds(paper, 1) == (Fraction(4, 5), Fraction(4, 5))
    assert product_bounds(paper, 2) == (Fraction(64, 85), Fraction(64, 85))
    with pytest.raises(ValueError):
        product_bounds(paper, 0)


def test_bounds_hold_componentwise(paper):
    for i in range(1, 13):
        r0, r1 = ratios_exact(paper, i)
        b0, b1 = product_bounds(paper, i)
        assert r0 >= b0
        assert r1 >= b1


def test_bounds_hold_for_custom_families(tiny, mini3):
    for fam in (tiny, mini3):
        top = fam.depth
        for i in range(1, top + 1):
            r0, r1 = ratios_exact(fam, i)
            b0, b1 = product_bounds(fam, i)
            assert r0 >= b0
            assert r1 >= b1


def test_density_product_values():
    assert paper_density_product(0) == 1
    assert paper_density_product(1) == Fraction(4, 5)
    assert paper_density_product(2) == Fraction(4, 5) * Fraction(16, 17)


def test_closed_form_conventions():
    # the displayed product convention validates the telescoping identity...
    assert all(closed_form_check(i, "displayed") for i in range(11))
    # ...while shifting the product by one index breaks it at every rank
    assert not any(closed_form_check(i, "shifted") for i in range(11))
    assert paper_density_product(3) == Fraction(3, 4) / (1 - Fraction(1, 2**16))
    with pytest.raises(ValueError):
        closed_form_check(1, "other")


def test_excess_examples(paper):
    rep0 = excess_check(paper, 0)
    assert rep0.excess == 2
    assert rep0.bound_u0 is None and rep0.bound_v1 is None
    rep1 = excess_check(paper, 1)
    assert rep1.excess == Fraction(8, 5)
    assert rep1.density_product == Fraction(4, 5)
    for i in range(13):
        assert excess_check(paper, i).excess >= Fraction(3, 2)


def test_excess_reported_not_asserted_for_custom(tiny):
    # this family's excess drops below 3/2; the report must still come back
    rep = excess_check(tiny, 1)
    assert rep.excess < Fraction(3, 2)
    assert rep.density_product is None


def test_length_ratio_bound(paper, tiny):
    for fam, top in ((paper, 6), (tiny, 6)):
        for i in range(1, top + 1):
            assert length_ratio_bound_ok(fam, i)


def test_obstruction_report_paper(paper):
    rep = obstruction_report(paper, 2, search_budget=1 << 25)
    assert rep.all_gaps_ge_half
    assert rep.rows[1].gap == Fraction(3, 5)
    assert rep.rows[0].v_occurrence == "searched"
    assert rep.rows[1].v_occurrence == "searched"
    # rank 2 needs a prefix beyond any desk budget
    assert rep.rows[2].v_occurrence == "by_construction"


def test_obstruction_report_tiny_searches_through_rank2(tiny):
    rep = obstruction_report(tiny, 2)
    assert [r.v_occurrence for r in rep.rows] == ["searched"] * 3
    assert rep.min_gap == min(r.excess for r in rep.rows) - 1
