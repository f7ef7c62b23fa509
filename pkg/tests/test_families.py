import json
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from urword import (
    CustomFamily,
    FamilyConfigError,
    FamilyDepthError,
    Parikh,
    SizeLimitError,
    Word,
    affine_image_parikh,
    bispecial_image,
    generate_word,
    hypothesis_check,
    load_family_file,
    parikh,
    parikh_uv,
    parse_family,
    prefix_stream,
    recurrence_bound,
    substitution_at,
    word_length,
)


def test_paper_parameters(paper):
    assert paper.level(0) == (64, 256, 1024)
    assert paper.level(1) == (256, 65536, 1048576)


def test_sigma_examples(paper, mini3):
    s0 = substitution_at(paper, 0)
    assert s0.image0 == Word.zeros(256) + Word.ones(64)
    assert s0.image1 == Word.zeros(256) + Word.ones(1024)
    assert len(substitution_at(paper, 1).image0) == 65792
    custom = CustomFamily(l=[2], m=[8], n=[32])
    assert substitution_at(custom, 0).image1 == Word.zeros(8) + Word.ones(32)
    assert mini3.level(1) == (3, 64, 2048)


def test_generate_word_examples(paper):
    u1 = generate_word(paper, 0, 1, "u")
    assert u1 == Word.zeros(256) + Word.ones(64)
    assert len(u1) == 320
    assert generate_word(paper, 0, 0, "v") == Word.from01("1")
    assert generate_word(paper, 0, 0, "u") == Word.from01("0")


def test_generate_word_rank2_length_and_parikh(paper):
    u2 = generate_word(paper, 0, 2, "u")
    assert len(u2) == 21_299_200
    # materialized counts agree with the symbolic recurrence
    assert parikh(u2) == parikh_uv(paper, 0, 2)[0]
    assert parikh_uv(paper, 0, 2)[0] == Parikh(16842752, 4456448)


def test_parikh_uv_examples(paper):
    u1, v1 = parikh_uv(paper, 0, 1)
    assert (u1, v1) == (Parikh(256, 64), Parikh(256, 1024))
    u0, v0 = parikh_uv(paper, 0, 0)
    assert (u0, v0) == (Parikh(1, 0), Parikh(0, 1))
    u0h, v0h = parikh_uv(paper, 3, 0)
    assert (u0h, v0h) == (Parikh(1, 0), Parikh(0, 1))


def test_tower_recurrence_against_materialized(tiny):
    # independent oracle: the words rebuilt by plain string operations
    us, vs = "0", "1"
    for i in range(3):
        l_, m_, n_ = tiny.level(i)
        us, vs = us * m_ + vs * l_, us * m_ + vs * n_
        assert generate_word(tiny, 0, i + 1, "u").to01() == us
        assert generate_word(tiny, 0, i + 1, "v").to01() == vs


def test_u_is_proper_prefix_of_v(tiny, paper):
    for fam, top in ((tiny, 3), (paper, 1)):
        for i in range(1, top + 1):
            u = generate_word(fam, 0, i, "u")
            v = generate_word(fam, 0, i, "v")
            assert len(u) < len(v)
            assert v.startswith(u)
        for i in range(top + 2):
            assert word_length(fam, 0, i, "u") <= word_length(fam, 0, i, "v")


def test_prefix_stream_examples(paper):
    assert prefix_stream(paper, 0, 5).to01() == "00000"
    assert prefix_stream(paper, 0, 0).to01() == ""
    assert prefix_stream(paper, 0, 320) == generate_word(paper, 0, 1, "u")


def test_prefix_stream_compatibility(tiny):
    for i in range(4):
        ui = generate_word(tiny, 0, i, "u")
        assert prefix_stream(tiny, 0, len(ui)) == ui
    full = generate_word(tiny, 0, 3, "u")
    for cut in (1, 7, 100, 2531, 60000):
        assert prefix_stream(tiny, 0, cut) == full[:cut]


def test_prefix_stream_at_higher_level(tiny):
    w = prefix_stream(tiny, 1, 500)
    assert w == generate_word(tiny, 1, 2, "u")[:500]


def test_prefix_stream_does_not_materialize_far_suffix(paper):
    # 30M letters reach past u_2 but only scratch the first v_2 block
    w = prefix_stream(paper, 0, 30_000_000)
    assert len(w) == 30_000_000
    u2 = generate_word(paper, 0, 2, "u")
    assert w[: len(u2)] == u2
    rest = 30_000_000 - len(u2)
    assert w[len(u2) :] == u2[:rest]


def test_bispecial_image_examples(paper, tiny):
    img = bispecial_image(paper, 0, Word.from01(""))
    assert img == Word.ones(64) + Word.zeros(256) + Word.ones(64)
    assert affine_image_parikh(paper, 0, Parikh(0, 0)) == Parikh(256, 128)
    # padding the 1-block of the next level gives the first b-word
    h = 0
    l1 = tiny.l(h + 1)
    got = bispecial_image(tiny, h, Word.ones(l1))
    l_, m_, n_ = tiny.level(h)
    expected = (
        Word.ones(l_)
        + (Word.zeros(m_) + Word.ones(n_)).repeat(l1)
        + Word.zeros(m_)
        + Word.ones(l_)
    )
    assert got == expected


def test_bispecial_image_parikh_matches_affine(tiny):
    rng = random.Random(6)
    for _ in range(100):
        h = rng.randint(0, 2)
        v = Word.from01("".join(rng.choice("01") for _ in range(rng.randint(0, 40))))
        assert parikh(bispecial_image(tiny, h, v)) == affine_image_parikh(
            tiny, h, parikh(v)
        )


def test_hypothesis_paper_all_levels(paper):
    for i in range(13):
        rep = hypothesis_check(paper, i)
        assert rep.structural_ok and rep.ratio_growth_ok and rep.vector_lemma_ok


def test_hypothesis_mini3_level1_values(mini3):
    rep = hypothesis_check(mini3, 1)
    assert rep.vector_lemma_ok
    # 98 < 128, 71 < 2048, 320 < 32 * 2047
    assert 32 * 3 + 2 == 98 < 2 * 64 == 128
    assert 64 + 2 * 3 + 1 == 71 < 2048
    assert 2 * 64 + 2 * 32 * 3 == 320 < 32 * 2047
    assert rep.min_growth_factor == min(
        Fraction(64 * 2, 3 * 8), Fraction(2048 * 8, 64 * 32)
    )


def test_hypothesis_degenerate_m2_reported_not_raised():
    fam = CustomFamily(l=[2, 3, 5], m=[8, 64, 64], n=[32, 2048, 2**20], validate=False)
    rep = hypothesis_check(fam, 2)
    assert not rep.vector_lemma_ok  # 2048*5 + 3 >= 3*64
    assert not rep.structural_ok


def test_hypothesis_level0(mini3):
    rep = hypothesis_check(mini3, 0)
    assert rep.structural_ok and rep.vector_lemma_ok
    assert rep.min_growth_factor is None


def test_recurrence_bound_examples(paper, mini3):
    assert recurrence_bound(paper, 0).value == 1025
    assert recurrence_bound(paper, 1).value == 1280 * (2**20 + 2)
    assert recurrence_bound(mini3, 0).value == 33


def test_recurrence_bound_regression_matches_manual(mini3):
    # push the level-2 window down by hand
    n2 = 2**20
    manual = n2 + 1
    manual = (64 + 2048) * (manual + 1)
    manual = (8 + 32) * (manual + 1)
    assert recurrence_bound(mini3, 2).value == manual


def test_family_parsing_and_files(tmp_path):
    assert parse_family("paper").kind == "paper_star"
    assert parse_family({"kind": "paper_star"}).kind == "paper_star"
    fam = parse_family({"kind": "custom", "l": [2], "m": [8], "n": [32]})
    assert fam.level(0) == (2, 8, 32)
    path = tmp_path / "fam.json"
    path.write_text(json.dumps({"kind": "custom", "l": [2, 3], "m": [8, 64], "n": [32, 2048]}))
    loaded = load_family_file(path)
    assert loaded.level(1) == (3, 64, 2048)
    with pytest.raises(FamilyConfigError):
        parse_family({"kind": "nope"})
    with pytest.raises(FamilyConfigError):
        parse_family({"kind": "custom", "l": [2]})
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(FamilyConfigError):
        load_family_file(bad)


def test_invalid_custom_family_names_level():
    with pytest.raises(FamilyConfigError) as err:
        CustomFamily(l=[2, 64], m=[8, 32], n=[32, 2048])
    assert "level 1" in str(err.value)
    # but construction is allowed when validation is off
    fam = CustomFamily(l=[2, 64], m=[8, 32], n=[32, 2048], validate=False)
    assert not fam.level_valid(1)


def test_family_depth_error(mini3):
    with pytest.raises(FamilyDepthError):
        mini3.level(3)
    with pytest.raises(FamilyDepthError):
        parikh_uv(mini3, 0, 4)


def test_generate_word_cap_error(paper):
    with pytest.raises(SizeLimitError) as err:
        generate_word(paper, 0, 3, "u")
    # the error carries the exact predicted length
    assert err.value.predicted == word_length(paper, 0, 3, "u")


def test_parikh_uv_concurrent_consistency(tiny):
    def job(i):
        return parikh_uv(tiny, 0, i % 5)

    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(job, range(40)))
    for i, got in enumerate(results):
        assert got == parikh_uv(tiny, 0, i % 5)
