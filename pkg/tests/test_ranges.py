import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_force_max_by_length, brute_force_star, brute_force_values
from picard_ranges.albert import CHAR_P, CHAR_ZERO
from picard_ranges.decomp import parse
from picard_ranges.ranges import (
    attainable,
    attainable_by_ss_index,
    gaps,
    length_max_closed_form,
    max_by_length,
    max_picard,
    membership,
    paper_catalog,
    parity_filter,
    range_sets,
    structure_witnesses,
    translated_range,
    upper_catalog,
)

# attainable sets for the certified catalog, frozen from the recursive oracle
CERTIFIED = {
    2: ([1, 2, 3, 4, 6], [1, 2, 3, 4]),
    3: ([1, 2, 3, 4, 5, 6, 7, 9, 15], [1, 2, 3, 4, 5, 6, 9]),
    4: ([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 16, 28],
        [1, 2, 3, 4, 5, 6, 7, 8, 10, 16]),
    5: ([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 16, 17, 18, 19, 25, 29, 45],
        [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 17, 25]),
    6: (list(range(1, 23)) + [24, 26, 29, 30, 31, 32, 36, 46, 66],
        list(range(1, 22)) + [26, 36]),
}


@pytest.mark.parametrize("g", sorted(CERTIFIED))
def test_certified_sets_and_stars(g):
    values, star = CERTIFIED[g]
    result = attainable(g, paper_catalog(g, CHAR_P), CHAR_P)
    assert sorted(result.value_set()) == values
    assert sorted(result.star_set()) == star
    no_ss = attainable(g, paper_catalog(g, CHAR_P), CHAR_P, allow_ss=False)
    assert no_ss.value_set() == result.star_set()


@pytest.mark.parametrize("g", range(1, 9))
@pytest.mark.parametrize("mode", ["paper", "upper"])
def test_dp_matches_recursive_oracle(g, mode):
    cat = paper_catalog(g, CHAR_P) if mode == "paper" else upper_catalog(g, CHAR_P)
    result = attainable(g, cat, CHAR_P)
    assert result.value_set() == brute_force_values(g, cat, CHAR_P)
    assert result.star_set() == brute_force_star(g, cat, CHAR_P)


def test_char_zero_sets():
    # no supersingular block: the maximum is g^2, reached by CM powers
    r2 = attainable(2, upper_catalog(2, CHAR_ZERO), CHAR_ZERO)
    assert sorted(r2.value_set()) == [1, 2, 3, 4]
    r3 = attainable(3, upper_catalog(3, CHAR_ZERO), CHAR_ZERO)
    assert max(r3.value_set()) == 9


@pytest.mark.parametrize("g", range(2, 9))
def test_rho_bounds_and_unique_maximum(g):
    result = attainable(g, upper_catalog(g, CHAR_P), CHAR_P)
    values = result.value_set()
    assert min(values) == 1
    assert max(values) == max_picard(g)
    witnesses = structure_witnesses(g, max_picard(g), CHAR_P, mode="upper")
    assert [str(w) for w in witnesses] == [f"ss^{g}"]


@pytest.mark.parametrize("g", range(1, 9))
def test_single_block_star_values_bounded_by_g_squared(g):
    for s, vals in attainable_by_ss_index(g, upper_catalog(g, CHAR_P), CHAR_P).items():
        if s == 0:
            assert all(v <= g * g for v in vals)
        else:
            assert all(v <= 2 * g * g - g for v in vals)


@pytest.mark.parametrize("g", range(1, 13))
def test_witnesses_are_valid(g):
    cmp = range_sets(g, CHAR_P)
    for result in (cmp.lower, cmp.upper, cmp.star_lower, cmp.star_upper):
        for v in result.values:
            assert v.witness is not None
            assert v.witness.rho() == v.rho
            assert v.witness.dim() == g
            assert parse(str(v.witness)) == v.witness
            if not v.star:
                assert v.witness.ss_index() > 0
    assert cmp.lower.value_set() <= cmp.upper.value_set()
    assert cmp.star_lower.value_set() <= cmp.lower.value_set()
    assert cmp.star_upper.value_set() <= cmp.upper.value_set()


def test_membership_examples():
    m = membership(6, 2, CHAR_P)
    assert m.status == "certified" and str(m.witness) == "ss^2"
    assert membership(5, 2, CHAR_P).status == "refuted"
    m = membership(13, 5, CHAR_P)
    assert m.status == "certified" and str(m.witness) == "cm^3 * cm^2"
    assert membership(8, 3, CHAR_P).status == "refuted"
    for rho in range(11, 16):
        assert membership(rho, 4, CHAR_P).status != "certified"
    with pytest.raises(ValueError):
        membership(0, 3, CHAR_P)
    with pytest.raises(ValueError):
        membership(16, 3, CHAR_P)


def test_undetermined_status_exists():
    # a value passing the divisibility screen without a certified construction:
    # the square of a dimension-2 factor of type III(2)
    assert membership(12, 4, CHAR_P).status == "undetermined"
    up = attainable(4, upper_catalog(4, CHAR_P), CHAR_P)
    assert str(up.witness_for(12)) == "[III(2); dim=2]^2"


def test_gap_examples():
    assert gaps(2, CHAR_P) == [(5, 5)]
    assert gaps(3, CHAR_P) == [(8, 8), (10, 14)]
    assert gaps(4, CHAR_P) == [(11, 11), (13, 15), (17, 27)]
    assert gaps(5, CHAR_P) == [(14, 14), (20, 24), (26, 28), (30, 44)]


@pytest.mark.parametrize("g", range(1, 9))
def test_max_by_length_matches_closed_form_and_oracle(g):
    for r in range(1, g + 1):
        res = max_by_length(r, g, CHAR_P)
        assert res.matches, (r, g, res)
        assert res.enumerated == brute_force_max_by_length(r, g, upper_catalog(g, CHAR_P), CHAR_P)
    with pytest.raises(ValueError):
        max_by_length(g + 1, g, CHAR_P)


def test_max_by_length_closed_form_examples():
    assert length_max_closed_form(1, 7) == max_picard(7)
    assert length_max_closed_form(7, 7) == 7
    assert max_by_length(2, 6, CHAR_P).enumerated == 46


@pytest.mark.parametrize("g", range(2, 31))
def test_length_maxima_strictly_decreasing_in_length(g):
    chain = [length_max_closed_form(r, g) for r in range(1, g + 1)]
    assert all(a > b for a, b in zip(chain, chain[1:]))


def test_structure_witness_examples():
    assert [str(w) for w in structure_witnesses(2, 6, CHAR_P)] == ["ss^2"]
    second = structure_witnesses(8, 2 * 49 - 7 + 1, CHAR_P)
    assert {str(w) for w in second} == {"ss^7 * ord", "ss^7 * cm"}
    third = structure_witnesses(8, 2 * 36 - 6 + 4, CHAR_P)
    assert [str(w) for w in third] == ["ss^6 * cm^2"]


def test_structure_witnesses_against_dp():
    for g in range(1, 7):
        cat = paper_catalog(g, CHAR_P)
        values = attainable(g, cat, CHAR_P).value_set()
        for rho in range(1, max_picard(g) + 1):
            ws = structure_witnesses(g, rho, CHAR_P)
            assert (len(ws) > 0) == (rho in values)
            for w in ws:
                assert w.rho() == rho and w.dim() == g


def test_translated_range_examples():
    g = 6
    assert translated_range(g, 1, CHAR_P) == {2 * 25 - 5 + 1}
    assert translated_range(6, 2, CHAR_P) == {29, 30, 31, 32}
    assert translated_range(5, 2, CHAR_P) == {16, 17, 18, 19}
    with pytest.raises(ValueError):
        translated_range(3, 4, CHAR_P)


def test_parity_filter():
    assert parity_filter(attainable(2, paper_catalog(2, CHAR_P), CHAR_P)) == [2, 4, 6]
    assert parity_filter(attainable(3, paper_catalog(3, CHAR_P), CHAR_P)) == [1, 3, 5, 7, 9, 15]
    for g in range(2, 7):
        assert max_picard(g) in parity_filter(attainable(g, paper_catalog(g, CHAR_P), CHAR_P))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 6), st.booleans())
def test_star_subset_of_full(g, use_upper):
    cat = upper_catalog(g, CHAR_P) if use_upper else paper_catalog(g, CHAR_P)
    full = attainable(g, cat, CHAR_P)
    star = attainable(g, cat, CHAR_P, allow_ss=False)
    assert star.value_set() == full.star_set() <= full.value_set()


def test_single_class_entries_used_at_most_once():
    from picard_ranges.catalog import from_obj

    cat = from_obj([
        {"dim": 2, "type": "II(1)", "classes": "one"},
        {"dim": 4, "type": "I(1)", "classes": "unbounded"},
        {"dim": 1, "type": "III(1)", "classes": "one"},
    ], CHAR_P)
    for g in range(2, 7):
        dp = attainable(g, cat, CHAR_P)
        assert dp.value_set() == brute_force_values(g, cat, CHAR_P), g
    # two power-1 copies of the single dimension-2 class would give 6 in
    # dimension 4; only the supersingular route reaches 6 in dimension 2
    assert 6 not in attainable(4, cat, CHAR_P).value_set()
    assert str(attainable(2, cat, CHAR_P).witness_for(6)) == "ss^2"


def test_single_nonsupersingular_block_bounded_by_g_squared():
    from picard_ranges.albert import admissible_types, rho_power

    for g in range(1, 9):
        for n in range(1, g + 1):
            if g % n:
                continue
            for t in admissible_types(n, CHAR_P, g * g):
                if n == 1 and t.kind == "III":
                    continue  # that block is the supersingular one
                assert rho_power(t, g // n) <= g * g, (t, n, g)
