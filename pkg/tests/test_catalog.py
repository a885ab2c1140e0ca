import json

import pytest

from picard_ranges.albert import CHAR_P, CHAR_ZERO, CharContext, type_I, type_III, type_IV
from picard_ranges.catalog import (
    Catalog,
    CatalogEntry,
    blocks_for_dim,
    builtin,
    from_obj,
    load,
)
from picard_ranges.decomp import SUPERSINGULAR_TYPE

SPLIT = CharContext(p_split_policy="split")
NONSPLIT = CharContext(p_split_policy="nonsplit")


def test_entry_validation():
    with pytest.raises(ValueError):
        CatalogEntry(0, type_I(1))
    with pytest.raises(ValueError):
        CatalogEntry(1, type_I(1), "many")
    with pytest.raises(ValueError):
        CatalogEntry(1, SUPERSINGULAR_TYPE, "unbounded")
    with pytest.raises(ValueError):
        Catalog((CatalogEntry(1, type_I(1)), CatalogEntry(1, type_I(1))))


def test_builtin_paper_contents():
    cat = builtin("paper", 4, CHAR_P)
    keys = cat.entry_keys()
    assert (1, type_IV(1, 1)) in keys
    assert (1, SUPERSINGULAR_TYPE) in keys
    assert all((n, type_I(1)) in keys for n in range(1, 5))
    conditional = {e.simple_dim for e in cat.entries if e.condition == "p_split"}
    assert conditional == {2, 3, 4}
    cm = next(e for e in cat.entries if e.albert == type_IV(1, 1))
    assert cm.class_count == "unbounded"


def test_builtin_upper_contents():
    cat = builtin("upper", 4, CHAR_P)
    assert (4, type_IV(2, 2)) in cat.entry_keys()
    assert all(e.condition == "always" for e in cat.entries)
    ss = [e for e in cat.entries if e.is_supersingular]
    assert len(ss) == 1 and ss[0].class_count == "one"


def test_builtin_conservative_is_unconditional():
    cat = builtin("conservative", 5, CHAR_P)
    assert all(e.condition == "always" for e in cat.entries)
    assert not any(e.albert.kind == "IV" and e.simple_dim > 1 for e in cat.entries)


def test_builtin_rejects_bad_mode():
    with pytest.raises(ValueError):
        builtin("best", 3, CHAR_P)


@pytest.mark.parametrize("g_max", range(1, 13))
def test_mode_inclusion_chain(g_max):
    conservative = builtin("conservative", g_max, CHAR_P).entry_keys()
    paper = builtin("paper", g_max, CHAR_P).entry_keys()
    upper = builtin("upper", g_max, CHAR_P).entry_keys()
    assert conservative <= paper <= upper


@pytest.mark.parametrize("mode", ["upper", "paper", "conservative"])
@pytest.mark.parametrize("ctx", [CHAR_P, CHAR_ZERO], ids=["char_p", "char_0"])
def test_builtin_entries_pass_restrictions(mode, ctx):
    builtin(mode, 8, ctx).validate(ctx)


def test_char_zero_catalogs_have_no_supersingular_entry():
    for mode in ("upper", "paper", "conservative"):
        assert not builtin(mode, 6, CHAR_ZERO).has_supersingular()


def test_blocks_for_dim_paper_dimension_two():
    cat = builtin("paper", 4, CHAR_P)
    got = {str(b) for b, _ in blocks_for_dim(cat, 2, CHAR_P)}
    assert {"ord^2", "cm^2", "ss^2", "[I(1); dim=2]"} <= got
    assert "[IV(1,2); dim=2]" not in got  # conditional, policy unknown


def test_blocks_for_dim_split_policy_only_adds():
    cat = builtin("paper", 4, CHAR_P)
    unknown = {str(b) for b, _ in blocks_for_dim(cat, 2, CHAR_P)}
    split = {str(b) for b, _ in blocks_for_dim(cat, 2, SPLIT)}
    nonsplit = {str(b) for b, _ in blocks_for_dim(cat, 2, NONSPLIT)}
    assert unknown <= split
    assert "[IV(1,2); dim=2]" in split
    assert nonsplit == unknown
    upper_view = {str(b) for b, _ in blocks_for_dim(cat, 2, CHAR_P, include_uncertain=True)}
    assert "[IV(1,2); dim=2]" in upper_view


def test_blocks_for_dim_always_offers_supersingular():
    for mode in ("upper", "paper", "conservative"):
        cat = builtin(mode, 3, CHAR_P)
        assert "ss" in {str(b) for b, _ in blocks_for_dim(cat, 1, CHAR_P)}


def test_load_rejects_restricted_entry(tmp_path):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps([{"dim": 3, "type": "IV(2,2)", "classes": "one"}]))
    with pytest.raises(ValueError, match="divisibility"):
        load(str(path), CHAR_P)


def test_load_round_trip(tmp_path):
    entries = [
        {"dim": 2, "type": "II(1)", "classes": "one", "condition": "unknown"},
        {"dim": 1, "type": "I(1)", "classes": "unbounded"},
    ]
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(entries))
    cat = load(str(path), CHAR_P)
    assert (2, type_III(1)) not in cat.entry_keys()
    assert {(e.simple_dim, str(e.albert)) for e in cat.entries} == {(2, "II(1)"), (1, "I(1)")}
    q = next(e for e in cat.entries if e.simple_dim == 2)
    assert q.condition == "unknown"
    assert not any(b for b, _ in blocks_for_dim(cat, 2, CHAR_P) if str(b) == "[II(1); dim=2]")
    assert any(str(b) == "[II(1); dim=2]"
               for b, _ in blocks_for_dim(cat, 2, CHAR_P, include_uncertain=True))


def test_from_obj_error_reporting():
    with pytest.raises(ValueError, match="JSON array"):
        from_obj({"dim": 1})
    with pytest.raises(ValueError, match="entry #0"):
        from_obj([{"type": "I(1)"}])
    with pytest.raises(ValueError, match="entry #1"):
        from_obj([{"dim": 1, "type": "I(1)"}, {"dim": 1, "type": "X(1)"}])
