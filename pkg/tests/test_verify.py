import io
import json

import pytest

from picard_ranges.cli import run
from picard_ranges.decomp import parse
from picard_ranges.verify import load_allowlist, load_fixtures, verify

# (fixture, kind, rho) -> direction expected from comparing the computed
# tables with the published ones
EXPECTED_DIFFS = {
    ("R_4", "star", 8): "computed-star",
    ("R_5", "value", 13): "computed-only",
    ("R_5", "value", 16): "computed-only",
    ("R_5", "value", 18): "computed-only",
    ("R_5", "value", 19): "computed-only",
    ("R_5", "star", 12): "computed-star",
    ("R_5", "star", 17): "computed-star",
    ("R_6", "star", 22): "published-star",
    ("R_6", "star", 26): "computed-star",
}


def test_fixtures_well_formed():
    fixtures = load_fixtures()
    assert [f.label for f in fixtures] == ["R_2", "R_3", "R_4", "R_5", "R_6"]
    for f in fixtures:
        assert list(f.values) == sorted(set(f.values))
        assert set(f.star) <= set(f.values)


def test_verify_report_matches_expected_diffs():
    report = verify()
    got = {(d.label, d.kind, d.rho): d.direction for d in report.diffs}
    assert got == EXPECTED_DIFFS
    for d in report.diffs:
        assert d.documented, d
        assert d.witness is not None
        assert d.witness_ok
        w = parse(d.witness)
        assert w.rho() == d.rho
    by_label = {f.label: f for f in report.fixtures}
    assert by_label["R_2"].values_match and by_label["R_2"].star_match
    assert by_label["R_3"].values_match and by_label["R_3"].star_match
    assert by_label["R_4"].values_match and not by_label["R_4"].star_match
    assert not by_label["R_5"].values_match
    assert by_label["R_6"].values_match and not by_label["R_6"].star_match


def test_verify_never_adopts_either_side():
    # the published-star entry at 22 keeps its supersingular witness, showing
    # the enumeration only reaches it through the supersingular block
    report = verify()
    diff = next(d for d in report.diffs if (d.label, d.kind, d.rho) == ("R_6", "star", 22))
    assert parse(diff.witness).ss_index() > 0
    diff = next(d for d in report.diffs if (d.label, d.kind, d.rho) == ("R_6", "star", 26))
    assert parse(diff.witness).ss_index() == 0


def test_allowlist_covers_known_errata():
    allow = load_allowlist()
    assert {("R_5", "value", 13), ("R_4", "star", 8), ("R_5", "star", 12),
            ("R_5", "star", 17), ("R_6", "star", 22), ("R_6", "star", 26)} <= allow


def test_verify_cli_exit_code_and_idempotence():
    out1, out2 = io.StringIO(), io.StringIO()
    assert run(["verify"], out1, out1) == 4
    assert run(["verify"], out2, out2) == 4
    assert out1.getvalue() == out2.getvalue()
    assert "VERIFY: 9 difference(s), 9 documented" in out1.getvalue()


def test_verify_custom_fixture_file(tmp_path):
    path = tmp_path / "fx.json"
    path.write_text(json.dumps({"fixtures": [
        {"label": "R_2", "dimension": 2, "source": "test",
         "values": [1, 2, 3, 4, 6], "star": [1, 2, 3, 4]},
    ]}))
    report = verify(str(path))
    assert report.ok
    out = io.StringIO()
    assert run(["verify", "--fixtures", str(path)], out, out) == 0
    assert "R_2 values: PASS" in out.getvalue()


def test_verify_fixture_env_override(tmp_path, monkeypatch):
    path = tmp_path / "fx.json"
    path.write_text(json.dumps({"fixtures": [
        {"label": "R_3", "dimension": 3, "source": "test",
         "values": [1, 2, 3, 4, 5, 6, 7, 9, 15], "star": [1, 2, 3, 4, 5, 6, 9]},
    ]}))
    monkeypatch.setenv("PICARD_FIXTURES", str(path))
    out = io.StringIO()
    assert run(["verify"], out, out) == 0


def test_verify_rejects_malformed_fixture(tmp_path):
    path = tmp_path / "fx.json"
    path.write_text(json.dumps({"fixtures": [
        {"label": "bad", "dimension": 2, "values": [3, 1], "star": []},
    ]}))
    with pytest.raises(ValueError):
        verify(str(path))
