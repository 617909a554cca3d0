from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from knotbound import bound as bd
from knotbound.diagram import iterated_sum, parse_pd_code
from knotbound.models import ModelSet

TABLE = bd.bundled_table()
NAMES = TABLE.names()


def test_bundled_table_matches_names():
    assert len(NAMES) == 84
    for n in NAMES:
        assert TABLE[n] == oracles.crossing_number_from_name(n)
    assert set(bd.bundled_diagrams()) == set(NAMES)


def test_verdict_is_exact():
    assert bd.verdict(6, 6)
    assert not bd.verdict(1, 16)  # 1 is not strictly above 16/16
    assert bd.verdict(2, 16)
    assert not bd.verdict(7, 6)
    assert not bd.verdict(0, 0)


def test_examples():
    r = bd.check_bound(["3_1", "3_1"], TABLE)
    assert (r.crossings, r.component_sum, r.verdict) == (6, 6, True)
    assert r.lower == Fraction(6, 16)
    assert r.summary() == "3_1 # 3_1: c = 6 > 3/8 = 6/16, verdict true"
    r = bd.check_bound(["3_1", "4_1", "5_2"], TABLE)
    assert (r.crossings, r.component_sum, r.verdict) == (12, 12, True)
    assert bd.check_bound(["3_1"], TABLE).crossings == 3


def test_unknown_names():
    with pytest.raises(bd.BoundError, match="unknown knot"):
        bd.check_bound(["3_1", "11a_1"], TABLE)
    table = bd.load_knot_table("name,crossing_number\n3_1,3\n12n_1,12\n")
    with pytest.raises(bd.BoundError, match="no bundled diagram"):
        bd.check_bound(["12n_1"], table)


def test_explicit_diagram():
    d = parse_pd_code(oracles.TREFOIL_PD)
    r = bd.check_bound(["3_1"], TABLE, diagram=d)
    assert r.verdict and r.faces_ok


@pytest.mark.parametrize("text,msg", [
    ("3_1,3\n3_1,3\n", "duplicate"),
    ("3_1,three\n", "not an integer"),
    ("3_1,-3\n", "out of range"),
    ("3_1,3,extra\n", "expected name"),
])
def test_table_errors(text, msg):
    with pytest.raises(bd.BoundError, match=msg):
        bd.load_knot_table(text)


def test_table_skips_comments_and_blank_lines():
    t = bd.load_knot_table("# hand made\nname,crossing_number\n\n3_1,3\n")
    assert t.entries == {"3_1": 3}
    assert t.provenance == {"3_1": "input"}


def test_fixture_override(tmp_path, monkeypatch):
    (tmp_path / "crossing_numbers.csv").write_text("name,crossing_number\n3_1,3\n")
    (tmp_path / "prime_pd.txt").write_text("3_1 " + oracles.TREFOIL_PD + "\n")
    monkeypatch.setenv(bd.FIXTURE_ENV, str(tmp_path))
    assert bd.bundled_table().names() == ["3_1"]
    assert list(bd.bundled_diagrams()) == ["3_1"]
    assert bd.check_bound(["3_1", "3_1"], bd.bundled_table()).verdict


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(NAMES), min_size=1, max_size=5))
def test_sums_satisfy_bound(names):
    r = bd.check_bound(names, TABLE)
    assert r.crossings == sum(oracles.crossing_number_from_name(n) for n in names)
    assert r.verdict and r.faces_ok
    assert r.to_dict()["lower_bound"] == f"{Fraction(r.component_sum, 16).numerator}/{Fraction(r.component_sum, 16).denominator}"


def test_budget_certificate():
    d = iterated_sum(bd.bundled_diagrams()[n] for n in ("3_1", "3_1"))
    rep = bd.budget_certificate(d, {c: ModelSet(c, ("Z2", "Z3")) for c in range(6)})
    assert rep.verdict
    assert rep.budget.limit == 96
    with pytest.raises(bd.BoundError, match="uncovered"):
        bd.budget_certificate(d, {0: ModelSet(0, ("Z1",))})
    with pytest.raises(bd.BoundError, match="outside"):
        bd.budget_certificate(d, {c: ModelSet(c, ("Z1",)) for c in range(7)})
