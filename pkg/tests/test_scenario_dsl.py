import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from genus2aut import errors, germs
from genus2aut.bounds import GroupKind
from genus2aut.errors import NonIntegral, ScenarioSyntaxError, SemanticError
from genus2aut.scenario_dsl import (
    EMPTY_WARNING, GERM_GROUPS, LOWER_BOUND_WARNING, OVERRIDE_WARNING, analyze, dump,
    emit_report, parse, report_from_json,
)

ICOSAHEDRON = "base_genus = 0\nsurface = product\ngerm group=O24 case=0 count=12\ngroup = full"
GOLDEN = Path(__file__).parent / "golden"


def verdicts(report):
    return {v.formula_name: v.bound_value for v in report.verdicts}


def test_germ_budget():
    s = parse(ICOSAHEDRON)
    r = analyze(s)
    assert (r.budget.s2_total, r.budget.s3_total) == (120, 0)
    assert r.invariants.ksq == 16
    assert 2880 in verdicts(r).values()
    assert r.warnings == []


def test_missing_base_genus():
    with pytest.raises(ScenarioSyntaxError, match="missing base_genus"):
        parse("")


def test_nonintegral_budget():
    s = parse("base_genus = 1\ns2 = 3\ns3 = 1\ngroup = cyclic")
    assert s.kind == GroupKind.CYCLIC
    with pytest.raises(NonIntegral):
        analyze(s)


def test_locally_trivial_product():
    r = analyze(parse("base_genus = 3\ns2 = 0\ns3 = 0\ngroup = full\nlocally_trivial = true"))
    assert r.invariants.ksq == 16
    assert verdicts(r) == {"aut-linear": 504 * 16}


def test_elliptic_cyclic_fallback():
    r = analyze(parse(f"base_genus = 1\ns2 = {10 * 5}\ngroup = cyclic"))
    assert r.invariants.ksq == 10
    assert "cyclic-elliptic-base" not in verdicts(r)
    assert verdicts(r)["cyclic-elliptic-small"] == 60


def test_lower_bound_warning():
    r = analyze(parse("base_genus = 0\ngerm group=Z4 case=1 k=1 count=10"))
    assert r.budget_is_lower_bound and LOWER_BOUND_WARNING in r.warnings


def test_override_warning():
    r = analyze(parse("base_genus = 1\ns2 = 20\ngerm group=Z4 case=1 count=2"))
    assert OVERRIDE_WARNING in r.warnings
    assert r.budget.s2_total == 20 and not r.budget_is_lower_bound


def test_empty_budget_warning():
    with pytest.raises(errors.Inapplicable):
        analyze(parse("base_genus = 0"))
    r = analyze(parse("base_genus = 2"))
    assert EMPTY_WARNING in r.warnings


def test_consistency_checks():
    with pytest.raises(errors.Mismatch):
        analyze(parse("base_genus = 0\nsurface = product\nbranch = 6,12\ns2 = 100"))
    with pytest.raises(errors.Mismatch):
        analyze(parse("base_genus = 2\ns2 = 10\nlocally_trivial = true"))
    with pytest.raises(errors.OddClass):
        analyze(parse("base_genus = 0\nsurface = product\nbranch = 6,11\ns2 = 110"))


def test_stabilizer_verdict_needs_orbits():
    with_orbit = analyze(parse(ICOSAHEDRON.replace("count=12", "count=12 orbit=fixed:5")))
    assert verdicts(with_orbit)["stabilizer-etale"] == 2880
    assert "stabilizer-etale" not in verdicts(analyze(parse(ICOSAHEDRON)))


@pytest.mark.parametrize("text,line,col", [
    ("base_genus = x", 1, 14),
    ("base_genus = 0\nfoo = 1", 2, 1),
    ("base_genus = 0\n  base_genus = 1", 2, 3),
    ("base_genus = 0\nsurface = cone", 2, 11),
    ("base_genus = 0\nbranch = 6", 2, 10),
    ("base_genus = 0\ngroup = solvable", 2, 9),
    ("base_genus = 0\nminimal = yes", 2, 11),
    ("base_genus = 0\ngerm group=Q8 case=1 count=1", 2, 12),
    ("base_genus = 0\ngerm group=Z5 case=1", 2, 6),
    ("base_genus = 0\ngerm group=Z5 case=1 count=0", 2, 28),
    ("base_genus = 0\ngerm group=Z5 case=1 count=1 count=2", 2, 30),
    ("base_genus = 0\ngerm group=Z5 case=1 count=1 color=red", 2, 30),
    ("base_genus = 0\ngerm group=Z5 case=1 count=1 orbit=fixed:0", 2, 42),
    ("base_genus = 0\njust words", 2, 1),
    ("base_genus =", 1, 13),
])
def test_syntax_errors_carry_position(text, line, col):
    with pytest.raises(ScenarioSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, col)


def test_comments_and_order_independence():
    a = parse("# header\ngroup = cyclic  # trailing\n\nbase_genus = 1\ns2 = 50\n")
    b = parse("base_genus = 1\ns2 = 50\ngroup = cyclic\n")
    assert a == b


@pytest.mark.parametrize("text", [
    "base_genus = 0\ngerm group=Z5 case=3 count=1",
    "base_genus = 0\ngerm group=Z6 case=1 count=1",
    "base_genus = 0\ngerm group=Z5 case=1 k=3 count=1",
    "base_genus = 0\nbranch = 6,12",
])
def test_semantic_errors(text):
    with pytest.raises(SemanticError):
        parse(text)


def test_reports_round_trip_and_are_deterministic():
    for text in (ICOSAHEDRON, "base_genus = 0\ngerm group=Z3 case=1 k=1 count=20\ngroup = abelian"):
        r = analyze(parse(text))
        data = emit_report(r, "json")
        assert report_from_json(data) == r
        assert emit_report(analyze(parse(text)), "json") == data
        assert list(json.loads(data)) == ["scenario", "budget", "invariants", "verdicts", "warnings"]


def test_fraction_values_in_json():
    r = analyze(parse("base_genus = 1\ns2 = 8\ns3 = 1\ngroup = abelian"))
    doc = json.loads(emit_report(r, "json"))
    assert doc["verdicts"][0]["value"] == "275/2"
    r = analyze(parse("base_genus = 0\ns2 = 120\ngroup = abelian"))
    doc = json.loads(emit_report(r, "json"))
    assert doc["verdicts"][0]["value"] == 300


def test_text_report_has_no_warn_lines_without_warnings():
    text = emit_report(analyze(parse(ICOSAHEDRON)), "text").decode()
    assert "WARN" not in text
    assert "2880" in text


# every germ the grammar accepts is either classifiable or rejected by parse
germ_lines = st.builds(
    lambda g, c, k, n: f"germ group={g} case={c}{'' if k is None else f' k={k}'} count={n}",
    st.sampled_from(GERM_GROUPS), st.integers(0, 6),
    st.one_of(st.none(), st.integers(1, 4)), st.integers(1, 5))


@settings(max_examples=150)
@given(st.lists(germ_lines, max_size=4))
def test_no_unclassified_germ_survives_parse(lines):
    text = "base_genus = 2\n" + "\n".join(lines)
    try:
        s = parse(text)
    except SemanticError:
        return
    for gl in s.germs:
        germs.classify(gl.germ_case())


scenarios = st.fixed_dictionaries(
    {"base_genus": st.integers(0, 5)},
    optional={
        "surface": st.sampled_from(["product", "hirzebruch:2", "hirzebruch:0"]),
        "s2": st.integers(0, 200),
        "s3": st.integers(0, 20),
        "group": st.sampled_from(["full", "abelian", "cyclic"]),
        "locally_trivial": st.sampled_from(["true", "false"]),
        "minimal": st.sampled_from(["true", "false"]),
    })


@given(scenarios, st.lists(st.sampled_from([
    "germ group=O24 case=0 count=2", "germ group=Z6 case=1 k=3 count=1 orbit=big",
    "germ group=D4 case=2 k=5 count=3 orbit=fixed:4"]), max_size=3), st.randoms())
def test_canonical_round_trip(fields, germ_text, rnd):
    lines = [f"{k} = {v}" for k, v in fields.items()] + germ_text
    keys = [l for l in lines if not l.startswith("germ")]
    rnd.shuffle(keys)
    s = parse("\n".join(keys + germ_text))
    assert parse(dump(s)) == s
    assert dump(parse(dump(s))) == dump(s)


VALID = sorted((GOLDEN / "valid").glob("*.fib"))


@pytest.mark.parametrize("path", VALID, ids=lambda p: p.stem)
def test_golden_valid_files(path):
    text = path.read_text()
    s = parse(text)
    assert dump(s) == text
    expected = path.with_suffix(".report.json").read_bytes()
    assert emit_report(analyze(s), "json") == expected


INVALID = json.loads((GOLDEN / "invalid" / "expected.json").read_text())


@pytest.mark.parametrize("name", sorted(INVALID))
def test_golden_invalid_files(name):
    want = INVALID[name]
    text = (GOLDEN / "invalid" / name).read_text()
    with pytest.raises(getattr(errors, want["error"])) as info:
        analyze(parse(text))
    if want["line"] is not None:
        assert info.value.line == want["line"]
