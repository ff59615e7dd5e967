from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from genus2aut import bounds, catalog
from genus2aut.bounds import (
    FactorizationConstraint, GroupKind, coprimality_ok, evaluate, evaluate_formula,
    exceptional_table, k_order_cap, stabilizer_bound,
)
from genus2aut.errors import Inapplicable


def values(vs):
    return {v.formula_name: v.bound_value for v in vs}


def test_full_rational_base():
    got = values(evaluate(0, 16, "full"))
    assert got["aut-rational-base"] == 2880
    assert got["aut-linear"] == 504 * 16
    assert got["aut-not-locally-trivial"] == 288 * 16
    assert "aut-rational-base-large" not in got
    assert values(evaluate(0, 33, "full"))["aut-rational-base-large"] == 48 * 41


def test_locally_trivial_keeps_only_linear_bound():
    got = values(evaluate(3, 16, "full", locally_trivial=True))
    assert got == {"aut-linear": 8064}
    got = values(evaluate(3, 16, "full"))
    assert got["aut-base-genus-ge2"] == 126 * 16


def test_abelian():
    m = 3
    got = values(evaluate(0, 8 * (m - 1), GroupKind.ABELIAN))
    assert got == {"abelian": 300}
    assert 300 == 100 * m
    got = values(evaluate(2, 8, "abelian"))
    assert got["abelian-base-genus-ge2"] == 6 * 8 + 96
    assert isinstance(got["abelian"], Fraction) and got["abelian"] == Fraction(200)


def test_cyclic():
    assert values(evaluate(1, 12, "cyclic")) == {"cyclic-elliptic-base": 60}
    assert values(evaluate(1, 10, "cyclic")) == {"cyclic-elliptic-small": 60}
    assert values(evaluate(0, 3, "cyclic")) == {"cyclic-rational-base": Fraction(255, 2)}
    assert values(evaluate(2, 8, "cyclic")) == {}
    v = evaluate(2, 48, "cyclic", minimal_surface=True)
    assert values(v) == {"cyclic-base-genus-ge2": 270}
    assert "proof-threshold" in v[0].note


def test_preconditions():
    with pytest.raises(Inapplicable):
        evaluate(0, 0, "full")
    with pytest.raises(Inapplicable):
        evaluate(3, 15, "full")
    with pytest.raises(Inapplicable):
        evaluate_formula("cyclic-elliptic-base", 1, 10)
    assert evaluate_formula("cyclic-elliptic-base", 1, 12).bound_value == 60


def test_stabilizer_bounds():
    assert stabilizer_bound("etale", 5, 24) == 2880
    assert stabilizer_bound("s3_positive", 1, 7) == 60
    assert stabilizer_bound("z2_one_orbit", 1, 10) == 50
    assert stabilizer_bound("d4_cyclic", 9, 2) == 25
    assert stabilizer_bound("z3_one_orbit", 2, 3) == 36
    assert stabilizer_bound("negligible_not_etale", 3, 2) == 120
    with pytest.raises(ValueError):
        stabilizer_bound("nope", 1, 1)


def test_exceptional_table():
    rows = exceptional_table()
    assert [(r.h_group.name, r.r, r.g_order, r.ksq, r.ratio_plus8, r.ratio) for r in rows] == [
        ("I60", 5, 2880, 16, 120, 180), ("I60", 3, 2880, 32, 72, 90),
        ("O24", 4, 1152, 4, 96, 288), ("O24", 3, 1152, 8, 72, 144)]
    for r in rows:
        assert r.g_order > 48 * (r.ksq + 8)
        assert r.g_order <= 120 * (r.ksq + 8)
        assert r.g_order <= 288 * r.ksq


def test_coprimality_and_caps():
    assert coprimality_ok(FactorizationConstraint(10, 3), 7)
    assert not coprimality_ok(FactorizationConstraint(10, 3), 2)
    assert coprimality_ok(FactorizationConstraint(1, 5), 5)
    assert FactorizationConstraint(48, 60).g_order == 2880
    assert [k_order_cap(k) for k in ("full", "abelian", "cyclic")] == [48, 12, 10]


@given(st.integers(1, 400))
def test_large_rational_bound_below_not_locally_trivial(ksq):
    if ksq >= 2:
        assert 48 * (ksq + 8) < 288 * ksq


@given(st.sampled_from(bounds.FORMULAS), st.integers(1, 500), st.integers(0, 50))
def test_formulas_nondecreasing(f, ksq, step):
    assert f.value(ksq + step) >= f.value(ksq)


def test_sharp_flags_are_attained_in_catalog():
    attained = set()
    for r in catalog.verify_all():
        if r.sharp:
            attained.add(r.bound_name)
    for f in bounds.FORMULAS:
        if f.sharp:
            assert f.name in attained, f.name
