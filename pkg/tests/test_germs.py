from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from genus2aut import germs
from genus2aut.errors import NotSquarefree, UnknownCase
from genus2aut.germs import Binomial, classify, discriminant_valuation, germ_case

x, t = sympy.symbols("x t")


def sympy_factor(f: Binomial):
    if f.unit == 0:
        return x
    unit = sympy.Rational(Fraction(f.unit).numerator, Fraction(f.unit).denominator)
    if f.inverted:
        return t ** f.b * x ** f.a - unit
    return x ** f.a - unit * t ** f.b


def t_valuation(expr) -> int:
    poly = sympy.Poly(sympy.expand(expr), t)
    return min(m[0] for m in poly.monoms())


def oracle(factors) -> int:
    prod = sympy.Mul(*[sympy_factor(germs._coerce(f)) for f in factors])
    return t_valuation(sympy.discriminant(prod, x))


def test_spec_discriminants():
    assert discriminant_valuation([(6, 1)]) == 5
    assert discriminant_valuation([(1, 1), (1, 1, -1)]) == 2
    # x (x^5 - t): disc(x^5 - t) contributes 4 and res(x, x^5 - t) = t
    value = discriminant_valuation([Binomial(1, 0, 0), (5, 1)])
    assert value == oracle([Binomial(1, 0, 0), (5, 1)]) == 6


@pytest.mark.parametrize("row", [r for r in germs.GERM_TABLE if r.factors],
                         ids=lambda r: f"{r.group}-{r.case_id}-{r.indices.s2_min}")
def test_table_valuations_match_sympy(row):
    assert row.disc_valuation == oracle(row.factors)


binomials = st.builds(
    Binomial,
    a=st.integers(1, 4),
    b=st.integers(0, 3),
    unit=st.sampled_from([Fraction(1), Fraction(2), Fraction(-1), Fraction(3)]),
    inverted=st.booleans(),
)


@settings(max_examples=60, deadline=None)
@given(st.lists(binomials, min_size=1, max_size=3))
def test_random_products_match_sympy(factors):
    prod = sympy.Mul(*[sympy_factor(f) for f in factors])
    disc = sympy.discriminant(sympy.expand(prod), x)
    if disc == 0:
        with pytest.raises(NotSquarefree):
            discriminant_valuation(factors)
        return
    try:
        ours = discriminant_valuation(factors)
    except NotSquarefree:
        pytest.fail("flagged a squarefree product")
    assert ours == t_valuation(disc)


def test_classify_examples():
    assert classify(germ_case("Z6", 1, 3)) == germs.GermIndices(3, 1, exact=True)
    for name in ("O24", "T12", "D12"):
        idx = classify(germ_case(name, 0))
        assert (idx.s2_min, idx.s3, idx.exact) == (10, 0, True)
    idx = classify(germ_case("Z4", 1, 1))
    assert (idx.s2_min, idx.s3, idx.exact) == (5, 0, False)


def test_full_table_values():
    expected = {
        ("D6", 1): (4, 0, True), ("D6", 2): (3, 0, False),
        ("Z5", 1): (6, 0, False), ("Z5", 2): (4, 0, False),
        ("D4", 1): (6, 0, True), ("D4", 2): (2, 0, False),
        ("Z4", 1): (5, 0, False),
        ("Z3", 1): (4, 0, True), ("Z3", 2): (5, 0, True), ("Z3", 3): (6, 0, False),
        ("Z3", 4): (2, 0, False), ("Z3", 5): (3, 0, False),
    }
    for (g, c), (s2, s3, cond) in expected.items():
        idx = classify(germ_case(g, c, 1))
        assert (idx.s2_min, idx.s3, idx.conditional) == (s2, s3, cond), (g, c)
    assert classify(germ_case("Z6", 1, 2)).s2_min == 5


def test_unknown_cases():
    with pytest.raises(UnknownCase):
        classify(germ_case("Z5", 7))
    with pytest.raises(UnknownCase):
        classify(germ_case("Z5", 1, 3))
    with pytest.raises(UnknownCase):
        classify(germ_case("Z6", 1))
    with pytest.raises(UnknownCase):
        germ_case("Q8", 1)


def test_ratio_table():
    rows = {r.group: r for r in germs.ratio_table()}
    assert [r.group for r in germs.ratio_table()] == list(germs.SUMMARY_GROUPS)
    assert (rows["Z4"].lift_order, rows["Z4"].s2_min, rows["Z4"].max_ratio) == (8, 5, Fraction(8, 5))
    assert (rows["1"].lift_order, rows["1"].s2_min, rows["1"].max_ratio) == (2, 1, 2)
    assert germs.max_ratio() == 4
    assert germs.max_ratio(["Z6", "Z5", "Z4", "1"]) == Fraction(5, 2)


def test_z3_fixed_fiber():
    assert germs.z3_fixed_fiber_s2_min(4) == 12
    assert germs.z3_fixed_fiber_s2_min(1) == 3
    assert germs.z3_fixed_fiber_s2_min(10) == 30
    with pytest.raises(ValueError):
        germs.z3_fixed_fiber_s2_min(0)
