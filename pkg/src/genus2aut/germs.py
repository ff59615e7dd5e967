"""
Classified local branch configurations over a disc.

Each row gives the singularity indices of the central fiber F0 for one
family of local equations of the horizontal branch curve, indexed by the
fiberwise group (the image of the fiber automorphisms in Aut(P^1)) and a
case number.  ``s2_min`` is a lower bound unless ``exact`` is set.

The module also carries an exact t-adic discriminant oracle for products of
binomials.  It is a sanity signal for the table, not a way to compute s2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NotSquarefree, UnknownCase
from .pgl2 import FiniteMobiusGroup, group_from_name, lift_order

TABLE_VERSION = "1"

POSITIVE = "positive"


@dataclass(frozen=True)
class GermCase:
    group: FiniteMobiusGroup
    case_id: int
    k: int | None = None

    def __str__(self):
        k = "" if self.k is None else f" k={self.k}"
        return f"{self.group} case={self.case_id}{k}"


@dataclass(frozen=True)
class GermIndices:
    s2_min: int
    s3: int
    exact: bool = False
    # the s2 bound holds only in the alternative where s3(F0) = 0
    conditional: bool = False


@dataclass(frozen=True)
class Binomial:
    """``x^a - unit*t^b``, or ``t^b*x^a - unit`` when ``inverted``.

    ``unit = 0`` encodes the bare factor ``x`` (only with ``a = 1``).
    """

    a: int
    b: int = 0
    unit: Fraction | int = 1
    inverted: bool = False

    def __post_init__(self):
        if self.a < 1 or self.b < 0:
            raise ValueError(f"bad exponents in {self}")

    @property
    def degree(self) -> int:
        return self.a

    @property
    def lc_valuation(self) -> int:
        return self.b if self.inverted else 0

    @property
    def root_valuation(self) -> Fraction | None:
        """t-adic valuation shared by all roots; None means the root 0."""
        if self.unit == 0:
            return None
        v = Fraction(self.b, self.a)
        return -v if self.inverted else v


@dataclass(frozen=True)
class GermRow:
    group: str
    case_id: int
    indices: GermIndices
    equation: str
    k_values: frozenset | str | None = POSITIVE
    # factorisation of the k = kmin instance when it is a product of binomials
    factors: tuple | None = None
    disc_valuation: int | None = None

    def admits(self, k: int | None) -> bool:
        if self.k_values is None:
            return k is None
        if k is None:
            return True
        if self.k_values == POSITIVE:
            return k >= 1
        return k in self.k_values

    @property
    def k_min(self) -> int | None:
        if self.k_values is None:
            return None
        if self.k_values == POSITIVE:
            return 1
        return min(self.k_values)


def _b(a, b=0, unit=1, inverted=False):
    return Binomial(a, b, Fraction(unit), inverted)


_X = _b(1, 0, 0)


def _rows():
    fiber = GermIndices(10, 0, exact=True)
    octa = (_X, _b(4, 0, 1))
    rows = [
        GermRow("O24", 0, fiber, "F0 in R, 6 etale sections", None, octa),
        GermRow("T12", 0, fiber, "F0 in R, 6 etale sections", None, octa),
        GermRow("D12", 0, fiber, "F0 in R, 6 etale sections", None, (_b(6, 0, 1),)),
        GermRow("D6", 1, GermIndices(4, 0, conditional=True),
                "(x^3-t^k)(t^k x^3-1)", POSITIVE,
                (_b(3, 1), _b(3, 1, 1, True))),
        GermRow("D6", 2, GermIndices(3, 0),
                "(x^3-1)^2-t^k(x^3+1)^2", POSITIVE),
        GermRow("Z6", 1, GermIndices(3, 1, exact=True),
                "x^6-t^k", frozenset({3}), (_b(6, 3),)),
        GermRow("Z6", 1, GermIndices(5, 0),
                "x^6-t^k", frozenset({1, 2}), (_b(6, 1),)),
        GermRow("Z5", 1, GermIndices(6, 0),
                "x(x^5-t^k)", frozenset({1, 2}), (_X, _b(5, 1))),
        GermRow("Z5", 2, GermIndices(4, 0),
                "x(t^k x^5-1)", frozenset({1, 2}), (_X, _b(5, 1, 1, True))),
        GermRow("D4", 1, GermIndices(6, 0, conditional=True),
                "(x^2-1)((x-1)^2-t^k(x+1)^2)(t^k(x-1)^2-(x+1)^2)", POSITIVE),
        GermRow("D4", 2, GermIndices(2, 0),
                "(x^2-1)(x^2-t^k)(t^k x^2-1)", POSITIVE,
                (_b(2, 0, 1), _b(2, 1), _b(2, 1, 1, True))),
        GermRow("Z4", 1, GermIndices(5, 0),
                "x(x^4-t^k)", frozenset({1, 2}), (_X, _b(4, 1))),
        GermRow("Z3", 1, GermIndices(4, 0, conditional=True),
                "(x^3-t^k1)(t^k2 x^3-a(t))", POSITIVE,
                (_b(3, 1), _b(3, 1, 1, True))),
        GermRow("Z3", 2, GermIndices(5, 0, conditional=True),
                "x^6+a(t)x^3+t^k", frozenset({1, 2, 3})),
        GermRow("Z3", 3, GermIndices(6, 0),
                "(x^3-b-t^k1)(x^3-b-t^k2 a(t))", POSITIVE),
        GermRow("Z3", 4, GermIndices(2, 0),
                "(x^3-t^k)(x^3-a(t))", frozenset({1, 2, 3}),
                (_b(3, 1), _b(3, 0, 1))),
        GermRow("Z3", 5, GermIndices(3, 0),
                "prod((x-b w^i)^2 - w^(2i) t^k a(t))", POSITIVE),
        # the last two groups only appear in the summary table
        GermRow("Z2", 1, GermIndices(1, 0),
                "(x^2-t)(x^2-a(t))(x^2-b(t))", None,
                (_b(2, 1), _b(2, 0, 1), _b(2, 0, 2))),
        GermRow("1", 1, GermIndices(1, 0),
                "(x^2-t)(x-a1(t))...(x-a5(t))", None,
                (_b(2, 1),) + tuple(_b(1, 0, c) for c in range(1, 6))),
    ]
    return tuple(
        GermRow(r.group, r.case_id, r.indices, r.equation, r.k_values, r.factors,
                None if r.factors is None else discriminant_valuation(r.factors))
        for r in rows
    )


def _disc_single(f: Binomial) -> int:
    if f.unit == 0:
        if f.a != 1:
            raise NotSquarefree(f"x^{f.a} has a repeated root")
        return 0
    return f.b * (f.a - 1)


def _share_root(f: Binomial, g: Binomial) -> bool:
    vf, vg = f.root_valuation, g.root_valuation
    if vf is None or vg is None:
        return vf is None and vg is None
    if vf != vg:
        return False
    # roots are u t^v with u^a = unit; a common u exists iff
    # unit_f^(a_g/d) == unit_g^(a_f/d), d = gcd(a_f, a_g)
    d = math.gcd(f.a, g.a)
    return Fraction(f.unit) ** (g.a // d) == Fraction(g.unit) ** (f.a // d)


def resultant_valuation(f: Binomial, g: Binomial) -> int:
    if _share_root(f, g):
        raise NotSquarefree(f"{f} and {g} have a common root")
    vf, vg = f.root_valuation, g.root_valuation
    if vf is None:
        v = vg
    elif vg is None:
        v = vf
    else:
        v = min(vf, vg)
    total = f.lc_valuation * g.degree + g.lc_valuation * f.degree + f.degree * g.degree * v
    total = Fraction(total)
    if total.denominator != 1:
        raise ValueError(f"non-integral resultant valuation for {f}, {g}")
    return int(total)


def _coerce(f) -> Binomial:
    if isinstance(f, Binomial):
        return f
    a, b, *rest = f
    unit = Fraction(rest[0]) if rest else Fraction(1)
    inverted = bool(rest[1]) if len(rest) > 1 else False
    return Binomial(a, b, unit, inverted)


def discriminant_valuation(factors: Iterable) -> int:
    """t-adic valuation of the x-discriminant of a product of binomials.

    Factors are ``Binomial`` values or tuples ``(a, b[, unit[, inverted]])``.
    Uses ``disc(fg) = disc(f) disc(g) res(f, g)^2``.
    """
    fs = [_coerce(f) for f in factors]
    total = sum(_disc_single(f) for f in fs)
    for i, f in enumerate(fs):
        for g in fs[i + 1:]:
            total += 2 * resultant_valuation(f, g)
    return total


GERM_TABLE: tuple[GermRow, ...] = _rows()


def rows_for(group: FiniteMobiusGroup | str, case_id: int | None = None) -> list[GermRow]:
    name = group if isinstance(group, str) else group.name
    return [r for r in GERM_TABLE
            if r.group == name and (case_id is None or r.case_id == case_id)]


def lookup(g: GermCase) -> GermRow:
    candidates = [r for r in rows_for(g.group, g.case_id) if r.admits(g.k)]
    if not candidates:
        raise UnknownCase(f"no classified germ {g}")
    if len({r.indices for r in candidates}) > 1:
        raise UnknownCase(f"{g}: indices depend on k, which must be given")
    return candidates[0]


def classify(g: GermCase) -> GermIndices:
    return lookup(g).indices


def germ_case(group: str, case_id: int, k: int | None = None) -> GermCase:
    try:
        grp = group_from_name(group)
    except ValueError as exc:
        raise UnknownCase(str(exc)) from None
    return GermCase(grp, case_id, k)


SUMMARY_GROUPS = ("D6", "Z6", "Z5", "D4", "Z4", "Z3", "Z2", "1")


@dataclass(frozen=True)
class RatioRow:
    group: str
    lift_order: int
    s2_min: int
    max_ratio: Fraction


def ratio_table() -> list[RatioRow]:
    """|K_Delta| against the least s2(F0) over rows without non-negligible points."""
    out = []
    for name in SUMMARY_GROUPS:
        s2 = min(r.indices.s2_min for r in rows_for(name) if r.indices.s3 == 0)
        lift = lift_order(group_from_name(name).order)
        out.append(RatioRow(name, lift, s2, Fraction(lift, s2)))
    return out


def max_ratio(groups: Sequence[str] | None = None) -> Fraction:
    rows = ratio_table()
    if groups is not None:
        rows = [r for r in rows if r.group in groups]
    return max(r.max_ratio for r in rows)


def z3_fixed_fiber_s2_min(h_order: int) -> int:
    """Lower bound for s2 on an H-fixed fiber carrying a 3-point Z3 orbit."""
    if h_order < 1:
        raise ValueError("h_order must be positive")
    return 3 * h_order
