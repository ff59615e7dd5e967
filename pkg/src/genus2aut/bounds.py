"""
Upper bounds for automorphism groups of genus 2 fibrations.

Every group G of automorphisms of f: S -> C sits in ``1 -> K -> G -> H -> 1``
with K acting fiberwise and H the induced group on the base, so
``|G| = |K| |H|``.  The bounds below are linear in K_S^2; each carries the
hypotheses under which it holds and whether some construction attains it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from .errors import Inapplicable, Mismatch
from .pgl2 import FiniteMobiusGroup, icosahedral, octahedral


class GroupKind(str, Enum):
    FULL = "full"
    ABELIAN = "abelian"
    CYCLIC = "cyclic"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class BoundVerdict:
    bound_value: Fraction
    formula_name: str
    sharp: bool
    source_quote: str
    note: str = ""

    def allows(self, order: int) -> bool:
        return order <= self.bound_value


@dataclass(frozen=True)
class _Context:
    base_genus: int
    ksq: int
    locally_trivial: bool
    minimal_surface: bool


@dataclass(frozen=True)
class Formula:
    name: str
    kind: GroupKind
    slope: Fraction
    intercept: Fraction
    statement: str
    sharp: bool
    hypothesis: str
    applies: Callable[[_Context], bool]
    note: str = ""

    def value(self, ksq) -> Fraction:
        return self.slope * ksq + self.intercept


def _f(name, kind, slope, intercept, statement, sharp, hypothesis, applies, note=""):
    return Formula(name, kind, Fraction(slope), Fraction(intercept), statement, sharp,
                   hypothesis, applies, note)


FULL, ABELIAN, CYCLIC = GroupKind.FULL, GroupKind.ABELIAN, GroupKind.CYCLIC

FORMULAS: tuple[Formula, ...] = (
    _f("aut-linear", FULL, 504, 0, "|Aut(f)| <= 504 K^2", True,
       "always", lambda c: True),
    _f("aut-not-locally-trivial", FULL, 288, 0, "|Aut(f)| <= 288 K^2", True,
       "f not locally trivial", lambda c: not c.locally_trivial),
    _f("aut-base-genus-ge2", FULL, 126, 0, "|Aut(f)| <= 126 K^2", True,
       "g(C) >= 2, f not locally trivial",
       lambda c: c.base_genus >= 2 and not c.locally_trivial),
    _f("aut-elliptic-base", FULL, 144, 0, "|Aut(f)| <= 144 K^2", True,
       "g(C) = 1", lambda c: c.base_genus == 1),
    _f("aut-rational-base", FULL, 120, 960, "|Aut(f)| <= 120 K^2 + 960", True,
       "g(C) = 0", lambda c: c.base_genus == 0),
    _f("aut-rational-base-large", FULL, 48, 384, "|Aut(f)| <= 48 (K^2 + 8)", True,
       "g(C) = 0, K^2 >= 33", lambda c: c.base_genus == 0 and c.ksq >= 33),
    _f("abelian", ABELIAN, Fraction(25, 2), 100, "|G| <= 12.5 K^2 + 100", True,
       "G abelian", lambda c: True),
    _f("abelian-base-genus-ge2", ABELIAN, 6, 96, "|G| <= 6 K^2 + 96", False,
       "G abelian, g(C) >= 2", lambda c: c.base_genus >= 2),
    _f("cyclic-elliptic-base", CYCLIC, 5, 0, "|G| <= 5 K^2", True,
       "G cyclic, g(C) = 1, K^2 >= 12", lambda c: c.base_genus == 1 and c.ksq >= 12),
    _f("cyclic-elliptic-small", CYCLIC, 0, 60, "|G| <= 60", False,
       "G cyclic, g(C) = 1, K^2 < 12", lambda c: c.base_genus == 1 and c.ksq < 12,
       note="fallback constant; no linear bound is stated below K^2 = 12"),
    _f("cyclic-rational-base", CYCLIC, Fraction(25, 2), 90, "|G| <= 12.5 K^2 + 90", True,
       "G cyclic, g(C) = 0", lambda c: c.base_genus == 0),
    _f("cyclic-base-genus-ge2", CYCLIC, 5, 30, "|G| <= 5 K^2 + 30", False,
       "G cyclic, g(C) >= 2, S minimal",
       lambda c: c.base_genus >= 2 and c.minimal_surface,
       note="proof-threshold: the supporting argument assumes K^2 >= 48"),
)

FORMULA_BY_NAME = {f.name: f for f in FORMULAS}


def _context(base_genus, ksq, locally_trivial, minimal_surface) -> _Context:
    if base_genus < 0:
        raise Inapplicable("base genus must be non-negative")
    if ksq < 1:
        raise Inapplicable(f"K^2 = {ksq}: a surface of general type has K^2 >= 1")
    if base_genus >= 2 and ksq < 8 * (base_genus - 1):
        raise Inapplicable(f"K^2 = {ksq} < 8(g(C)-1) = {8 * (base_genus - 1)}")
    return _Context(base_genus, ksq, locally_trivial, minimal_surface)


def _verdict(f: Formula, ksq) -> BoundVerdict:
    return BoundVerdict(f.value(ksq), f.name, f.sharp, f.statement, f.note)


def evaluate(base_genus: int, ksq: int, kind: GroupKind | str = FULL,
             locally_trivial: bool = False, minimal_surface: bool = False
             ) -> list[BoundVerdict]:
    """Every bound whose hypotheses hold, in registry order."""
    kind = GroupKind(kind)
    ctx = _context(base_genus, ksq, locally_trivial, minimal_surface)
    return [_verdict(f, ksq) for f in FORMULAS if f.kind == kind and f.applies(ctx)]


def evaluate_formula(name: str, base_genus: int, ksq: int,
                     locally_trivial: bool = False, minimal_surface: bool = False
                     ) -> BoundVerdict:
    f = FORMULA_BY_NAME[name]
    ctx = _context(base_genus, ksq, locally_trivial, minimal_surface)
    if not f.applies(ctx):
        raise Inapplicable(f"{name} needs {f.hypothesis}")
    return _verdict(f, ksq)


def sharpest(verdicts: list[BoundVerdict]) -> BoundVerdict | None:
    return min(verdicts, key=lambda v: v.bound_value, default=None)


# -- local stabilizer bounds -------------------------------------------------

STABILIZER_CASES = {
    # case: (coefficient of r * K^2_{S/C}, depends on r)
    "s3_positive": (Fraction(60, 7), True),
    "negligible_not_etale": (Fraction(20), True),
    "etale": (Fraction(24), True),
    "d4_cyclic": (Fraction(25, 2), False),
    "z3_one_orbit": (Fraction(6), True),
    "z2_one_orbit": (Fraction(5), True),
}


def stabilizer_bound(case: str, r: int, ksq_rel: int) -> Fraction:
    """Bound on |Aut(f)| from the least base stabilizer r of a singular fiber."""
    try:
        coeff, uses_r = STABILIZER_CASES[case]
    except KeyError:
        raise ValueError(f"unknown stabilizer case {case!r}") from None
    if r < 1:
        raise ValueError("r must be positive")
    return coeff * (r if uses_r else 1) * ksq_rel


# -- the exceptional rational fibrations -------------------------------------

@dataclass(frozen=True)
class ExceptionalRow:
    h_group: FiniteMobiusGroup
    r: int
    g_order: int
    ksq: int
    # stored as printed: |G|/(K^2+8) and |G|/K^2
    ratio_plus8: int
    ratio: int

    def recomputed(self) -> tuple[Fraction, Fraction]:
        return Fraction(self.g_order, self.ksq + 8), Fraction(self.g_order, self.ksq)


_EXCEPTIONAL = (
    ExceptionalRow(icosahedral(), 5, 2880, 16, 120, 180),
    ExceptionalRow(icosahedral(), 3, 2880, 32, 72, 90),
    ExceptionalRow(octahedral(), 4, 1152, 4, 96, 288),
    ExceptionalRow(octahedral(), 3, 1152, 8, 72, 144),
)


def exceptional_table() -> list[ExceptionalRow]:
    """Rational-base fibrations with |G| > 48(K^2 + 8), ratios re-verified."""
    for row in _EXCEPTIONAL:
        if row.recomputed() != (row.ratio_plus8, row.ratio):
            raise Mismatch(f"stored ratios disagree for {row}",
                           (row.ratio_plus8, row.ratio), row.recomputed())
    return list(_EXCEPTIONAL)


# -- group-order constraints -------------------------------------------------

@dataclass(frozen=True)
class FactorizationConstraint:
    k_order: int
    h_order: int

    @property
    def g_order(self) -> int:
        return self.k_order * self.h_order


def coprimality_ok(c: FactorizationConstraint, stab_order: int) -> bool:
    """Necessary condition for a cyclic G with a smooth fiber over a point
    with base stabilizer of order ``stab_order``."""
    return math.gcd(c.k_order, stab_order) == 1


_K_CAP = {FULL: 48, ABELIAN: 12, CYCLIC: 10}


def k_order_cap(kind: GroupKind | str) -> int:
    """Largest possible fiberwise kernel |K| for each kind of group."""
    return _K_CAP[GroupKind(kind)]
