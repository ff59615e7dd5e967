"""
Parametric reconstructions of extremal genus 2 fibrations.

Each entry is a double cover of a ruled surface P branched along an even
class R, together with the orders of a group G = K.H acting on it.  K^2 is
computed twice, once from the double cover formula and once from the
singularity-index formulas, and the group order is checked against the
bounds of ``genus2aut.bounds``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bounds
from .bounds import GroupKind
from .errors import BadParameter, Mismatch
from .ruled_surface import (DivisorClass, RuledSurfaceModel, double_cover_ksq,
                            ramification)
from .xiao import SingularityBudget, global_invariants

ETALE_FIBERS = "etale-fibers"
SMOOTH_BRANCH = "smooth-branch"
LOCALLY_TRIVIAL = "locally-trivial"

EXCEPTIONAL = "exceptional-table"

# Attained orders that are not bounds; used only as the named formula of an
# entry whose group order is a closed form in K^2.
REFERENCE_FORMULAS = {
    "cyclic-odd-base-order": (Fraction(15, 4), Fraction(60)),
}

HURWITZ_ASSUMPTION = "hypothetical-Hurwitz: base curve assumed to have 84(g-1) automorphisms"


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    params: dict
    surface: RuledSurfaceModel
    branch: DivisorClass
    fiber_count: int
    budget_mode: str
    kind: GroupKind
    k_order: int
    h_order: int
    expected_ksq: int
    bound_name: str
    locally_trivial: bool = False
    minimal: bool = False
    h_group: str | None = None
    r: int | None = None
    assumptions: tuple[str, ...] = ()

    @property
    def base_genus(self) -> int:
        return self.surface.base_genus

    @property
    def g_order(self) -> int:
        return self.k_order * self.h_order


@dataclass(frozen=True)
class _Recipe:
    description: str
    defaults: dict
    check: Callable[[dict], str | None]
    build: Callable[[dict], dict]
    sweep: tuple


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _need(cond: bool, text: str) -> str | None:
    return None if cond else text


def _product_six_sections(g: int, fibers: int) -> tuple[RuledSurfaceModel, DivisorClass]:
    return RuledSurfaceModel.product(g), DivisorClass(6, fibers)


def _hurwitz_lt(p):
    g = p["g"]
    s, r = _product_six_sections(g, 0)
    return dict(surface=s, branch=r, fiber_count=0, budget_mode=LOCALLY_TRIVIAL,
                kind=GroupKind.FULL, k_order=48, h_order=84 * (g - 1),
                expected_ksq=8 * (g - 1), bound_name="aut-linear",
                locally_trivial=True, minimal=True, assumptions=(HURWITZ_ASSUMPTION,))


def _hurwitz_orbit(p):
    g = p["g"]
    m = 12 * (g - 1)
    s, r = _product_six_sections(g, m)
    return dict(surface=s, branch=r, fiber_count=m, budget_mode=ETALE_FIBERS,
                kind=GroupKind.FULL, k_order=48, h_order=84 * (g - 1),
                expected_ksq=32 * (g - 1), bound_name="aut-base-genus-ge2",
                assumptions=(HURWITZ_ASSUMPTION,
                             f"an H-orbit of {m} points is taken as given"))


def _elliptic_j0(p):
    m = p["m"]
    s, r = _product_six_sections(1, m * m)
    return dict(surface=s, branch=r, fiber_count=m * m, budget_mode=ETALE_FIBERS,
                kind=GroupKind.FULL, k_order=48, h_order=6 * m * m,
                expected_ksq=2 * m * m, bound_name="aut-elliptic-base",
                assumptions=("extension of Z_m + Z_m by Aut(C, q) of order 6 assumed",))


def _platonic(fibers, h_group, r_stab, ksq, bound_name):
    def build(p):
        s, r = _product_six_sections(0, fibers)
        order = {"I60": 60, "O24": 24}[h_group]
        return dict(surface=s, branch=r, fiber_count=fibers, budget_mode=ETALE_FIBERS,
                    kind=GroupKind.FULL, k_order=48, h_order=order,
                    expected_ksq=ksq, bound_name=bound_name, h_group=h_group, r=r_stab)
    return build


def _roots_of_unity(p):
    m = p["m"]
    s, r = _product_six_sections(0, m)
    return dict(surface=s, branch=r, fiber_count=m, budget_mode=ETALE_FIBERS,
                kind=GroupKind.FULL, k_order=48, h_order=2 * m,
                expected_ksq=2 * (m - 4), bound_name="aut-rational-base-large",
                h_group=f"D{2 * m}")


def _cone(h_order_of_m, kind, bound_name):
    def build(p):
        m = p["m"]
        return dict(surface=RuledSurfaceModel.hirzebruch(2 * m),
                    branch=DivisorClass(6, 10 * m), fiber_count=0,
                    budget_mode=SMOOTH_BRANCH, kind=kind, k_order=10,
                    h_order=h_order_of_m(m), expected_ksq=8 * (m - 1),
                    bound_name=bound_name)
    return build


def _elliptic_translations(p):
    m = p["m"]
    s, r = _product_six_sections(1, m)
    return dict(surface=s, branch=r, fiber_count=m, budget_mode=ETALE_FIBERS,
                kind=GroupKind.CYCLIC, k_order=10, h_order=m,
                expected_ksq=2 * m, bound_name="cyclic-elliptic-base")


def _cyclic_cover_base(p):
    m = p["m"]
    s, r = _product_six_sections(m - 1, 0)
    return dict(surface=s, branch=r, fiber_count=0, budget_mode=LOCALLY_TRIVIAL,
                kind=GroupKind.CYCLIC, k_order=10, h_order=3 * m,
                expected_ksq=8 * (m - 2), bound_name="cyclic-odd-base-order",
                locally_trivial=True, minimal=True)


def _g_at_least_2(p):
    return _need(p["g"] >= 2, "g must be at least 2")


_RECIPES: dict[str, _Recipe] = {
    "5.1": _Recipe("C x F, C with 84(g-1) automorphisms, |Aut(F)| = 48",
                 {"g": 3}, _g_at_least_2, _hurwitz_lt, tuple({"g": g} for g in range(2, 7))),
    "5.2": _Recipe("six sections plus a 12(g-1)-point orbit of fibers over a curve "
                 "with 84(g-1) automorphisms",
                 {"g": 3}, _g_at_least_2, _hurwitz_orbit, tuple({"g": g} for g in range(2, 7))),
    "5.3": _Recipe("six sections plus an m^2-point orbit on an elliptic curve with j = 0",
                 {"m": 2}, lambda p: _need(p["m"] >= 1, "m must be positive"),
                 _elliptic_j0, tuple({"m": m} for m in range(1, 11))),
    "5.4": _Recipe("six sections plus fibers over the 12 icosahedron vertices",
                 {}, lambda p: None, _platonic(12, "I60", 5, 16, "aut-rational-base"), ({},)),
    "5.5": _Recipe("six sections plus fibers over the m-th roots of unity",
                 {"m": 6}, lambda p: _need(p["m"] >= 6 and p["m"] % 2 == 0,
                                           "m must be even and at least 6"),
                 _roots_of_unity, tuple({"m": m} for m in range(1, 11))),
    "5.6-dodecahedron": _Recipe("six sections plus fibers over the 20 dodecahedron vertices",
                              {}, lambda p: None, _platonic(20, "I60", 3, 32, EXCEPTIONAL),
                              ({},)),
    "5.6-octahedron": _Recipe("six sections plus fibers over the 6 octahedron vertices",
                            {}, lambda p: None,
                            _platonic(6, "O24", 4, 4, "aut-not-locally-trivial"), ({},)),
    "5.6-cube": _Recipe("six sections plus fibers over the 8 cube vertices",
                      {}, lambda p: None, _platonic(8, "O24", 3, 8, EXCEPTIONAL), ({},)),
    "5.7": _Recipe("smooth branch 6C0 + 10mF on F_2m, abelian Z10 + Z10m",
                 {"m": 2}, lambda p: _need(p["m"] >= 2, "m must be at least 2"),
                 _cone(lambda m: 10 * m, GroupKind.ABELIAN, "abelian"),
                 tuple({"m": m} for m in range(1, 11))),
    "5.8+": _Recipe("smooth branch 6C0 + 10mF on F_2m, cyclic of order 100m - 10",
                  {"m": 2}, lambda p: _need(p["m"] >= 2, "m must be at least 2"),
                  _cone(lambda m: 10 * m - 1, GroupKind.CYCLIC, "cyclic-rational-base"),
                  tuple({"m": m} for m in range(1, 11))),
    "5.8": _Recipe("six sections plus an m-point translation orbit on an elliptic curve",
                 {"m": 3}, lambda p: _need(p["m"] % 2 == 1 and _is_prime(p["m"]) and p["m"] != 5,
                                           "m must be an odd prime different from 5"),
                 _elliptic_translations, tuple({"m": m} for m in (3, 7, 11, 13))),
    "5.9": _Recipe("C x F with C an m-cyclic cover of P^1 of genus m - 1",
                 {"m": 7}, lambda p: _need(p["m"] % 2 == 1 and _is_prime(p["m"])
                                           and p["m"] not in (3, 5),
                                           "m must be an odd prime other than 3 and 5"),
                 _cyclic_cover_base, tuple({"m": m} for m in (7, 11, 13))),
}

ENTRY_IDS = tuple(_RECIPES)


def describe(entry_id: str) -> str:
    return _recipe(entry_id).description


def _recipe(entry_id: str) -> _Recipe:
    try:
        return _RECIPES[entry_id]
    except KeyError:
        raise BadParameter(f"unknown catalog entry {entry_id!r}") from None


def instantiate(entry_id: str, params: dict | None = None) -> CatalogEntry:
    recipe = _recipe(entry_id)
    given = dict(params or {})
    unknown = set(given) - set(recipe.defaults)
    if unknown:
        raise BadParameter(f"{entry_id} takes no parameter(s) {sorted(unknown)}")
    full = {**recipe.defaults, **given}
    for k, v in full.items():
        if isinstance(v, bool) or not isinstance(v, int):
            raise BadParameter(f"{k} must be an integer")
    problem = recipe.check(full)
    if problem:
        raise BadParameter(f"{entry_id}: {problem}")
    return CatalogEntry(id=entry_id, params=full, **recipe.build(full))


def admissible_sweep(entry_id: str) -> list[dict]:
    """The swept parameter sets, keeping only the admissible ones."""
    recipe = _recipe(entry_id)
    return [p for p in recipe.sweep if recipe.check({**recipe.defaults, **p}) is None]


# -- verification -------------------------------------------------------------

@dataclass
class VerificationReport:
    id: str
    params: dict
    ksq_double_cover: int
    ksq_indices: int
    budget: SingularityBudget
    expected_ksq: int
    k_order: int
    h_order: int
    g_order: int
    bound_name: str
    named_value: Fraction
    sharp: bool
    sharpest: bounds.BoundVerdict | None
    attains_sharpest: bool
    verdicts: list = field(default_factory=list)
    assumptions: tuple = ()

    @property
    def ksq_agree(self) -> bool:
        return self.ksq_double_cover == self.ksq_indices == self.expected_ksq


def budget_for(e: CatalogEntry) -> SingularityBudget:
    if e.budget_mode == LOCALLY_TRIVIAL:
        return SingularityBudget(0, 0)
    if e.budget_mode == ETALE_FIBERS:
        return SingularityBudget(10 * e.fiber_count, 0)
    if e.budget_mode == SMOOTH_BRANCH:
        return SingularityBudget(ramification(e.surface, e.branch), 0)
    raise ValueError(f"unknown budget mode {e.budget_mode!r}")


def named_value(e: CatalogEntry, ksq: int) -> Fraction:
    """The closed form that the entry's group order is claimed to equal."""
    if e.bound_name == EXCEPTIONAL:
        for row in bounds.exceptional_table():
            if row.h_group.name == e.h_group and row.r == e.r and row.ksq == ksq:
                return Fraction(row.g_order)
        raise Mismatch(f"{e.id}: no exceptional row for {e.h_group}, r={e.r}, K^2={ksq}")
    if e.bound_name in REFERENCE_FORMULAS:
        slope, intercept = REFERENCE_FORMULAS[e.bound_name]
        return slope * ksq + intercept
    return bounds.FORMULA_BY_NAME[e.bound_name].value(ksq)


def verify(e: CatalogEntry) -> VerificationReport:
    """Cross-check one entry; raises Mismatch on any disagreement."""
    ksq_a = double_cover_ksq(e.surface, e.branch)
    budget = budget_for(e)
    ksq_b, _ = global_invariants(budget, e.base_genus)
    if not ksq_a == ksq_b == e.expected_ksq:
        raise Mismatch(f"{e.id}: K^2 paths disagree (expected {e.expected_ksq})", ksq_a, ksq_b)

    cap = bounds.k_order_cap(e.kind)
    if e.k_order > cap:
        raise Mismatch(f"{e.id}: |K| exceeds the cap for {e.kind} groups", e.k_order, cap)

    target = named_value(e, ksq_a)
    if e.g_order != target:
        raise Mismatch(f"{e.id}: |G| differs from {e.bound_name}", e.g_order, target)

    verdicts = bounds.evaluate(e.base_genus, ksq_a, e.kind, e.locally_trivial, e.minimal)
    best = bounds.sharpest(verdicts)
    if best is not None and e.g_order > best.bound_value:
        raise Mismatch(f"{e.id}: |G| exceeds {best.formula_name}", e.g_order, best.bound_value)

    return VerificationReport(
        id=e.id, params=dict(e.params), ksq_double_cover=ksq_a, ksq_indices=ksq_b,
        budget=budget, expected_ksq=e.expected_ksq, k_order=e.k_order,
        h_order=e.h_order, g_order=e.g_order, bound_name=e.bound_name,
        named_value=target, sharp=e.g_order == target, sharpest=best,
        attains_sharpest=best is not None and e.g_order == best.bound_value,
        verdicts=verdicts,
        assumptions=e.assumptions)


def verify_all() -> list[VerificationReport]:
    return [verify(instantiate(i, p)) for i in ENTRY_IDS for p in admissible_sweep(i)]
