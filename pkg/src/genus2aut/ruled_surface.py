"""
Intersection calculus on relatively minimal ruled surfaces.

Divisor classes are written in the basis (C0, F), where C0 is a section of
least self-intersection ``C0^2 = -e`` and F is a fiber of the ruling, so the
pairing is determined by ``C0.C0 = -e``, ``C0.F = 1`` and ``F.F = 0``.

A product ``C x P^1`` is modelled with ``e = 0``; its P^1 factor is the
fiber of the ruling and C0 is the class of ``C x {pt}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import OddClass

HIRZEBRUCH = "hirzebruch"
PRODUCT = "product"


@dataclass(frozen=True)
class RuledSurfaceModel:
    base_genus: int
    kind: str = HIRZEBRUCH
    e: int = 0

    def __post_init__(self):
        if self.kind not in (HIRZEBRUCH, PRODUCT):
            raise ValueError(f"unknown ruled surface kind {self.kind!r}")
        if self.base_genus < 0:
            raise ValueError("base genus must be non-negative")
        if self.e < 0:
            raise ValueError("e must be non-negative")
        if self.kind == PRODUCT and self.e != 0:
            raise ValueError("a product surface has e = 0")

    @classmethod
    def hirzebruch(cls, e: int, base_genus: int = 0) -> "RuledSurfaceModel":
        return cls(base_genus=base_genus, kind=HIRZEBRUCH, e=e)

    @classmethod
    def product(cls, base_genus: int) -> "RuledSurfaceModel":
        return cls(base_genus=base_genus, kind=PRODUCT, e=0)

    def __str__(self):
        if self.kind == PRODUCT:
            return f"product(g={self.base_genus})"
        return f"hirzebruch(e={self.e}, g={self.base_genus})"


@dataclass(frozen=True)
class DivisorClass:
    """The numerical class ``a*C0 + b*F``; coefficients may be rational."""

    a: int | Fraction
    b: int | Fraction

    def __add__(self, other):
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return DivisorClass(-self.a, -self.b)

    def __mul__(self, k):
        return DivisorClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    def halve(self) -> "DivisorClass":
        return DivisorClass(Fraction(self.a, 2), Fraction(self.b, 2))

    def __iter__(self):
        yield self.a
        yield self.b

    def __str__(self):
        return f"{self.a}C0{'+' if self.b >= 0 else '-'}{abs(self.b)}F"


C0 = DivisorClass(1, 0)
FIBER = DivisorClass(0, 1)


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def intersect(s: RuledSurfaceModel, d1: DivisorClass, d2: DivisorClass):
    return _normalize(-s.e * d1.a * d2.a + d1.a * d2.b + d2.a * d1.b)


def self_intersection(s: RuledSurfaceModel, d: DivisorClass):
    return _normalize(d.a * (2 * d.b - d.a * s.e))


def canonical_class(s: RuledSurfaceModel) -> DivisorClass:
    g = s.base_genus
    if s.kind == PRODUCT:
        return DivisorClass(-2, 2 * g - 2)
    return DivisorClass(-2, -(s.e + 2 - 2 * g))


def relative_canonical(s: RuledSurfaceModel) -> DivisorClass:
    """K_P minus the pullback of K_C, i.e. ``-2*C0 - e*F``."""
    return canonical_class(s) - DivisorClass(0, 2 * s.base_genus - 2)


def check_even(s: RuledSurfaceModel, r: DivisorClass) -> None:
    if r.a % 2:
        raise OddClass(f"C0-coefficient of {r} is odd")
    # Over a base of positive genus, Pic^0 is divisible, so an odd fiber
    # degree on a product is still halvable; on P^1 x P^1 and on the
    # Hirzebruch models it is not.
    need_even_b = s.kind == HIRZEBRUCH or s.base_genus == 0
    if need_even_b and r.b % 2:
        raise OddClass(f"F-coefficient of {r} is odd on {s}")


def double_cover_ksq(s: RuledSurfaceModel, r: DivisorClass) -> int:
    """K^2 of the double cover of ``s`` branched along ``r``.

    Exact when ``r`` has at most negligible singularities:
    ``K_S^2 = 2 (K_P + R/2)^2``.
    """
    check_even(s, r)
    d = canonical_class(s) + r.halve()
    value = 2 * Fraction(self_intersection(s, d))
    if value.denominator != 1:
        raise OddClass(f"(K_P + R/2)^2 is not a half-integer for {r}")
    return int(value)


def ramification(s: RuledSurfaceModel, r: DivisorClass) -> int:
    """Ramification of a smooth horizontal divisor over the base: R.(R+K_{P/C})."""
    return intersect(s, r, r + relative_canonical(s))
