"""
Finite subgroups of Aut(P^1) and their orbit structure.

Dihedral groups are named by their order, as in ``D12`` for the symmetry
group of the hexagon; ``dihedral(n)`` stores ``n`` and has order ``2n``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

CYCLIC = "cyclic"
DIHEDRAL = "dihedral"
TETRAHEDRAL = "tetrahedral"
OCTAHEDRAL = "octahedral"
ICOSAHEDRAL = "icosahedral"

_POLYHEDRAL = {
    # family: (order, exceptional orbit sizes)
    TETRAHEDRAL: (12, (4, 4, 6)),
    OCTAHEDRAL: (24, (6, 8, 12)),
    ICOSAHEDRAL: (60, (12, 20, 30)),
}
_POLY_LETTER = {TETRAHEDRAL: "T", OCTAHEDRAL: "O", ICOSAHEDRAL: "I"}


@dataclass(frozen=True, order=True)
class FiniteMobiusGroup:
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family in (CYCLIC, DIHEDRAL):
            if self.n < 1:
                raise ValueError(f"{self.family} group needs n >= 1")
        elif self.family in _POLYHEDRAL:
            if self.n != 0:
                raise ValueError(f"{self.family} group takes no parameter")
        else:
            raise ValueError(f"unknown group family {self.family!r}")

    @property
    def order(self) -> int:
        if self.family == CYCLIC:
            return self.n
        if self.family == DIHEDRAL:
            return 2 * self.n
        return _POLYHEDRAL[self.family][0]

    @property
    def name(self) -> str:
        if self.family == CYCLIC:
            return "1" if self.n == 1 else f"Z{self.n}"
        if self.family == DIHEDRAL:
            return f"D{2 * self.n}"
        return f"{_POLY_LETTER[self.family]}{self.order}"

    def __str__(self):
        return self.name

    def exceptional_orbits(self) -> tuple[int, ...]:
        """Sizes of the non-regular orbits, with multiplicity."""
        if self.family == CYCLIC:
            return () if self.n == 1 else (1, 1)
        if self.family == DIHEDRAL:
            if self.n == 1:
                return (1, 1)
            if self.n == 2:
                return (2, 2, 2)
            return (2, self.n, self.n)
        return _POLYHEDRAL[self.family][1]


def cyclic(n: int) -> FiniteMobiusGroup:
    return FiniteMobiusGroup(CYCLIC, n)


def dihedral(n: int) -> FiniteMobiusGroup:
    return FiniteMobiusGroup(DIHEDRAL, n)


def tetrahedral() -> FiniteMobiusGroup:
    return FiniteMobiusGroup(TETRAHEDRAL)


def octahedral() -> FiniteMobiusGroup:
    return FiniteMobiusGroup(OCTAHEDRAL)


def icosahedral() -> FiniteMobiusGroup:
    return FiniteMobiusGroup(ICOSAHEDRAL)


TRIVIAL = cyclic(1)


def group_from_name(name: str) -> FiniteMobiusGroup:
    """Inverse of ``FiniteMobiusGroup.name``: ``Z6``, ``D12``, ``O24``, ``1``."""
    if name == "1":
        return TRIVIAL
    m = re.fullmatch(r"([ZDTOI])(\d+)", name)
    if not m:
        raise ValueError(f"unrecognised group name {name!r}")
    letter, num = m.group(1), int(m.group(2))
    if letter == "Z" and num >= 1:
        return cyclic(num)
    if letter == "D" and num >= 2 and num % 2 == 0:
        return dihedral(num // 2)
    for family, let in _POLY_LETTER.items():
        if let == letter and _POLYHEDRAL[family][0] == num:
            return FiniteMobiusGroup(family)
    raise ValueError(f"unrecognised group name {name!r}")


def orbit_sizes(g: FiniteMobiusGroup) -> set[int]:
    return set(g.exceptional_orbits()) | {g.order}


def has_invariant_set(g: FiniteMobiusGroup, size: int) -> bool:
    """Whether some union of orbits has exactly ``size`` points.

    Each exceptional orbit can be used once; regular orbits of size |g|
    are unlimited.
    """
    reachable = {0}
    for orbit in g.exceptional_orbits():
        reachable |= {x + orbit for x in reachable if x + orbit <= size}
    return any((size - x) % g.order == 0 for x in reachable)


# Groups with an invariant six-point set in the table below, stated in
# descending order.  The orbit count also admits D8, whose invariant sextics
# are {0, oo} together with the fourth roots of a unit u(t); over a disc this
# is either the Z4 family (u(0) = 0, no involution x -> c/x survives) or a
# constant octahedral configuration (stabilizer O24).
SIX_POINT_STABILIZERS = (
    octahedral(),
    tetrahedral(),
    dihedral(6),
    dihedral(3),
    cyclic(6),
    cyclic(5),
    dihedral(2),
    cyclic(4),
    cyclic(3),
    cyclic(2),
    TRIVIAL,
)
EXCLUDED_BY_FAMILY_ARGUMENT = (dihedral(4),)


def candidate_groups(max_n: int = 12) -> list[FiniteMobiusGroup]:
    groups = [cyclic(n) for n in range(1, max_n + 1)]
    groups += [dihedral(n) for n in range(2, max_n + 1)]
    groups += [tetrahedral(), octahedral(), icosahedral()]
    return groups


def derive_six_point_stabilizers(max_n: int = 12) -> list[FiniteMobiusGroup]:
    """Recompute the list from orbit arithmetic alone.

    Cyclic and dihedral groups with n > 6 have only orbits of size 1, 2,
    n or 2n, so ``max_n = 12`` already covers every possibility.
    """
    found = [g for g in candidate_groups(max_n) if has_invariant_set(g, 6)]
    return sorted(found, key=lambda g: -g.order)


@lru_cache(maxsize=None)
def _self_check() -> None:
    derived = set(derive_six_point_stabilizers())
    expected = set(SIX_POINT_STABILIZERS) | set(EXCLUDED_BY_FAMILY_ARGUMENT)
    if derived != expected:
        raise RuntimeError(
            "six-point stabilizer table disagrees with orbit arithmetic: "
            f"derived {sorted(map(str, derived))}, "
            f"tabulated {sorted(map(str, expected))}"
        )


def six_point_stabilizers() -> list[FiniteMobiusGroup]:
    _self_check()
    return list(SIX_POINT_STABILIZERS)


def lift_order(kbar_order: int) -> int:
    """Order of the fiberwise group once the hyperelliptic involution is added."""
    if kbar_order < 1:
        raise ValueError("group order must be positive")
    return 2 * kbar_order
