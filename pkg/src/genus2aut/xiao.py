"""
Relative invariants of a relatively minimal genus 2 fibration from its
singularity indices:

    K^2_{S/C} = K_S^2 - 8(g(C)-1) = s2/5 + 7 s3/5 = 2n - s3
    chi_f     = chi(O_S) - (g(C)-1) = s2/10 + s3/5 = n - s3

Both right-hand sides are integers exactly when ``s2 + 2 s3 = 0 (mod 10)``:
that congruence gives chi_f, and K^2_{S/C} = 2 chi_f + s3 follows.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import NonIntegral


@dataclass(frozen=True)
class SingularityBudget:
    s2_total: int
    s3_total: int = 0

    def __post_init__(self):
        if self.s2_total < 0 or self.s3_total < 0:
            raise ValueError("singularity indices are non-negative")

    def __add__(self, other):
        return SingularityBudget(self.s2_total + other.s2_total,
                                 self.s3_total + other.s3_total)


@dataclass(frozen=True)
class RelativeInvariants:
    ksq_rel: int
    chi_f: int
    n: int


def validate_budget(b: SingularityBudget) -> bool:
    return (b.s2_total + 2 * b.s3_total) % 10 == 0


def relative_invariants(b: SingularityBudget) -> RelativeInvariants:
    if not validate_budget(b):
        raise NonIntegral(
            f"s2 + 2 s3 = {b.s2_total + 2 * b.s3_total} is not divisible by 10"
        )
    chi_f = (b.s2_total + 2 * b.s3_total) // 10
    ksq_rel = (b.s2_total + 7 * b.s3_total) // 5
    return RelativeInvariants(ksq_rel=ksq_rel, chi_f=chi_f, n=chi_f + b.s3_total)


def global_invariants(b: SingularityBudget, base_genus: int) -> tuple[int, int]:
    """(K_S^2, chi(O_S)) for a fibration over a curve of genus ``base_genus``."""
    if base_genus < 0:
        raise ValueError("base genus must be non-negative")
    rel = relative_invariants(b)
    return rel.ksq_rel + 8 * (base_genus - 1), rel.chi_f + (base_genus - 1)


def is_locally_trivial(b: SingularityBudget) -> bool:
    return relative_invariants(b).ksq_rel == 0
