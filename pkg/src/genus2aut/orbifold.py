"""
Riemann-Hurwitz arithmetic for group actions on curves.

A quotient C -> X = C/H by a group of order n with branch periods r_i obeys

    2g(C) - 2 = n (2g(X) - 2) + n * sum(1 - 1/r_i).

The searches here are exhaustive over an explicit box and return a
certificate bounding every signature outside the box, so an optimum is only
reported when nothing outside the box can beat it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import IndivisibleOrder, LimitsTooSmall


@dataclass(frozen=True, order=True)
class OrbifoldSignature:
    quotient_genus: int
    periods: tuple[int, ...] = ()
    # ramification index of a distinguished point; 1 means unramified
    marked_period: int | None = None

    def __post_init__(self):
        if self.quotient_genus < 0:
            raise ValueError("quotient genus must be non-negative")
        periods = tuple(self.periods)
        if any(r < 2 for r in periods):
            raise ValueError(f"periods must be >= 2, got {periods}")
        if list(periods) != sorted(periods):
            raise ValueError(f"periods must be sorted, got {periods}")
        object.__setattr__(self, "periods", periods)
        r = self.marked_period
        if r is not None and r != 1 and r not in periods:
            raise ValueError(f"marked period {r} is not among {periods}")

    def __str__(self):
        body = ",".join(map(str, self.periods))
        s = f"({self.quotient_genus};{body})"
        if self.marked_period is not None:
            s += f" r={self.marked_period}"
        return s


def parse_signature(text: str) -> OrbifoldSignature:
    """Read ``"h;r1,r2,..."`` (an optional ``"(...)"`` wrapper is allowed)."""
    text = text.strip().strip("()")
    h, _, rest = text.partition(";")
    periods = tuple(sorted(int(x) for x in rest.split(",") if x.strip()))
    return OrbifoldSignature(int(h), periods)


def orbifold_value(sig: OrbifoldSignature) -> Fraction:
    """``2h - 2 + sum(1 - 1/r_i)``: minus the orbifold Euler characteristic."""
    return 2 * sig.quotient_genus - 2 + sum((1 - Fraction(1, r) for r in sig.periods),
                                            Fraction(0))


def hurwitz_genus(n: int, sig: OrbifoldSignature) -> Fraction:
    if n < 1:
        raise ValueError("group order must be positive")
    return 1 + n * orbifold_value(sig) / 2


def eq1_genus(k: int, g_prime: int, n_fixed: int) -> Fraction:
    """Genus of a Z_k-cover of a genus ``g_prime`` curve with ``n_fixed``
    totally ramified points: ``2g - 2 = 2k g' - 2k + n (k - 1)``."""
    return Fraction(2 * k * g_prime - 2 * k + n_fixed * (k - 1) + 2, 2)


_J_DIVISOR = {"generic": 2, "j1728": 4, "j0": 6}


def elliptic_min_orbit(h_order: int, j_class: str) -> int:
    """Size of the smallest orbit of a finite group acting on an elliptic curve."""
    try:
        d = _J_DIVISOR[j_class]
    except KeyError:
        raise ValueError(f"j_class must be one of {sorted(_J_DIVISOR)}") from None
    if h_order < 1 or h_order % d:
        raise IndivisibleOrder(f"|H| = {h_order} is not divisible by {d}")
    return h_order // d


def wiman_bound(genus: int, odd_stabilizers_only: bool) -> int:
    if genus < 2:
        raise ValueError("genus must be at least 2")
    return 3 * genus + 3 if odd_stabilizers_only else 4 * genus + 2


# -- signature minimisation ------------------------------------------------

@dataclass(frozen=True)
class SearchLimits:
    max_h: int = 2
    max_periods: int = 5
    max_period_value: int = 100


DEFAULT_LIMITS = SearchLimits()

_INF = 0  # period label for "larger than the box", contributing the term 1


@dataclass(frozen=True)
class OrbifoldOptimum:
    value: Fraction
    witness: OrbifoldSignature
    limits: SearchLimits
    # lower bounds for the objective outside the box, each strictly above value
    certificate: dict = field(default_factory=dict)


def _term(r: int) -> Fraction:
    return Fraction(1) if r == _INF else 1 - Fraction(1, r)


def _half(periods: Sequence[int], m: int) -> tuple[Fraction, int]:
    """Least value of 1/(2r) over r in periods and {1}, with the chosen r."""
    if not periods:
        return Fraction(1, 2), 1
    top = periods[-1]
    if top == _INF:
        # paired with the slack of this period: 1 - 1/r + 1/(2r) >= 1 - 1/(2(m+1))
        return Fraction(1, 2 * (m + 1)), _INF
    return Fraction(1, 2 * top), top


def _best_in_box(h_values, values, max_len, half_term, m, cutoff=None,
                 require_inf=False):
    """Exhaustive DFS for min objective over signatures with positive
    ``2h - 2 + sum(terms)``.

    ``values`` is ascending; ``_INF`` may appear last.  Each ``_INF`` period
    costs ``1/(m+1)`` of slack, so the reported value is a lower bound for
    every genuine signature it stands for.  Returns ``(value, h, periods)``
    or ``None`` when nothing is <= ``cutoff``.
    """
    best = None
    slack = Fraction(1, m + 1)
    floor_half = Fraction(1, 2 * m) if half_term else Fraction(0)
    if half_term and _INF in values:
        floor_half = Fraction(1, 2 * (m + 1))

    def consider(h, periods, base, n_inf):
        nonlocal best
        if base <= 0 or (require_inf and not n_inf):
            return
        value = base - n_inf * slack
        if half_term:
            value += _half(periods, m)[0]
        key = (value, h, tuple(periods))
        if cutoff is not None and value > cutoff:
            return
        if best is None or key < best:
            best = key

    def bound_exceeded(lower):
        limit = cutoff if best is None else best[0]
        return limit is not None and lower > limit

    def dfs(h, periods, base, n_inf, start):
        consider(h, periods, base, n_inf)
        if len(periods) == max_len:
            return
        for idx in range(start, len(values)):
            r = values[idx]
            nb = base + _term(r)
            ni = n_inf + (r == _INF)
            if bound_exceeded(nb - ni * slack + floor_half):
                break
            periods.append(r)
            dfs(h, periods, nb, ni, idx)
            periods.pop()

    for h in h_values:
        dfs(h, [], Fraction(2 * h - 2), 0, 0)
    return best


def _count_tail(limits: SearchLimits, min_h: int) -> Fraction:
    # every period adds at least 1/2
    return 2 * min_h - 2 + Fraction(limits.max_periods + 1, 2)


def _h_tail(limits: SearchLimits) -> Fraction:
    h = limits.max_h + 1
    # h = 1 needs one period (>= 1/2) to be positive
    return Fraction(2 * h - 2) if h >= 2 else Fraction(1, 2)


def minimize_orbifold(half_term: bool = False, limits: SearchLimits = DEFAULT_LIMITS,
                      min_h: int = 0) -> OrbifoldOptimum:
    """Minimise ``2h - 2 [+ 1/(2r)] + sum(1 - 1/r_i)`` subject to
    ``2h - 2 + sum(1 - 1/r_i) > 0``.

    With ``half_term`` the marked index r ranges over the periods and 1.
    Ties go to the lexicographically smallest ``(h, periods)``.
    """
    m = limits.max_period_value
    if min_h > limits.max_h or m < 2:
        raise LimitsTooSmall(f"empty search box {limits}")
    values = list(range(2, m + 1))
    found = _best_in_box(range(min_h, limits.max_h + 1), values,
                         limits.max_periods, half_term, m)
    if found is None:
        raise LimitsTooSmall(f"no admissible signature in {limits}")
    value, h, periods = found
    marked = _half(periods, m)[1] if half_term else None
    witness = OrbifoldSignature(h, periods, marked)

    tail = _best_in_box(range(min_h, limits.max_h + 1), values + [_INF],
                        limits.max_periods, half_term, m, cutoff=value,
                        require_inf=True)
    certificate = {
        "h_beyond_box": _h_tail(limits),
        "periods_beyond_box": _count_tail(limits, min_h),
        # None: nothing with a period above the box reaches the optimum
        "period_value_beyond_box": None if tail is None else tail[0],
    }
    for name, lower in certificate.items():
        if lower is not None and lower <= value:
            raise LimitsTooSmall(
                f"{name}: signatures outside {limits} may reach {lower} <= {value}"
            )
    return OrbifoldOptimum(value, witness, limits, certificate)


def hurwitz_order_bound(genus: int, limits: SearchLimits = DEFAULT_LIMITS) -> int:
    """Largest n = (2g-2)/v over positive orbifold values v, i.e. 84(g-1)."""
    if genus < 2:
        raise ValueError("genus must be at least 2")
    best = minimize_orbifold(False, limits)
    return math.floor((2 * genus - 2) / best.value)


# -- signatures of a given cover -------------------------------------------

def signatures_for(n: int, genus: int, values: Sequence[int] | None = None,
                   max_h: int | None = None) -> Iterator[OrbifoldSignature]:
    """All (h; r_1..r_s) with periods from ``values`` giving ``genus`` for order n.

    ``values`` defaults to the divisors of n that are at least 2.  Yields in
    lexicographic order.
    """
    if values is None:
        values = [d for d in range(2, n + 1) if n % d == 0]
    values = sorted(set(values))
    chi = Fraction(2 * genus - 2, n)
    h = 0
    while 2 * h - 2 <= chi and (max_h is None or h <= max_h):
        target = chi - (2 * h - 2)
        yield from (OrbifoldSignature(h, p) for p in _period_sums(values, target))
        h += 1


def _period_sums(values, target):
    out = []

    def dfs(start, acc, periods):
        if acc == target:
            out.append(tuple(periods))
            return
        for idx in range(start, len(values)):
            t = 1 - Fraction(1, values[idx])
            if acc + t > target:
                break
            periods.append(values[idx])
            dfs(idx, acc + t, periods)
            periods.pop()

    dfs(0, Fraction(0), [])
    return out


# -- cyclic actions ----------------------------------------------------------

@dataclass(frozen=True)
class CyclicActionDatum:
    group_order: int
    signature: OrbifoldSignature
    generating_elements: tuple[int, ...]

    def problems(self) -> list[str]:
        n, sig, xs = self.group_order, self.signature, self.generating_elements
        issues = []
        if len(xs) != len(sig.periods):
            issues.append("one residue per period is required")
        for x, r in zip(xs, sig.periods):
            if n // math.gcd(x, n) != r:
                issues.append(f"residue {x} does not have order {r} mod {n}")
        if sum(xs) % n:
            issues.append(f"residues sum to {sum(xs) % n} mod {n}")
        if sig.quotient_genus == 0 and math.gcd(n, *xs) != 1:
            issues.append("residues do not generate the group")
        return issues

    @property
    def valid(self) -> bool:
        return not self.problems()

    @property
    def genus(self) -> Fraction:
        return hurwitz_genus(self.group_order, self.signature)


def _realize(n: int, sig: OrbifoldSignature) -> tuple[int, ...] | None:
    """Lexicographically least residues realising ``sig`` for Z_n, if any."""
    periods = sig.periods
    if not periods:
        return () if sig.quotient_genus > 0 else None
    choices = [[(n // r) * u for u in range(1, r) if math.gcd(u, r) == 1]
               for r in periods]
    last = periods[-1]
    need_gen = sig.quotient_genus == 0

    def dfs(i, acc, g, xs):
        if i == len(periods) - 1:
            x = (-acc) % n
            if x == 0 or n // math.gcd(x, n) != last:
                return None
            if need_gen and math.gcd(g, x) != 1:
                return None
            return tuple(xs + [x])
        for x in choices[i]:
            found = dfs(i + 1, acc + x, math.gcd(g, x), xs + [x])
            if found is not None:
                return found
        return None

    return dfs(0, 0, n, [])


def cyclic_actions(n: int, genus: int, odd_stabilizers_only: bool = False
                   ) -> Iterator[CyclicActionDatum]:
    """Every realisable signature of Z_n on a curve of the given genus."""
    values = [d for d in range(2, n + 1) if n % d == 0]
    if odd_stabilizers_only:
        values = [d for d in values if d % 2]
    for sig in signatures_for(n, genus, values):
        xs = _realize(n, sig)
        if xs is not None:
            yield CyclicActionDatum(n, sig, xs)


def cyclic_action_oracle(genus: int, odd_stabilizers_only: bool = False,
                         max_order: int | None = None) -> tuple[int, CyclicActionDatum]:
    """Brute-force the largest cyclic group acting on a genus ``genus`` curve."""
    if genus < 2:
        raise ValueError("genus must be at least 2")
    if max_order is None:
        # no automorphism group of the curve is larger than this
        max_order = 84 * (genus - 1)
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    for n in range(max_order, 1, -1):
        for datum in cyclic_actions(n, genus, odd_stabilizers_only):
            return n, datum
    # unreachable for genus >= 2: the hyperelliptic involution always exists
    return 1, CyclicActionDatum(1, OrbifoldSignature(genus), ())
