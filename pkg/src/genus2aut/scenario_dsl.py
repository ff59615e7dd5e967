"""
A small line-oriented format describing a genus 2 fibration, and the
analysis that turns it into invariants and bound verdicts.

    # twelve full fibers over the icosahedron vertices
    base_genus = 0
    surface = product
    branch = 6,12
    germ group=O24 case=0 count=12 orbit=fixed:5

``key = value`` lines may come in any order; each key at most once.
``germ`` lines repeat.  ``#`` starts a comment.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from . import bounds, germs
from .bounds import BoundVerdict, GroupKind
from .errors import Mismatch, ScenarioSyntaxError, SemanticError, UnknownCase
from .exact import fmt, from_json_number, to_json_number
from .ruled_surface import (HIRZEBRUCH, PRODUCT, DivisorClass, RuledSurfaceModel,
                            double_cover_ksq)
from .xiao import RelativeInvariants, SingularityBudget, global_invariants, relative_invariants

GERM_GROUPS = ("Z2", "Z3", "Z4", "Z5", "Z6", "D4", "D6", "D12", "T12", "O24")
GERM_ATTRS = ("group", "case", "k", "count", "orbit")
BIG = "big"

LOWER_BOUND_WARNING = "budget uses lower bounds; K^2 is a lower bound"
OVERRIDE_WARNING = "s2/s3 overrides replace the germ-derived budget"
EMPTY_WARNING = "no singular fibers described; budget taken as (0, 0)"
CONDITIONAL_WARNING = "some germ rows assume s3 = 0 on that fiber"

_INT = re.compile(r"[+-]?\d+")
_ETALE_GROUPS = ("O24", "T12", "D12")


@dataclass(frozen=True)
class GermLine:
    group: str
    case: int
    count: int
    k: int | None = None
    # None (unstated), "big", or the order of the base stabilizer
    orbit: str | int | None = None

    def germ_case(self) -> germs.GermCase:
        return germs.germ_case(self.group, self.case, self.k)

    def stabilizer(self) -> int | None:
        if self.orbit is None:
            return None
        return 1 if self.orbit == BIG else self.orbit

    def render(self) -> str:
        parts = [f"group={self.group}", f"case={self.case}"]
        if self.k is not None:
            parts.append(f"k={self.k}")
        parts.append(f"count={self.count}")
        if self.orbit is not None:
            parts.append(f"orbit={BIG if self.orbit == BIG else f'fixed:{self.orbit}'}")
        return "germ " + " ".join(parts)


@dataclass(frozen=True)
class FibrationScenario:
    base_genus: int
    surface: RuledSurfaceModel | None = None
    branch: DivisorClass | None = None
    germs: tuple[GermLine, ...] = ()
    s2_override: int | None = None
    s3_override: int | None = None
    group_kind: GroupKind | None = None
    locally_trivial: bool | None = None
    minimal_surface: bool | None = None

    @property
    def kind(self) -> GroupKind:
        return self.group_kind or GroupKind.FULL

    @property
    def minimal(self) -> bool:
        return bool(self.minimal_surface)


# -- parsing -------------------------------------------------------------------

def _int_value(text, line, col, what, minimum=0) -> int:
    if not _INT.fullmatch(text):
        raise ScenarioSyntaxError(line, col, f"{what} must be an integer, got {text!r}")
    v = int(text)
    if minimum is not None and v < minimum:
        raise ScenarioSyntaxError(line, col, f"{what} must be at least {minimum}")
    return v


def _bool_value(text, line, col, what) -> bool:
    if text not in ("true", "false"):
        raise ScenarioSyntaxError(line, col, f"{what} must be true or false")
    return text == "true"


def _surface_value(text, line, col):
    if text == PRODUCT:
        return (PRODUCT, 0)
    if text.startswith(HIRZEBRUCH + ":"):
        e = text[len(HIRZEBRUCH) + 1:]
        return (HIRZEBRUCH, _int_value(e, line, col + len(HIRZEBRUCH) + 1, "e"))
    raise ScenarioSyntaxError(line, col, f"surface must be product or hirzebruch:<e>, got {text!r}")


def _branch_value(text, line, col):
    parts = text.split(",")
    if len(parts) != 2:
        raise ScenarioSyntaxError(line, col, "branch must be <a>,<b>")
    a = _int_value(parts[0].strip(), line, col, "branch a", minimum=None)
    b = _int_value(parts[1].strip(), line, col, "branch b", minimum=None)
    return DivisorClass(a, b)


def _group_value(text, line, col):
    try:
        return GroupKind(text)
    except ValueError:
        raise ScenarioSyntaxError(line, col, "group must be full, abelian or cyclic") from None


_KEY_PARSERS = {
    "base_genus": lambda t, l, c: _int_value(t, l, c, "base_genus"),
    "surface": _surface_value,
    "branch": _branch_value,
    "s2": lambda t, l, c: _int_value(t, l, c, "s2"),
    "s3": lambda t, l, c: _int_value(t, l, c, "s3"),
    "group": _group_value,
    "locally_trivial": lambda t, l, c: _bool_value(t, l, c, "locally_trivial"),
    "minimal": lambda t, l, c: _bool_value(t, l, c, "minimal"),
}


def _parse_germ(body: str, line: int, offset: int) -> GermLine:
    attrs: dict[str, object] = {}
    for m in re.finditer(r"\S+", body):
        col = offset + m.start() + 1
        token = m.group()
        name, eq, value = token.partition("=")
        if not eq or not value:
            raise ScenarioSyntaxError(line, col, f"expected attr=value, got {token!r}")
        if name not in GERM_ATTRS:
            raise ScenarioSyntaxError(line, col, f"unknown germ attribute {name!r}")
        if name in attrs:
            raise ScenarioSyntaxError(line, col, f"duplicate germ attribute {name!r}")
        vcol = col + len(name) + 1
        if name == "group":
            if value not in GERM_GROUPS:
                raise ScenarioSyntaxError(line, vcol, f"unknown germ group {value!r}")
            attrs[name] = value
        elif name == "orbit":
            if value == BIG:
                attrs[name] = BIG
            elif value.startswith("fixed:"):
                attrs[name] = _int_value(value[6:], line, vcol + 6, "stabilizer order", 1)
            else:
                raise ScenarioSyntaxError(line, vcol, "orbit must be big or fixed:<n>")
        else:
            attrs[name] = _int_value(value, line, vcol, name, 0 if name == "case" else 1)
    for req in ("group", "case", "count"):
        if req not in attrs:
            raise ScenarioSyntaxError(line, offset + 1, f"germ line needs {req}=")
    return GermLine(group=attrs["group"], case=attrs["case"], count=attrs["count"],
                    k=attrs.get("k"), orbit=attrs.get("orbit"))


def parse(text: str) -> FibrationScenario:
    values: dict[str, object] = {}
    germ_lines: list[tuple[int, GermLine]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].rstrip()
        stripped = content.lstrip()
        if not stripped:
            continue
        indent = len(content) - len(stripped)
        m = re.match(r"germ(\s+|$)", stripped)
        if m:
            germ_lines.append((lineno, _parse_germ(stripped[m.end():], lineno,
                                                   indent + m.end())))
            continue
        key, eq, value = stripped.partition("=")
        key = key.strip()
        if not eq:
            raise ScenarioSyntaxError(lineno, indent + 1, f"expected key = value, got {stripped!r}")
        if key not in _KEY_PARSERS:
            raise ScenarioSyntaxError(lineno, indent + 1, f"unknown key {key!r}")
        if key in values:
            raise ScenarioSyntaxError(lineno, indent + 1, f"duplicate key {key!r}")
        vstart = indent + len(stripped.partition("=")[0]) + 1
        vstart += len(value) - len(value.lstrip())
        value = value.strip()
        if not value:
            raise ScenarioSyntaxError(lineno, vstart + 1, f"missing value for {key!r}")
        values[key] = _KEY_PARSERS[key](value, lineno, vstart + 1)
    if "base_genus" not in values:
        raise ScenarioSyntaxError(1, 1, "missing base_genus")
    return _build(values, germ_lines)


def _build(values: dict, germ_lines: list[tuple[int, GermLine]]) -> FibrationScenario:
    g = values["base_genus"]
    surface = None
    if "surface" in values:
        kind, e = values["surface"]
        surface = (RuledSurfaceModel.product(g) if kind == PRODUCT
                   else RuledSurfaceModel.hirzebruch(e, g))
    branch = values.get("branch")
    if branch is not None and surface is None:
        raise SemanticError("branch needs a surface")
    for lineno, gl in germ_lines:
        try:
            germs.lookup(gl.germ_case())
        except UnknownCase as exc:
            raise SemanticError(f"line {lineno}: {exc}") from None
    return FibrationScenario(
        base_genus=g, surface=surface, branch=branch,
        germs=tuple(gl for _, gl in germ_lines),
        s2_override=values.get("s2"), s3_override=values.get("s3"),
        group_kind=values.get("group"), locally_trivial=values.get("locally_trivial"),
        minimal_surface=values.get("minimal"))


# -- canonical form ------------------------------------------------------------

def _surface_text(s: RuledSurfaceModel) -> str:
    return PRODUCT if s.kind == PRODUCT else f"{HIRZEBRUCH}:{s.e}"


def _key_values(s: FibrationScenario) -> dict:
    """Set keys in canonical order, as JSON-friendly values."""
    kv: dict = {"base_genus": s.base_genus}
    if s.surface is not None:
        kv["surface"] = _surface_text(s.surface)
    if s.branch is not None:
        kv["branch"] = f"{s.branch.a},{s.branch.b}"
    if s.s2_override is not None:
        kv["s2"] = s.s2_override
    if s.s3_override is not None:
        kv["s3"] = s.s3_override
    if s.group_kind is not None:
        kv["group"] = s.group_kind.value
    if s.locally_trivial is not None:
        kv["locally_trivial"] = s.locally_trivial
    if s.minimal_surface is not None:
        kv["minimal"] = s.minimal_surface
    return kv


def _value_text(v) -> str:
    return str(v).lower() if isinstance(v, bool) else str(v)


def dump(s: FibrationScenario) -> str:
    """Canonical text: keys in a fixed order, then germ lines as given."""
    lines = [f"{k} = {_value_text(v)}" for k, v in _key_values(s).items()]
    lines += [gl.render() for gl in s.germs]
    return "\n".join(lines) + "\n"


def scenario_to_dict(s: FibrationScenario) -> dict:
    out = _key_values(s)
    out["germs"] = [gl.render()[len("germ "):] for gl in s.germs]
    return out


def scenario_from_dict(d: dict) -> FibrationScenario:
    lines = [f"{k} = {_value_text(v)}" for k, v in d.items() if k != "germs"]
    lines += [f"germ {g}" for g in d.get("germs", [])]
    return parse("\n".join(lines) + "\n")


# -- analysis ------------------------------------------------------------------

@dataclass(frozen=True)
class Invariants:
    relative: RelativeInvariants
    ksq: int
    chi: int
    ksq_double_cover: int | None = None


@dataclass
class ScenarioReport:
    scenario: FibrationScenario
    budget: SingularityBudget
    budget_is_lower_bound: bool
    invariants: Invariants
    verdicts: list[BoundVerdict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def _germ_budget(s: FibrationScenario, warnings: list[str]) -> tuple[SingularityBudget, bool]:
    s2 = s3 = 0
    lower = conditional = False
    for gl in s.germs:
        idx = germs.classify(gl.germ_case())
        s2 += idx.s2_min * gl.count
        s3 += idx.s3 * gl.count
        lower |= not idx.exact
        conditional |= idx.conditional
    if conditional:
        warnings.append(CONDITIONAL_WARNING)
    return SingularityBudget(s2, s3), lower


def _budget(s: FibrationScenario, warnings: list[str]) -> tuple[SingularityBudget, bool]:
    has_override = s.s2_override is not None or s.s3_override is not None
    if s.germs and has_override:
        warnings.append(OVERRIDE_WARNING)
    if has_override:
        derived = _germ_budget(s, []) if s.germs else (SingularityBudget(0, 0), False)
        s2 = s.s2_override if s.s2_override is not None else derived[0].s2_total
        s3 = s.s3_override if s.s3_override is not None else derived[0].s3_total
        # only s2 carries lower bounds
        return SingularityBudget(s2, s3), s.s2_override is None and derived[1]
    if s.germs:
        return _germ_budget(s, warnings)
    if not s.locally_trivial:
        warnings.append(EMPTY_WARNING)
    return SingularityBudget(0, 0), False


def _stabilizer_verdict(s: FibrationScenario, ksq_rel: int) -> BoundVerdict | None:
    """24 r K^2_{S/C} when every singular fiber is a full fiber of an etale branch
    and each germ states the stabilizer of its base point."""
    if s.kind != GroupKind.FULL or not s.germs or ksq_rel < 1:
        return None
    if any(gl.group not in _ETALE_GROUPS or gl.case != 0 or gl.orbit is None
           for gl in s.germs):
        return None
    r = min(gl.stabilizer() for gl in s.germs)
    value = bounds.stabilizer_bound("etale", r, ksq_rel)
    return BoundVerdict(value, "stabilizer-etale", False, "|Aut(f)| <= 24 r K^2_{S/C}",
                        f"r = {r}")


def analyze(s: FibrationScenario) -> ScenarioReport:
    warnings: list[str] = []
    budget, lower = _budget(s, warnings)
    if lower:
        warnings.append(LOWER_BOUND_WARNING)
    rel = relative_invariants(budget)
    ksq, chi = global_invariants(budget, s.base_genus)

    ksq_dc = None
    if s.surface is not None and s.branch is not None:
        ksq_dc = double_cover_ksq(s.surface, s.branch)
        if ksq_dc != ksq:
            if not lower:
                raise Mismatch("double cover K^2 disagrees with the singularity budget",
                               ksq_dc, ksq)
            warnings.append(f"double cover K^2 = {ksq_dc} differs from the budget's {ksq}")

    derived_lt = rel.ksq_rel == 0 and not lower
    if s.locally_trivial is not None and s.locally_trivial != derived_lt:
        if s.locally_trivial or not lower:
            raise Mismatch("locally_trivial disagrees with the budget",
                           s.locally_trivial, derived_lt)
    lt = derived_lt if s.locally_trivial is None else s.locally_trivial

    verdicts = bounds.evaluate(s.base_genus, ksq, s.kind, lt, s.minimal)
    extra = _stabilizer_verdict(s, rel.ksq_rel)
    if extra is not None:
        verdicts.append(extra)
    return ScenarioReport(s, budget, lower, Invariants(rel, ksq, chi, ksq_dc),
                          verdicts, warnings)


# -- serialisation -------------------------------------------------------------

def _verdict_dict(v: BoundVerdict) -> dict:
    return {"formula_name": v.formula_name, "value": to_json_number(v.bound_value),
            "sharp": v.sharp, "quote": v.source_quote, "note": v.note}


def report_to_dict(r: ScenarioReport) -> dict:
    inv = r.invariants
    return {
        "scenario": scenario_to_dict(r.scenario),
        "budget": {"s2": r.budget.s2_total, "s3": r.budget.s3_total,
                   "lower_bound": r.budget_is_lower_bound},
        "invariants": {"ksq_rel": inv.relative.ksq_rel, "chi_f": inv.relative.chi_f,
                       "n": inv.relative.n, "ksq": inv.ksq, "chi": inv.chi,
                       "ksq_double_cover": inv.ksq_double_cover},
        "verdicts": [_verdict_dict(v) for v in r.verdicts],
        "warnings": list(r.warnings),
    }


def report_from_dict(d: dict) -> ScenarioReport:
    b, inv = d["budget"], d["invariants"]
    return ScenarioReport(
        scenario=scenario_from_dict(d["scenario"]),
        budget=SingularityBudget(b["s2"], b["s3"]),
        budget_is_lower_bound=b["lower_bound"],
        invariants=Invariants(RelativeInvariants(inv["ksq_rel"], inv["chi_f"], inv["n"]),
                              inv["ksq"], inv["chi"], inv["ksq_double_cover"]),
        verdicts=[BoundVerdict(Fraction(from_json_number(v["value"])), v["formula_name"],
                               v["sharp"], v["quote"], v["note"]) for v in d["verdicts"]],
        warnings=list(d["warnings"]),
    )


def report_from_json(data: bytes | str) -> ScenarioReport:
    return report_from_dict(json.loads(data))


def _text(r: ScenarioReport) -> str:
    inv = r.invariants
    qual = "lower bound" if r.budget_is_lower_bound else "exact"
    rows = [
        ("scenario", dump(r.scenario).strip().replace("\n", "; ")),
        ("budget", f"s2={r.budget.s2_total} s3={r.budget.s3_total} ({qual})"),
        ("K^2_S/C", str(inv.relative.ksq_rel)),
        ("chi_f", str(inv.relative.chi_f)),
        ("n", str(inv.relative.n)),
        ("K^2_S", str(inv.ksq)),
        ("chi(O_S)", str(inv.chi)),
    ]
    if inv.ksq_double_cover is not None:
        rows.append(("K^2 (cover)", str(inv.ksq_double_cover)))
    lines = [f"{k:<12} {v}" for k, v in rows]
    if r.verdicts:
        width = max(len(v.formula_name) for v in r.verdicts)
        lines.append("verdicts")
        for v in r.verdicts:
            tag = "sharp" if v.sharp else "-"
            note = f"  [{v.note}]" if v.note else ""
            lines.append(f"  {v.formula_name:<{width}}  {fmt(v.bound_value):>8}  "
                         f"{tag:<5}  {v.source_quote}{note}")
    lines += [f"WARN {w}" for w in r.warnings]
    return "\n".join(lines) + "\n"


def emit_report(r: ScenarioReport, format: str = "text") -> bytes:
    if format == "json":
        return (json.dumps(report_to_dict(r), indent=2) + "\n").encode()
    if format == "text":
        return _text(r).encode()
    raise ValueError(f"unknown format {format!r}")
