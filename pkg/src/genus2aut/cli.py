"""Command-line front end: ``genus2aut <command> [--json] ...``."""
from __future__ import annotations

import argparse
import json
import sys

from . import bounds, catalog, germs, orbifold, scenario_dsl
from .errors import Genus2Error, ScenarioSyntaxError
from .exact import fmt, to_json_number
from .ruled_surface import (DivisorClass, RuledSurfaceModel, double_cover_ksq,
                            ramification)
from .xiao import SingularityBudget, global_invariants, relative_invariants

EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC = 0, 2, 3


class _Out:
    """Collects either a JSON document or text lines."""

    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, data, text_lines):
        if self.as_json:
            sys.stdout.write(json.dumps(data, indent=2) + "\n")
        else:
            sys.stdout.write("".join(line + "\n" for line in text_lines))


def _verdict_json(v: bounds.BoundVerdict) -> dict:
    return {"formula_name": v.formula_name, "value": to_json_number(v.bound_value),
            "sharp": v.sharp, "quote": v.source_quote, "note": v.note}


def _verdict_line(v: bounds.BoundVerdict) -> str:
    tag = "sharp" if v.sharp else "-"
    note = f"  [{v.note}]" if v.note else ""
    return f"{v.formula_name:<26} {fmt(v.bound_value):>8}  {tag:<5}  {v.source_quote}{note}"


def _surface_arg(text: str) -> tuple[str, int]:
    if text == "product":
        return ("product", 0)
    if text.startswith("hirzebruch:"):
        try:
            return ("hirzebruch", int(text.split(":", 1)[1]))
        except ValueError:
            pass
    raise argparse.ArgumentTypeError("surface must be product or hirzebruch:<e>")


def _surface(parsed: tuple[str, int], base_genus: int) -> RuledSurfaceModel:
    kind, e = parsed
    if kind == "product":
        return RuledSurfaceModel.product(base_genus)
    return RuledSurfaceModel.hirzebruch(e, base_genus)


def _pair(text: str) -> DivisorClass:
    try:
        a, b = text.split(",")
        return DivisorClass(int(a), int(b))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a,b, got {text!r}") from None


# -- commands -----------------------------------------------------------------

def cmd_invariants(args, out: _Out):
    data: dict = {}
    lines = []
    if args.s2 is not None or args.s3 is not None or args.branch is None:
        b = SingularityBudget(args.s2 or 0, args.s3 or 0)
        rel = relative_invariants(b)
        ksq, chi = global_invariants(b, args.base_genus)
        data["budget"] = {"s2": b.s2_total, "s3": b.s3_total}
        data["relative"] = {"ksq_rel": rel.ksq_rel, "chi_f": rel.chi_f, "n": rel.n}
        data["global"] = {"ksq": ksq, "chi": chi}
        lines += [f"K^2_S/C  {rel.ksq_rel}", f"chi_f    {rel.chi_f}", f"n        {rel.n}",
                  f"K^2_S    {ksq}", f"chi(O_S) {chi}"]
    if args.branch is not None:
        s = _surface(args.surface, args.base_genus)
        r = args.branch
        ksq_dc = double_cover_ksq(s, r)
        data["double_cover"] = {"surface": str(s), "branch": str(r), "ksq": ksq_dc,
                                "ramification": ramification(s, r)}
        lines += [f"double cover of {s} along {r}: K^2 = {ksq_dc}",
                  f"ramification R.(R+K_P/C) = {data['double_cover']['ramification']}"]
    out.emit(data, lines)


def _row_json(row: germs.GermRow) -> dict:
    k = row.k_values
    return {"group": row.group, "case": row.case_id, "equation": row.equation,
            "k": k if k in (None, germs.POSITIVE) else sorted(k),
            "s2_min": row.indices.s2_min, "s3": row.indices.s3,
            "exact": row.indices.exact, "conditional": row.indices.conditional,
            "disc_valuation": row.disc_valuation}


def cmd_germ(args, out: _Out):
    if args.ratios:
        rows = germs.ratio_table()
        data = {"rows": [{"group": r.group, "lift_order": r.lift_order, "s2_min": r.s2_min,
                          "max_ratio": to_json_number(r.max_ratio)} for r in rows],
                "max_ratio": to_json_number(germs.max_ratio())}
        lines = [f"{r.group:<4} |K|={r.lift_order:<3} s2>={r.s2_min:<2} "
                 f"ratio={fmt(r.max_ratio)}" for r in rows]
        lines.append(f"max ratio {fmt(germs.max_ratio())}")
        return out.emit(data, lines)
    if args.group is None:
        rows = germs.GERM_TABLE
        data = {"version": germs.TABLE_VERSION, "rows": [_row_json(r) for r in rows]}
        lines = [f"{r.group:<4} case {r.case_id}  s2>={r.indices.s2_min} s3={r.indices.s3}"
                 f"{' exact' if r.indices.exact else ''}  {r.equation}" for r in rows]
        return out.emit(data, lines)
    _require(args, "case")
    row = germs.lookup(germs.germ_case(args.group, args.case, args.k))
    data = _row_json(row)
    out.emit(data, [f"s2 >= {row.indices.s2_min}" if not row.indices.exact
                    else f"s2 = {row.indices.s2_min}",
                    f"s3 = {row.indices.s3}", f"equation {row.equation}"])


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        raise argparse.ArgumentTypeError(f"{args.command} needs {flags}")


def _limits(args) -> orbifold.SearchLimits:
    return orbifold.SearchLimits(args.max_h, args.max_periods, args.max_period)


def cmd_orbifold(args, out: _Out):
    if args.action == "minimize":
        best = orbifold.minimize_orbifold(args.half, _limits(args), args.min_h)
        data = {"value": to_json_number(best.value), "witness": str(best.witness),
                "marked_period": best.witness.marked_period,
                "certificate": {k: None if v is None else to_json_number(v)
                                for k, v in best.certificate.items()}}
        return out.emit(data, [f"minimum {fmt(best.value)} at {best.witness}"])
    if args.action == "genus":
        _require(args, "order", "signature")
        try:
            sig = orbifold.parse_signature(args.signature)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(f"bad signature: {exc}") from None
        g = orbifold.hurwitz_genus(args.order, sig)
        return out.emit({"genus": to_json_number(g)}, [f"genus {fmt(g)}"])
    if args.action == "elliptic":
        _require(args, "order")
        size = orbifold.elliptic_min_orbit(args.order, args.j)
        return out.emit({"min_orbit": size}, [f"smallest orbit {size}"])
    if args.action == "hurwitz":
        _require(args, "genus")
        n = orbifold.hurwitz_order_bound(args.genus, _limits(args))
        return out.emit({"max_order": n}, [f"|Aut(C)| <= {n}"])
    raise Genus2Error(f"unknown orbifold action {args.action!r}")


def cmd_wiman(args, out: _Out):
    bound = orbifold.wiman_bound(args.genus, args.odd)
    data: dict = {"genus": args.genus, "odd_stabilizers_only": args.odd, "bound": bound}
    lines = [f"bound {bound}"]
    if args.oracle:
        n, datum = orbifold.cyclic_action_oracle(args.genus, args.odd, args.max_order)
        data["oracle"] = {"order": n, "signature": str(datum.signature),
                          "residues": list(datum.generating_elements),
                          "valid": datum.valid}
        lines.append(f"oracle {n} via {datum.signature} residues "
                     f"{list(datum.generating_elements)}")
    out.emit(data, lines)


def cmd_bound(args, out: _Out):
    if args.exceptions:
        rows = bounds.exceptional_table()
        data = [{"h_group": r.h_group.name, "r": r.r, "g_order": r.g_order, "ksq": r.ksq,
                 "ratio_plus8": r.ratio_plus8, "ratio": r.ratio} for r in rows]
        lines = [f"{r.h_group.name:<4} r={r.r} |G|={r.g_order} K^2={r.ksq} "
                 f"|G|/(K^2+8)={r.ratio_plus8} |G|/K^2={r.ratio}" for r in rows]
        return out.emit(data, lines)
    if args.stabilizer is not None:
        value = bounds.stabilizer_bound(args.stabilizer, args.r, args.ksq_rel)
        return out.emit({"case": args.stabilizer, "value": to_json_number(value)},
                        [f"{args.stabilizer}: {fmt(value)}"])
    _require(args, "ksq")
    verdicts = bounds.evaluate(args.base_genus, args.ksq, args.kind,
                               args.locally_trivial, args.minimal)
    out.emit([_verdict_json(v) for v in verdicts], [_verdict_line(v) for v in verdicts])


def _report_json(r: catalog.VerificationReport) -> dict:
    best = r.sharpest
    return {"id": r.id, "params": r.params, "ksq_double_cover": r.ksq_double_cover,
            "ksq_indices": r.ksq_indices,
            "budget": {"s2": r.budget.s2_total, "s3": r.budget.s3_total},
            "k_order": r.k_order, "h_order": r.h_order, "g_order": r.g_order,
            "bound_name": r.bound_name, "named_value": to_json_number(r.named_value),
            "sharp": r.sharp,
            "sharpest": None if best is None else _verdict_json(best),
            "attains_sharpest": r.attains_sharpest,
            "assumptions": list(r.assumptions)}


def _params(items) -> dict:
    out = {}
    for item in items or ():
        k, eq, v = item.partition("=")
        if not eq:
            raise argparse.ArgumentTypeError(f"--param wants k=v, got {item!r}")
        try:
            out[k] = int(v)
        except ValueError:
            raise argparse.ArgumentTypeError(f"--param {k} must be an integer") from None
    return out


def cmd_examples(args, out: _Out):
    if args.action == "list":
        data = [{"id": i, "description": catalog.describe(i)} for i in catalog.ENTRY_IDS]
        return out.emit(data, [f"{d['id']:<17} {d['description']}" for d in data])
    if args.id is None:
        if args.param:
            raise Genus2Error("--param needs --id")
        reports = catalog.verify_all()
    elif args.param:
        reports = [catalog.verify(catalog.instantiate(args.id, _params(args.param)))]
    else:
        reports = [catalog.verify(catalog.instantiate(args.id, p))
                   for p in catalog.admissible_sweep(args.id)]
    lines = []
    for r in reports:
        p = " ".join(f"{k}={v}" for k, v in r.params.items())
        lines.append(f"ok {r.id:<17} {p:<6} K^2={r.ksq_double_cover:<4} |G|={r.g_order:<6} "
                     f"= {r.bound_name}")
    out.emit([_report_json(r) for r in reports], lines)


def cmd_check(args, out: _Out):
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    report = scenario_dsl.analyze(scenario_dsl.parse(text))
    sys.stdout.write(scenario_dsl.emit_report(report, "json" if args.json else "text").decode())


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="genus2aut",
                                description="Invariants and automorphism bounds "
                                            "for genus 2 fibrations.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("invariants", parents=[common],
                       help="K^2 and chi from indices or from a double cover")
    q.add_argument("--base-genus", type=int, default=0)
    q.add_argument("--s2", type=int)
    q.add_argument("--s3", type=int)
    q.add_argument("--surface", type=_surface_arg, default=("product", 0),
                   help="product | hirzebruch:<e>")
    q.add_argument("--branch", type=_pair, help="class a,b of the branch locus")
    q.set_defaults(func=cmd_invariants)

    q = sub.add_parser("germ", parents=[common], help="classified local configurations")
    q.add_argument("--group")
    q.add_argument("--case", type=int)
    q.add_argument("--k", type=int)
    q.add_argument("--ratios", action="store_true", help="|K| / s2 summary")
    q.set_defaults(func=cmd_germ)

    q = sub.add_parser("orbifold", parents=[common], help="orbifold signature tools")
    q.add_argument("action", choices=("minimize", "genus", "elliptic", "hurwitz"))
    q.add_argument("--half", action="store_true", help="add the 1/(2r) term")
    q.add_argument("--min-h", type=int, default=0)
    q.add_argument("--max-h", type=int, default=orbifold.DEFAULT_LIMITS.max_h)
    q.add_argument("--max-periods", type=int, default=orbifold.DEFAULT_LIMITS.max_periods)
    q.add_argument("--max-period", type=int,
                   default=orbifold.DEFAULT_LIMITS.max_period_value)
    q.add_argument("--order", type=int)
    q.add_argument("--signature", help='"h;r1,r2,..."')
    q.add_argument("--j", default="generic", choices=("generic", "j1728", "j0"))
    q.add_argument("--genus", type=int)
    q.set_defaults(func=cmd_orbifold)

    q = sub.add_parser("wiman", parents=[common], help="largest cyclic action on a curve")
    q.add_argument("--genus", type=int, required=True)
    q.add_argument("--odd", action="store_true", help="odd stabilizers only")
    q.add_argument("--oracle", action="store_true", help="confirm by exhaustive search")
    q.add_argument("--max-order", type=int)
    q.set_defaults(func=cmd_wiman)

    q = sub.add_parser("bound", parents=[common], help="automorphism-group bounds")
    q.add_argument("--base-genus", type=int, default=0)
    q.add_argument("--ksq", type=int)
    q.add_argument("--kind", default="full", choices=[k.value for k in bounds.GroupKind])
    q.add_argument("--locally-trivial", action="store_true")
    q.add_argument("--minimal", action="store_true")
    q.add_argument("--exceptions", action="store_true",
                   help="rational fibrations above 48(K^2+8)")
    q.add_argument("--stabilizer", choices=sorted(bounds.STABILIZER_CASES))
    q.add_argument("--r", type=int, default=1)
    q.add_argument("--ksq-rel", type=int, default=1)
    q.set_defaults(func=cmd_bound)

    q = sub.add_parser("examples", parents=[common], help="extremal example catalog")
    q.add_argument("action", choices=("list", "verify"))
    q.add_argument("--id", choices=catalog.ENTRY_IDS)
    q.add_argument("--param", action="append", metavar="K=V")
    q.set_defaults(func=cmd_examples)

    q = sub.add_parser("check", parents=[common], help="analyze a .fib scenario file")
    q.add_argument("file")
    q.set_defaults(func=cmd_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args, _Out(args.json))
    except ScenarioSyntaxError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except argparse.ArgumentTypeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (Genus2Error, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
