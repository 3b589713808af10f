"""Command-line front end.

Exit codes: 0 when every internal check passed, 2 when a check failed or a
computation could not be completed, 3 for bad input (unreadable model file,
malformed stage document).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import pipeline as pl
from .models import ModelError
from .operators import DiffOperator, OperatorError

EXIT_OK, EXIT_CHECK, EXIT_INPUT = 0, 2, 3


def _read_input(path: str | None):
    text = open(path).read() if path and path != "-" else sys.stdin.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise pl.SchemaError(f"input line {exc.lineno} col {exc.colno}: {exc.msg}") from exc


def _fmt_list(values, limit: int = 12) -> str:
    shown = ", ".join(str(v) for v in values[:limit])
    return shown + (", ..." if len(values) > limit else "")


def render_text(doc: dict) -> str:
    lines = []
    if "generators" in doc:
        lines.append(f"model {doc['model']}: {len(doc['monomials'])} monomials in "
                     f"{len(doc['variables'])} variables")
        lines.append("exponent matrix (rows: " + ", ".join(doc["monomials"]) + ")")
        for lab, row, s, g in zip(doc["monomials"], doc["matrix"], doc["signs"], doc["ygrades"]):
            lines.append(f"  {lab:>6} {'+' if s > 0 else '-'} y^{g}  {row}")
        lines.append(f"integer kernel basis ({len(doc['kernel_basis'])} vectors):")
        lines.extend(f"  {b}" for b in doc["kernel_basis"])
        lines.append(f"Hilbert basis up to y-degree {doc['degree_bound']} "
                     f"({len(doc['generators'])} generators):")
        for g in doc["generators"]:
            sign = "+" if g["sign"] > 0 else "-"
            lines.append(f"  {sign} y^{g['ydegree']}  {g['product']}")
        return "\n".join(lines) + "\n"
    if "model" in doc:
        lines.append(f"model: {doc['model']}   point: {doc.get('point', 'zero')}")
    if "period" in doc:
        lines.append(f"period f0: {_fmt_list(doc['period'])}")
    if "operator" in doc:
        op = DiffOperator.from_json(doc["operator"])
        lines.append("Picard-Fuchs operator:")
        lines.append("    " + str(op).replace("\n", "\n  "))
    if "g" in doc:
        lines.append(f"g: {_fmt_list(doc['g'], 6)}")
        lines.append(f"q(phi): {_fmt_list(doc['mirror_map']['q_of_phi'], 8)}")
    if "yukawa_phi" in doc and doc["yukawa_phi"]["closed_form"]:
        cf = doc["yukawa_phi"]["closed_form"]
        lines.append(f"Yukawa closed form: ({', '.join(cf['numerator'])}) / "
                     f"({', '.join(cf['denominator'])}), weight {doc['yukawa_phi']['weight']}")
    if "yukawa_q" in doc:
        lines.append(f"kappa/m: {_fmt_list(doc['yukawa_q'], 8)}")
    if "instantons" in doc:
        inst = doc["instantons"]
        lines.append(f"n0/m = {inst['n0']}")
        lines.append(f"n_d/m: {_fmt_list(inst['nd'], 10)}")
        res = inst["m_resolved"]
        lines.append(f"with m = {res['m']}: n0 = {res['n0']}, n_d: {_fmt_list(res['nd'], 10)}")
        lines.append(f"integral: {doc['integrality']}")
    for name, ok in doc.get("checks", {}).items():
        lines.append(f"check {name}: {'ok' if ok else 'FAILED'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pfmirror", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, model=True, order=True, inp=False):
        if model:
            p.add_argument("--model", default="pfaffian",
                           help="preset name (pfaffian, grassmannian) or model JSON path")
        if order:
            p.add_argument("--order", type=int, default=pl.DEFAULT_ORDER)
        if inp:
            p.add_argument("--input", "-i", default=None, help="stage document (default stdin)")
        p.add_argument("--output", choices=("json", "text"), default="json")

    p = sub.add_parser("kernel", help="exponent matrix, kernel basis and Hilbert basis")
    common(p, order=False)
    p.add_argument("--degree-bound", type=int, default=None)

    p = sub.add_parser("pipeline", help="period -> operator -> mirror map -> Yukawa -> instantons")
    common(p)
    p.add_argument("--point", choices=("zero", "infinity"), default="zero")
    p.add_argument("--m", type=Fraction, default=None)
    p.add_argument("--oracle", action="store_true", help="cross-check the period by enumeration")
    p.add_argument("--deg", type=int, default=5)
    p.add_argument("--pf-order", type=int, default=4)

    p = sub.add_parser("period", help="holomorphic period series")
    common(p)
    p.add_argument("--oracle", action="store_true")

    p = sub.add_parser("pf-fit", help="fit a Picard-Fuchs operator to a period")
    common(p, model=False, order=False, inp=True)
    p.add_argument("--order", type=int, default=4, help="operator order")
    p.add_argument("--deg", type=int, default=5, help="coefficient degree bound")

    p = sub.add_parser("pf-invert", help="move the operator to phi = infinity")
    common(p, model=False, order=False, inp=True)
    p.add_argument("--twist", type=int, default=1)

    for name in ("mirror-map", "yukawa"):
        p = sub.add_parser(name)
        common(p, model=False, order=False, inp=True)

    p = sub.add_parser("instantons", help="instanton numbers from kappa/m")
    common(p, model=False, order=False, inp=True)
    p.add_argument("--m", type=Fraction, default=None)
    return parser


def run(args) -> dict:
    cmd = args.command
    if cmd == "kernel":
        return pl.kernel_report(args.model, args.degree_bound)
    if cmd == "pipeline":
        return pl.run_pipeline(args.model, args.point, args.order, args.m, args.oracle,
                               args.pf_order, args.deg)
    if cmd == "period":
        return pl.run_stage("period", pl.stage_period, args.model, args.order, args.oracle)
    doc = _read_input(args.input)
    if cmd == "pf-fit":
        return pl.run_stage(cmd, pl.stage_fit, doc, args.order, args.deg)
    if cmd == "pf-invert":
        return pl.run_stage(cmd, pl.stage_invert, doc, args.twist)
    if cmd == "mirror-map":
        return pl.run_stage(cmd, pl.stage_mirror_map, doc)
    if cmd == "yukawa":
        return pl.run_stage(cmd, pl.stage_yukawa, doc)
    if cmd == "instantons":
        return pl.run_stage(cmd, pl.stage_instantons, doc, args.m)
    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc = run(args)
    except (ModelError, pl.SchemaError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (pl.StageError, OperatorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if args.output == "json":
        sys.stdout.write(pl.dumps(doc))
    else:
        sys.stdout.write(render_text(doc))
    return EXIT_OK if pl.checks_passed(doc) else EXIT_CHECK


if __name__ == "__main__":
    sys.exit(main())
