"""``oie`` command line.

Exit status: 0 on success (a VOID result is a success), 1 for bad input,
2 when an enumeration cap is hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .. import __version__
from ..analysis import DEFAULT_ORBIT_CAP, Operation, orbit_space
from ..errors import CapacityExceeded, InvalidInput, OIEError
from ..feasibility import DEFAULT_MAX_PRODUCT
from ..model import format_rational, to_rational, validate_oie
from ..ops import ADD, AGGREGATE, MUL, PAIRWISE, DomainWindow, natural_window
from ..semigroup import DEFAULT_CAP, cayley_table, emit_full_csa_diagram, emit_svg
from . import scenarios
from .dsl import evaluate, format_expression, parse_expression
from .eventfile import event_file_json, format_oie, load_event_file, oie_json, oie_to_dict

EXIT_OK, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2


def _write(path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _atom_mode(args) -> str:
    return AGGREGATE if args.strict_intersection else PAIRWISE


def cmd_eval(args, out) -> int:
    ef = load_event_file(args.file)
    text = args.expr if args.expr is not None else ef.expression
    if not text:
        raise InvalidInput("no expression: give --expr or an 'expression' field in the file")
    ev = evaluate(parse_expression(text), ef, atom_check=_atom_mode(args),
                  max_product=args.max_product)
    for item in ev.unused_constraints:
        print(f"warning: constraint never applied: {item}", file=sys.stderr)
    shown = format_expression(parse_expression(text))
    if args.json:
        data = {"format": 1, "expression": shown,
                "oie": oie_to_dict(ev.result)}
        if ev.result.is_void:
            data["void_step"] = ev.void_step
            data["void_at"] = ev.void_at
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(f"expression: {shown}\n")
        if ev.result.is_void:
            out.write(ev.describe_void() + "\n")
        else:
            out.write(format_oie(ev.result))
    if args.output:
        _write(args.output, oie_json(ev.result))
    return EXIT_OK


def cmd_orbit(args, out) -> int:
    ef = load_event_file(args.file)
    oies = ef.oies()
    ids = args.events.split(",") if args.events else list(ef.ids)
    unknown = [i for i in ids if i not in oies]
    if unknown:
        raise InvalidInput(f"unknown event ids {unknown}")
    events = [oies[i] for i in ids]
    if args.op == MUL:
        op = Operation.mul()
    elif args.alpha is not None or args.beta is not None:
        if args.alpha is None or args.beta is None:
            raise InvalidInput("give both --alpha and --beta")
        op = Operation(ADD, DomainWindow(to_rational(args.alpha), to_rational(args.beta)))
    else:
        op = Operation(ADD, natural_window(events))
    space = orbit_space(events, op, ef.constraints, args.orbit_cap, atom_check=_atom_mode(args),
                        max_product=args.max_product)
    if args.json:
        data = {"format": 1, "events": ids, "op": args.op, "classes": [
            {"index_tuples": [list(t.indices) for t in c.index_tuples],
             "representative": oie_to_dict(c.representative)} for c in space]}
        out.write(json.dumps(data, indent=2) + "\n")
        return EXIT_OK
    window = ""
    if op.window is not None:
        window = f" alpha={format_rational(op.window.alpha)} beta={format_rational(op.window.beta)}"
    out.write(f"events: {', '.join(ids)}; op: {args.op}{window}\n")
    out.write(f"{len(space)} {'class' if len(space) == 1 else 'classes'}\n")
    for n, c in enumerate(space, start=1):
        tuples = " ".join("(" + ",".join(map(str, t.indices)) + ")" for t in c.index_tuples)
        out.write(f"class {n}: {tuples}\n")
        out.write(format_oie(c.representative, indent="  "))
    return EXIT_OK


def _table_text(t) -> str:
    rows = t.rows()
    names = [e.name for e in t.order]
    width = max(len(x) for x in names)
    lines = [" " * width + " | " + " ".join(x.ljust(width) for x in names)]
    lines.append("-" * len(lines[0]))
    for name, row in zip(names, rows):
        lines.append(name.ljust(width) + " | " + " ".join(x.ljust(width) for x in row))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def cmd_cayley(args, out) -> int:
    t = cayley_table(args.n, args.cap)
    if args.json:
        data = {"format": 1, "n": args.n, "elements": [e.name for e in t.order],
                "cells": t.cells.tolist()}
        out.write(json.dumps(data) + "\n")
    else:
        out.write(f"{t.size}x{t.size} Cayley table, n={args.n}\n")
        out.write(_table_text(t))
    if args.dot:
        _write(args.dot, emit_full_csa_diagram(t))
    return EXIT_OK


def cmd_diagram(args, out) -> int:
    t = cayley_table(args.n, args.cap)
    dot = emit_full_csa_diagram(t, args.layout)
    if args.output:
        _write(args.output, dot)
    else:
        out.write(dot)
    if args.svg:
        _write(args.svg, emit_svg(t, args.layout))
    return EXIT_OK


def cmd_scenario(args, out) -> int:
    tick = to_rational(args.tick)
    if args.kind == "sampling":
        report = scenarios.scenario_sampling(args.balls, args.red, args.drawers, tick)
        out.write("\n".join(report.lines()) + "\n")
        return EXIT_OK
    if args.kind == "sprint":
        ef = scenarios.scenario_sprint(args.lanes, (args.alpha, args.beta), args.dmin, args.dmax,
                                       tick, max_product=args.max_product)
    elif args.kind == "downhill":
        ef = scenarios.scenario_downhill(args.skiers, args.start, args.total, args.tmin, args.tmax,
                                         tick, max_product=args.max_product)
    else:
        ef = scenarios.scenario_mergesort(args.length, args.procs)
        if args.plan:
            for layer in ef.meta["layers"]:
                out.write(f"layer depth={layer['depth']} tasks={len(layer['tasks'])} "
                          f"time={layer['time']}\n")
    text = event_file_json(ef)
    if args.output:
        _write(args.output, text)
    elif not args.evaluate and not getattr(args, "plan", False):
        out.write(text)
    if args.evaluate:
        ev = evaluate(parse_expression(ef.expression), ef, atom_check=_atom_mode(args),
                      max_product=args.max_product)
        if ev.result.is_void:
            out.write(ev.describe_void() + "\n")
        else:
            out.write(format_oie(ev.result))
    return EXIT_OK


def cmd_validate(args, out) -> int:
    ef = load_event_file(args.file)
    problems = []
    for spec in ef.events:
        report = validate_oie(spec.oie())
        problems.extend(f"{spec.id}: {v}" for v in report.violations)
    if ef.expression:
        parse_expression(ef.expression)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_INPUT
    out.write(f"ok: {len(ef.events)} events, "
              f"{len(ef.constraints.forbidden) + len(ef.constraints.rules)} constraints\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-product", type=int, default=DEFAULT_MAX_PRODUCT,
                        help="cap on the size of any Cartesian product (default %(default)s)")
    common.add_argument("--strict-intersection", action="store_true",
                        help="void only when one atom is shared by all operands")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="oie", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[common], help="evaluate an expression over an event file")
    e.add_argument("file")
    e.add_argument("--expr", help="expression (defaults to the file's 'expression')")
    e.add_argument("-o", "--output", help="also write the result OIE as JSON")
    e.set_defaults(func=cmd_eval)

    o = sub.add_parser("orbit", parents=[common], help="orbit space under all operand orders")
    o.add_argument("file")
    o.add_argument("--op", choices=[ADD, MUL], required=True)
    o.add_argument("--alpha")
    o.add_argument("--beta")
    o.add_argument("--events", help="comma-separated ids (default: all, in file order)")
    o.add_argument("--orbit-cap", type=int, default=DEFAULT_ORBIT_CAP)
    o.set_defaults(func=cmd_orbit)

    c = sub.add_parser("cayley", parents=[common], help="Cayley table of the addition semigroup")
    c.add_argument("-n", type=int, required=True)
    c.add_argument("--dot", help="also write the diagram as DOT")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.set_defaults(func=cmd_cayley)

    d = sub.add_parser("diagram", parents=[common], help="full CSA diagram as DOT")
    d.add_argument("-n", type=int, required=True)
    d.add_argument("--layout", choices=["circular", "grid"], default="circular")
    d.add_argument("-o", "--output")
    d.add_argument("--svg")
    d.add_argument("--cap", type=int, default=DEFAULT_CAP)
    d.set_defaults(func=cmd_diagram)

    s = sub.add_parser("scenario", help="generate a desk-scale case-study event file")
    kinds = s.add_subparsers(dest="kind", required=True)
    scen = argparse.ArgumentParser(add_help=False, parents=[common])
    scen.add_argument("--tick", default="1")
    scen.add_argument("-o", "--output")
    scen.add_argument("--evaluate", action="store_true", help="evaluate the generated expression")

    k = kinds.add_parser("sprint", parents=[scen])
    k.add_argument("--lanes", type=int, default=3)
    k.add_argument("--alpha", default="0")
    k.add_argument("--beta", default="4")
    k.add_argument("--dmin", default="2")
    k.add_argument("--dmax", default="4")
    k = kinds.add_parser("downhill", parents=[scen])
    k.add_argument("--skiers", type=int, default=2)
    k.add_argument("--start", default="0")
    k.add_argument("--total", default="6")
    k.add_argument("--tmin", default="2")
    k.add_argument("--tmax", default="3")
    k = kinds.add_parser("mergesort", parents=[scen])
    k.add_argument("--length", type=int, default=8)
    k.add_argument("--procs", type=int)
    k.add_argument("--plan", action="store_true", help="print layer sizes and times")
    k = kinds.add_parser("sampling", parents=[scen])
    k.add_argument("--balls", type=int, default=3)
    k.add_argument("--red", type=int, default=2)
    k.add_argument("--drawers", type=int, default=2)
    s.set_defaults(func=cmd_scenario)

    v = sub.add_parser("validate", parents=[common], help="check an event file")
    v.add_argument("file")
    v.set_defaults(func=cmd_validate)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args, out)
    except CapacityExceeded as exc:
        print(f"oie: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (OIEError, ValueError) as exc:
        print(f"oie: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
