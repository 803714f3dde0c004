"""Command-line entry point: ``possnc {check,inc,entail,oracle,clausal} FILE``."""
from __future__ import annotations

import argparse
import json
import sys

from .formula import (
    Bottom, ParseError, Top, WeightedFormula, format_weight, negate_nnf,
    parse_base, parse_formula, render, simplify_constants,
)
from .hornnc import is_horn_nc, non_horn_items
from .semantics import BudgetExceeded, cl_transform, inc_oracle, is_horn_clausal, necessity_oracle
from .solver import NotHornNC, solve

EXIT_OK, EXIT_REFUSED, EXIT_PARSE = 0, 1, 2


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}", 0, 0) from None
    return parse_base(text)


def _cmd_check(args, out):
    base = _load(args.file)
    bad = set(non_horn_items(base))
    for i, item in enumerate(base, start=1):
        verdict = "not Horn-NC" if i - 1 in bad else "Horn-NC"
        print(f"item {i}: {verdict}: {item}", file=out)
    print("base is Horn-NC" if not bad else f"base is not Horn-NC ({len(bad)} item(s))", file=out)
    return EXIT_REFUSED if bad else EXIT_OK


def _cmd_inc(args, out):
    base = _load(args.file)
    result = solve(base, lur=args.lur, hur=args.hur)
    if args.format == "structured":
        doc = {"inc": format_weight(result.inc), "inferences": result.inferences,
               "recursions": result.recursions}
        if args.trace:
            doc["rounds"] = [d.structured() for d in result.rounds]
        print(json.dumps(doc, indent=2), file=out)
        return EXIT_OK
    if args.trace:
        for n, d in enumerate(result.rounds, start=1):
            print(f"round {n}", file=out)
            for line in d.lines():
                print(f"  {line}", file=out)
    print(f"Inc = {format_weight(result.inc)}", file=out)
    return EXIT_OK


def _cmd_entail(args, out):
    base = _load(args.file)
    query = parse_formula(args.query)
    augmented = base.with_item(WeightedFormula(negate_nnf(query), 1))
    if non_horn_items(augmented):
        if not args.oracle:
            raise NotHornNC(augmented, non_horn_items(augmented))
        value = necessity_oracle(base, query)
        how = "oracle"
    else:
        value = solve(augmented, lur=args.lur, hur=args.hur).inc
        how = "calculus"
    print(f"N({render(query)}) = {format_weight(value)}  [{how}]", file=out)
    return EXIT_OK


def _cmd_oracle(args, out):
    base = _load(args.file)
    print(f"Inc = {format_weight(inc_oracle(base, budget=args.budget))}", file=out)
    return EXIT_OK


def _cmd_clausal(args, out):
    base = _load(args.file)
    for i, item in enumerate(base, start=1):
        f = simplify_constants(item.formula)
        if isinstance(f, (Top, Bottom)):
            print(f"item {i}: {render(f)} (constant)", file=out)
            continue
        cl = cl_transform(f, budget=args.budget)
        horn_nc = is_horn_nc(f)
        print(f"item {i}: {cl} : {format_weight(item.weight)}", file=out)
        print(f"  Horn-NC: {'yes' if horn_nc else 'no'}; "
              f"clausal form Horn: {'yes' if is_horn_clausal(cl) else 'no'}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="possnc", description="Possibilistic Horn-NC reasoning.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="report which items are Horn-NC")
    c.add_argument("file")
    c.set_defaults(func=_cmd_check)

    def accelerators(sp):
        sp.add_argument("--lur", action="store_true", help="enable local unit resolution")
        sp.add_argument("--hur", action="store_true", help="enable hyper unit resolution")

    c = sub.add_parser("inc", help="inconsistency degree by unit resolution")
    c.add_argument("file")
    c.add_argument("--trace", action="store_true", help="print every derivation step")
    c.add_argument("--format", choices=("text", "structured"), default="text")
    accelerators(c)
    c.set_defaults(func=_cmd_inc)

    c = sub.add_parser("entail", help="necessity degree of a query formula")
    c.add_argument("file")
    c.add_argument("--query", required=True)
    c.add_argument("--oracle", action="store_true",
                   help="fall back to enumeration when the query breaks the Horn-NC shape")
    accelerators(c)
    c.set_defaults(func=_cmd_entail)

    c = sub.add_parser("oracle", help="inconsistency degree by enumerating interpretations")
    c.add_argument("file")
    c.add_argument("--budget", type=int, default=20, help="maximum number of propositions")
    c.set_defaults(func=_cmd_oracle)

    c = sub.add_parser("clausal", help="clausal form of each item with Horn verdicts")
    c.add_argument("file")
    c.add_argument("--budget", type=int, default=10_000, help="maximum number of clauses")
    c.set_defaults(func=_cmd_clausal)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except ParseError as exc:
        where = getattr(args, "file", "")
        print(f"{where}: {exc}" if exc.line else str(exc.reason), file=err)
        return EXIT_PARSE
    except NotHornNC as exc:
        print(f"refused: {exc}", file=err)
        return EXIT_REFUSED
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=err)
        return EXIT_REFUSED


def main() -> None:
    sys.exit(run())
