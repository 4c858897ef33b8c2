"""
Command-line front end.

    clocked reduce  TERM          clocked reduction trace and final term
    clocked tree    TERM          clocked Lévy-Longo tree to a depth
    clocked compare TERM TERM     discrimination verdict
    clocked simple  TERM          simplicity report
    clocked zoo                   list the named combinators

Zoo names (I, S, delta, eta, Omega, Y0, Y1) are expanded inside terms.  A term
may also start with a parameterised zoo call followed by extra arguments
after ``@``::

    bohmY 2 @ x        the Böhm-sequence combinator Y2 applied to x
    yVec 0 1 @ f g     Y<0,1> applied to f and g

Exit status: 0 for a definite result, 2 for usage or parse errors, 3 when the
result is inconclusive.
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from .discrimination import Simplicity, check_simple, discriminate
from .errors import ClockedError
from .reduction import STRATEGIES, format_path, reduce_strategy, resolve_mode
from .syntax import parse, parse_atoms, to_text
from .terms import Term, app
from .trees import clocked_tree, has_uncertified_bottom, render_tree, tree_to_json
from .zoo import CONSTANTS, ENTRIES, zoo

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 2, 3
DEFAULT_DEPTHS = [4, 6, 8]

_COMMENT = re.compile(r"--[^\n]*")
_ZOO_CALL = re.compile(r"^\s*([A-Za-z][A-Za-z0-9_]*)((?:\s+\d+)*)\s*(?:@(.*))?$", re.DOTALL)


def read_term(src: str, expand: bool = True) -> Term:
    """Parse CLI input, expanding zoo names and the ``name args @ extra`` sugar."""
    names = CONSTANTS if expand else None
    m = _ZOO_CALL.match(_COMMENT.sub("", src))
    if expand and m and m.group(1) in ENTRIES:
        term = zoo(m.group(1), [int(p) for p in m.group(2).split()])
        extra = m.group(3)
        if extra is not None and extra.strip():
            term = app(term, *parse_atoms(extra, names))
        return term
    return parse(src, names)


class _Usage(Exception):
    pass


def _sources(args, count: int) -> list[str]:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
        chunks = [c.strip() for c in re.split(r"\n\s*\n", text) if c.strip()] if count > 1 else [text]
        if len(chunks) != count:
            raise _Usage(f"expected {count} term(s) in {args.file}, found {len(chunks)}")
        if args.terms:
            raise _Usage("give terms either inline or with --file, not both")
        return chunks
    if len(args.terms) != count:
        raise _Usage(f"expected {count} term(s), got {len(args.terms)}")
    return list(args.terms)


def _emit(args, text: str, data: dict):
    if args.json:
        print(json.dumps(data, ensure_ascii=False, indent=2))
    else:
        print(text)


def cmd_reduce(args) -> int:
    (src,) = _sources(args, 1)
    term = read_term(src, not args.no_zoo)
    trace = reduce_strategy(term, args.strategy, args.max_steps, seed=args.seed, mode=args.mode)
    status = {"normal": "normal form", "max-steps": "step limit reached",
              "max-size": "size limit reached"}[trace.halted]
    names = None if args.no_zoo else CONSTANTS
    lines = [f"{s.rule} @ {format_path(s.path)} : {to_text(s.term, names)}" for s in trace.steps]
    plural = "" if len(trace) == 1 else "s"
    lines.append(f"final: {to_text(trace.final, names)}  ({status} after {len(trace)} step{plural})")
    text = "\n".join(lines)
    data = {"mode": resolve_mode(term, args.mode).value, "strategy": args.strategy,
            **trace.to_json(), "stepCount": len(trace)}
    _emit(args, text, data)
    return EXIT_OK


def cmd_tree(args) -> int:
    (src,) = _sources(args, 1)
    term = read_term(src, not args.no_zoo)
    depth = max(args.depth)
    tree = clocked_tree(term, depth, args.fuel, args.mode)
    data = {"term": to_text(term), "mode": resolve_mode(term, args.mode).value,
            "depth": depth, "fuel": args.fuel, "tree": tree_to_json(tree)}
    _emit(args, render_tree(tree), data)
    return EXIT_INCONCLUSIVE if has_uncertified_bottom(tree) else EXIT_OK


def cmd_compare(args) -> int:
    a_src, b_src = _sources(args, 2)
    a, b = read_term(a_src, not args.no_zoo), read_term(b_src, not args.no_zoo)
    verdict = discriminate(a, b, args.depth, args.fuel, args.mode)
    data = {"m": to_text(a), "n": to_text(b), **verdict.to_json()}
    _emit(args, verdict.render(), data)
    return EXIT_OK if verdict.not_convertible else EXIT_INCONCLUSIVE


def cmd_simple(args) -> int:
    (src,) = _sources(args, 1)
    term = read_term(src, not args.no_zoo)
    report = check_simple(term, max(args.depth), args.fuel)
    _emit(args, str(report), {"term": to_text(term), **report.to_json()})
    return EXIT_INCONCLUSIVE if report.status is Simplicity.UNKNOWN else EXIT_OK


_ZOO_EXAMPLES = {"bohmY": [2], "yVec": [0, 1]}


def cmd_zoo(args) -> int:
    rows = []
    for name, entry in ENTRIES.items():
        if entry.params:
            params = _ZOO_EXAMPLES[name]
            call = f"{name} {' '.join(map(str, params))}"
            rows.append({"name": name, "params": entry.params, "description": entry.description,
                         "example": call, "definition": to_text(zoo(name, params), CONSTANTS)})
        else:
            rows.append({"name": name, "params": "", "description": entry.description,
                         "definition": to_text(zoo(name))})
    lines = []
    for r in rows:
        if r["params"]:
            lines.append(f"{r['name']} {r['params']}  -- {r['description']}")
            lines.append(f"    e.g. {r['example']} = {r['definition']}")
        else:
            lines.append(f"{r['name']} = {r['definition']}  -- {r['description']}")
    _emit(args, "\n".join(lines), {"entries": rows})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=["plain", "atomic"], default=None,
                        help="clock mode (default: the term's own, else plain)")
    common.add_argument("--depth", type=int, action="append", metavar="N",
                        help="tree depth; repeat for several depths (default 4, 6, 8)")
    common.add_argument("--fuel", type=int, default=1000, help="head steps per whnf search")
    common.add_argument("--strategy", choices=STRATEGIES, default="leftmost-outermost")
    common.add_argument("--seed", type=int, default=0, help="seed for the random strategy")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--file", help="read the term(s) from a file; blank lines separate terms")
    common.add_argument("--no-zoo", action="store_true", help="treat zoo names as plain variables")

    parser = argparse.ArgumentParser(
        prog="clocked",
        description="Clocked lambda calculus: reduction, clocked Lévy-Longo trees, discrimination.",
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="reduce with the clocked rules")
    p.add_argument("terms", nargs="*", metavar="TERM")
    p.add_argument("--max-steps", type=int, default=1000)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("tree", parents=[common], help="print the clocked Lévy-Longo tree")
    p.add_argument("terms", nargs="*", metavar="TERM")
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("compare", parents=[common], help="try to show two terms inconvertible")
    p.add_argument("terms", nargs="*", metavar="TERM")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("simple", parents=[common], help="check whether a term is simple")
    p.add_argument("terms", nargs="*", metavar="TERM")
    p.set_defaults(func=cmd_simple)

    p = sub.add_parser("zoo", parents=[common], help="list the named combinators")
    p.set_defaults(func=cmd_zoo, terms=[])
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.depth is None:
        args.depth = list(DEFAULT_DEPTHS)
    if any(d < 0 for d in args.depth) or args.fuel <= 0:
        parser.error("depths must be non-negative and fuel positive")
    try:
        return args.func(args)
    except _Usage as exc:
        parser.error(str(exc))
    except (ClockedError, ValueError, OSError) as exc:
        print(f"clocked: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
