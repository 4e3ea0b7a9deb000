"""Command-line front end: ``autostruct decide|compile|witness|analyze``.

Exit codes: 0 true/success, 1 false/unsatisfiable, 2 error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .autfile import to_dot, write_aut
from .boolean_algebras import DEFAULT_INDEX_CAP, analyze_ba
from .errors import AutostructError
from .logic.compiler import DEFAULT_STATE_CAP, compile_formula, decide, witness
from .orders import DEFAULT_ITER_CAP, analyze_order, failed_linear_axioms, format_report, LinearOrderHandle
from .presentations.builtins import BUILTINS
from .presentations.manifest import read_structure
from .trees import analyze_tree

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


def load_structure(spec: str):
    """A manifest path, ``builtin:NAME``, or a bare builtin name such as ``ordinal(0,1)``."""
    if spec.startswith("builtin:") or Path(spec).exists():
        return read_structure(spec)
    if spec.split("(")[0] in BUILTINS:
        return read_structure("builtin:" + spec)
    raise AutostructError(f"no such structure file or builtin: {spec}")


def load_formula(text: str) -> str:
    """Formula text, or ``@file`` to read it from a file."""
    if text.startswith("@"):
        return Path(text[1:]).read_text(encoding="utf-8")
    return text


def cmd_decide(args, out) -> int:
    p = load_structure(args.structure)
    value = decide(p, load_formula(args.formula), args.state_cap)
    print("true" if value else "false", file=out)
    return EXIT_TRUE if value else EXIT_FALSE


def cmd_compile(args, out) -> int:
    p = load_structure(args.structure)
    c = compile_formula(p, load_formula(args.formula), args.state_cap)
    if c.relation is None:
        raise AutostructError("formula is a sentence and compiles to a truth value; use 'decide' instead")
    write_aut(c.relation, args.out)
    if args.dot:
        Path(args.dot).write_text(to_dot(c.relation), encoding="utf-8")
    print(f"states: {c.relation.acceptor.n_states}", file=out)
    print(f"variables: {' '.join(c.variables)}", file=out)
    return EXIT_TRUE


def cmd_witness(args, out) -> int:
    if args.count == 0:
        return EXIT_TRUE
    p = load_structure(args.structure)
    rows = witness(p, load_formula(args.formula), args.count, args.state_cap)
    for row in rows:
        print(" ".join(f"{k}={v}" for k, v in row.items()), file=out)
    return EXIT_TRUE if rows else EXIT_FALSE


def cmd_analyze(args, out) -> int:
    p = load_structure(args.structure)
    if args.kind == "order":
        h = LinearOrderHandle(p, args.state_cap)
        bad = failed_linear_axioms(h)
        if bad:
            raise AutostructError(f"Le is not a linear order: axiom '{bad[0]}' fails")
        report = analyze_order(h, args.iter_cap or DEFAULT_ITER_CAP, args.state_cap)
    elif args.kind == "tree":
        report = analyze_tree(p, state_cap=args.state_cap)
        if not report["tree"]:
            raise AutostructError(f"Le is not a partial-order tree: axiom '{report['failed'].split(', ')[0]}' fails")
        path = report.pop("koenig_path", None)
        if path is not None and args.path:
            write_aut(path, args.path)
            report["koenig_path"] = args.path
        if path is not None and args.dot:
            Path(args.dot).write_text(to_dot(path, "koenig_path"), encoding="utf-8")
    else:
        report = analyze_ba(p, args.iter_cap or DEFAULT_INDEX_CAP, args.state_cap)
    print(format_report(report), file=out)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="autostruct",
        description="Decision procedures for word-automatic structures. "
        "STRUCTURE is a .astruct manifest, builtin:NAME, or a builtin name such as presburger or 'ordinal(3,2)'. "
        "FORMULA is formula text or @file.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP,
                        help=f"largest intermediate automaton allowed (default {DEFAULT_STATE_CAP})")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decide", parents=[common], help="decide a sentence; exit 0 if true, 1 if false")
    p.add_argument("structure")
    p.add_argument("formula")
    p.set_defaults(run=cmd_decide)

    p = sub.add_parser("compile", parents=[common], help="compile a formula with free variables to a .aut file")
    p.add_argument("structure")
    p.add_argument("formula")
    p.add_argument("--out", "-o", required=True, help="output .aut path")
    p.add_argument("--dot", help="also write a DOT rendering here")
    p.set_defaults(run=cmd_compile)

    p = sub.add_parser("witness", parents=[common], help="print llex-least satisfying assignments; exit 1 if none")
    p.add_argument("structure")
    p.add_argument("formula")
    p.add_argument("--count", "-n", type=int, default=10, help="maximum number of assignments (default 10)")
    p.set_defaults(run=cmd_witness)

    p = sub.add_parser("analyze", parents=[common], help="analyse a linear order, tree or Boolean algebra")
    p.add_argument("kind", choices=["order", "tree", "ba"])
    p.add_argument("structure")
    p.add_argument("--iter-cap", type=int, default=None,
                   help=f"≡_F quotient iteration cap for orders (default {DEFAULT_ITER_CAP}); "
                   f"B_ω^n index cap for Boolean algebras (default {DEFAULT_INDEX_CAP})")
    p.add_argument("--path", help="tree: write the König path automaton here")
    p.add_argument("--dot", help="tree: write the König path as DOT here")
    p.set_defaults(run=cmd_analyze)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_TRUE if exc.code == 0 else EXIT_ERROR
    if getattr(args, "count", 1) < 0:
        print("autostruct: error: --count must be non-negative", file=err)
        return EXIT_ERROR
    try:
        return args.run(args, out)
    except (AutostructError, OSError) as exc:
        print(f"autostruct: error: {exc}", file=err)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
