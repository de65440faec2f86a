"""Command-line entry point: ``charp-closure-lab run|repl|reproduce``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import config
from .dsl import parse_program
from .errors import BudgetExceededError, DSLSyntaxError
from .executor import EXIT_BUDGET, EXIT_FAILURE, EXIT_OK, EXIT_USAGE, Executor
from .poly import is_prime
from .reproduce import reproduce_paper_example

SLOW_PRIMES_FROM = 5


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--emax", type=int, dest="e_max", help="bounded-route depth e_max")
    parser.add_argument("--qmax", type=int, dest="q_max", help="cap on Frobenius powers q")
    parser.add_argument("--gb-budget", type=int, dest="gb_max_reductions",
                        help="maximum reduction steps per Groebner basis")
    parser.add_argument("--gb-basis", type=int, dest="gb_max_basis",
                        help="maximum intermediate basis size")
    parser.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="charp-closure-lab",
                                     description="Tight closure and test ideal calculations over F_p.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a DSL program file")
    run.add_argument("file", type=Path)
    _add_config_flags(run)

    repl = sub.add_parser("repl", help="interactive session")
    _add_config_flags(repl)

    rep = sub.add_parser("reproduce", help="check the F-stability counterexample end to end")
    rep.add_argument("--prime", type=int, required=True)
    rep.add_argument("--slow", action="store_true", help=f"allow primes >= {SLOW_PRIMES_FROM}")
    rep.add_argument("--audit-log", type=Path, help="write JSONL audit records here")
    _add_config_flags(rep)
    return parser


def _flags(args: argparse.Namespace) -> dict:
    keys = ("e_max", "q_max", "gb_max_reductions", "gb_max_basis")
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


def cmd_run(args: argparse.Namespace) -> int:
    try:
        source = args.file.read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ex = Executor(flags=_flags(args), json_output=args.json)
    return ex.run_source(source)


def cmd_repl(args: argparse.Namespace, stdin=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    ex = Executor(flags=_flags(args), json_output=args.json)
    interactive = stdin.isatty()
    status = EXIT_OK
    buffer = ""
    while True:
        if interactive:
            sys.stdout.write("... " if buffer else "ccl> ")
            sys.stdout.flush()
        line = stdin.readline()
        if not line:
            break
        buffer += line
        if ";" not in line:
            continue
        try:
            program = parse_program(buffer)
        except DSLSyntaxError as exc:
            if exc.line == buffer.count("\n") + 1 and "end of input" in str(exc):
                continue  # statement not finished yet
            print(f"error: {exc}", file=sys.stderr)
            buffer = ""
            status = max(status, EXIT_USAGE) if status != EXIT_BUDGET else status
            continue
        buffer = ""
        result = ex.execute(program)
        if result == EXIT_BUDGET or status == EXIT_OK:
            status = result if result != EXIT_OK else status
    return status


def cmd_reproduce(args: argparse.Namespace) -> int:
    p = args.prime
    if not is_prime(p):
        print(f"usage error: {p} is not prime", file=sys.stderr)
        return EXIT_USAGE
    if p >= SLOW_PRIMES_FROM and not args.slow:
        print(f"usage error: p = {p} takes minutes; pass --slow to run it", file=sys.stderr)
        return EXIT_USAGE
    cfg = config.resolve(_flags(args), None, os.environ)
    try:
        with config.using(cfg):
            result = reproduce_paper_example(p)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc} {exc.progress}", file=sys.stderr)
        return EXIT_BUDGET
    if args.audit_log is not None:
        result.save(args.audit_log)
    if args.json:
        print(json.dumps({"prime": p, "ok": result.ok, "first_failure": result.first_failure,
                          "records": [r.as_dict() for r in result.records]}, sort_keys=True))
    else:
        for r in result.records:
            print(f"{'ok  ' if r.verdict else 'FAIL'} {r.assertion}")
        print(f"p = {p}: " + ("every assertion holds" if result.ok
                              else f"first failing assertion: {result.first_failure}"))
    return EXIT_OK if result.ok else EXIT_FAILURE


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        config.resolve(_flags(args), None, os.environ)
    except ValueError as exc:
        print(f"usage error: bad configuration value: {exc}", file=sys.stderr)
        return EXIT_USAGE
    handler = {"run": cmd_run, "repl": cmd_repl, "reproduce": cmd_reproduce}[args.command]
    return handler(args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
