"""Command-line front end: export-schema, check, query, cq, report, fixture.

Exit codes: 0 success, 1 inconsistency or unknown policy, 2 input/parse/I-O error.
Diagnostics go to stderr, data to stdout.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import __version__
from .namespaces import default_prefixes
from .query import BUNDLED, CqId, UnknownCqError, execute, parse_query, resolve_cq, run_cq
from .reasoner import check_consistency, materialize
from .schema import build_schema, schema_to_graph
from .store import Graph, merge
from .terms import Iri, WellFormednessError
from .transparency import UnknownPolicyError, score_policy
from .turtle import ParseError, compact, parse, serialize

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class FixtureBundle:
    schema_file: Path
    data_file: Path
    expected: dict[CqId, int]
    policy: Iri


def fixture_bundle() -> FixtureBundle:
    """The shipped schema export, demo policy data and the CQ row counts they yield."""
    root = resources.files("oppokb").joinpath("data")
    meta = json.loads(root.joinpath("fixture.json").read_text("utf-8"))
    return FixtureBundle(
        Path(str(root.joinpath(meta["schema_file"]))),
        Path(str(root.joinpath(meta["data_file"]))),
        {CqId[k]: v for k, v in meta["expected_rows"].items()},
        Iri(meta["policy"]),
    )


class InputError(Exception):
    """Raised for unreadable or unparsable inputs; message is printed verbatim."""


def _active_prefixes(args) -> dict[str, str]:
    prefixes = default_prefixes()
    for item in args.prefix or ():
        label, sep, ns = item.partition("=")
        if not sep or not ns:
            raise InputError(f"--prefix expects label=iri, got {item!r}")
        prefixes[label] = ns
    return prefixes


def _load(paths: Sequence[str], display: dict[str, str]) -> Graph:
    g = Graph()
    for path in paths:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"{path}: cannot read: {exc}") from exc
        try:
            h, prefixes = parse(text)
        except ParseError as exc:
            raise InputError(f"{path}:{exc.line}:{exc.column}: {exc.diagnostic.message}") from exc
        for label, ns in prefixes.items():
            display.setdefault(label, ns)
        g = merge(g, h)
    return g.freeze()


def _iri_arg(value: str, prefixes: dict[str, str]) -> Iri:
    value = value.strip()
    try:
        if value.startswith("<") and value.endswith(">"):
            return Iri(value[1:-1])
        label, sep, local = value.partition(":")
        if sep and label in prefixes:
            return Iri(prefixes[label] + local)
        return Iri(value)
    except WellFormednessError as exc:
        raise InputError(str(exc)) from exc


def _pipeline(args, display):
    schema = build_schema(display.get("oppo"))
    data = _load(args.data, display)
    return schema, materialize(data, schema_to_graph(schema))


def cmd_export_schema(args) -> int:
    prefixes = _active_prefixes(args)
    schema = build_schema(prefixes["oppo"])
    text = serialize(schema_to_graph(schema), schema.prefixes)
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return EXIT_OK


def cmd_check(args) -> int:
    display = _active_prefixes(args)
    schema, closure = _pipeline(args, display)
    report = check_consistency(closure, schema, strict_typing=args.strict_typing or args.strict)
    if args.json:
        sys.stdout.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    elif report.consistent:
        print("consistent")
    else:
        n = len(report.violations)
        print(f"inconsistent: {n} violation{'s' if n != 1 else ''}")
        for v in report.violations:
            print(f"{v.rule.name} {compact(v.focus, display)}: {v.message}")
            for t in v.details:
                print("    " + " ".join(compact(x, display) for x in t) + " .")
    return EXIT_OK if report.consistent else EXIT_FINDINGS


def _print_table(table, args, display):
    if args.json:
        sys.stdout.write(table.to_json())
    else:
        sys.stdout.write(table.render(display))


def cmd_query(args) -> int:
    display = _active_prefixes(args)
    try:
        text = Path(args.query_file).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{args.query_file}: cannot read: {exc}") from exc
    try:
        q = parse_query(text, display, strict=args.strict)
    except ParseError as exc:
        raise InputError(f"{args.query_file}:{exc.line}:{exc.column}: {exc.diagnostic.message}") from exc
    for w in q.warnings:
        print(f"warning: {args.query_file}: {w}", file=sys.stderr)
    _, closure = _pipeline(args, display)
    _print_table(execute(q, closure), args, display)
    return EXIT_OK


def cmd_cq(args) -> int:
    display = _active_prefixes(args)
    try:
        cq = resolve_cq(args.id)
    except UnknownCqError as exc:
        raise InputError(exc.args[0]) from exc
    data_class = _iri_arg(args.data_class, display) if args.data_class else None
    if data_class is not None and BUNDLED[cq].parameter is None:
        raise InputError(f"{cq.value} takes no --data-class parameter")
    _, closure = _pipeline(args, display)
    _print_table(run_cq(cq, closure, data_class=data_class, prefixes=display), args, display)
    return EXIT_OK


def cmd_report(args) -> int:
    display = _active_prefixes(args)
    schema, closure = _pipeline(args, display)
    policy = _iri_arg(args.policy, display)
    try:
        report = score_policy(closure, policy, schema, strict=args.strict)
    except UnknownPolicyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDINGS
    if args.json:
        sys.stdout.write(report.to_json())
    else:
        sys.stdout.write(report.render(lambda t: compact(t, display)))
    return EXIT_OK


def cmd_fixture(args) -> int:
    name = {"telegram": "telegram.ttl", "clash": "clash.ttl", "schema": "oppo.ttl"}[args.name]
    sys.stdout.write(resources.files("oppokb").joinpath("data").joinpath(name).read_text("utf-8"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--strict", action="store_true",
                        help="query warnings become errors; indefinite durations count as unspecified")
    common.add_argument("--prefix", action="append", metavar="LABEL=IRI",
                        help="add or override a prefix (repeatable); oppo=... also moves the schema")

    parser = argparse.ArgumentParser(prog="oppo-kb", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("export-schema", parents=[common], help="write the built-in schema as Turtle")
    p.add_argument("out")
    p.set_defaults(func=cmd_export_schema)

    p = sub.add_parser("check", parents=[common], help="materialize and check consistency")
    p.add_argument("data", nargs="+")
    p.add_argument("--strict-typing", action="store_true",
                   help="show the domain/range edges behind inferred clashing types")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("query", parents=[common], help="run a query file over the data")
    p.add_argument("query_file")
    p.add_argument("data", nargs="+")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("cq", parents=[common], help="run a bundled competency question")
    p.add_argument("id", help="CQ1_STORAGE_LOCATION, CQ2_MAX_12_MONTHS, CQ3_SECURITY_BY_DATATYPE or 1/2/3")
    p.add_argument("data", nargs="+")
    p.add_argument("--data-class", help="narrow CQ1/CQ3 to one data class (IRI or prefixed name)")
    p.set_defaults(func=cmd_cq)

    p = sub.add_parser("report", parents=[common], help="transparency scorecard for a policy")
    p.add_argument("policy", help="policy IRI or prefixed name")
    p.add_argument("data", nargs="+")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("fixture", help="print a shipped fixture file")
    p.add_argument("name", nargs="?", default="telegram", choices=["telegram", "clash", "schema"])
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
