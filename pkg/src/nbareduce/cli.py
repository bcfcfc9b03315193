"""Command-line frontend: reduce, sim, verify, gen.

Exit codes: 0 success, 1 input parse error, 2 cap exceeded, 3 verification
found a counterexample.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixedword, langops, proxy, simulations
from .automata import (
    BaParseError,
    FIXTURES,
    Nba,
    fig_2,
    induced_equivalence,
    parse_ba,
    random_nba,
    write_ba,
    write_dot,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CAP = 2
EXIT_COUNTEREXAMPLE = 3

SIM_NAMES = tuple(proxy.RELATION_STEPS) + ("fx-de", "de-cont")


def _read_input(path: str) -> Nba:
    if path == "-":
        return parse_ba(sys.stdin.read())
    with open(path) as fh:
        return parse_ba(fh.read())


def _write_output(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _fx_limits(args) -> fixedword.FxLimits:
    return fixedword.FxLimits(
        max_states=args.fx_max_states,
        mh_cap=args.mh_cap,
        complement_cap=args.complement_cap,
    )


def cmd_reduce(args) -> int:
    try:
        a = _read_input(args.input)
    except BaParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        reduced, rep = proxy.reduce_pipeline(a, args.pipeline, _fx_limits(args))
    except langops.CapExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAP
    _write_output(args.output, write_ba(reduced))
    if args.dot:
        _write_output(args.dot, write_dot(reduced))
    if args.stats:
        print(json.dumps(rep.as_dict()))
    if args.report_dir:
        from . import report

        for path in report.write_report(rep, args.report_dir):
            print(f"wrote {path}", file=sys.stderr)
    return EXIT_OK


def _compute_relation(a: Nba, name: str, args):
    if name in proxy.RELATION_STEPS:
        return proxy.RELATION_STEPS[name](a)
    if name == "fx-de":
        return fixedword.fx_delayed_sim(a, _fx_limits(args)).relation
    if name == "de-cont":
        return simulations.delayed_containment_relation(a, args.complement_cap)
    raise ValueError(f"unknown relation {name!r}")


def cmd_sim(args) -> int:
    try:
        a = _read_input(args.input)
    except BaParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        rel = _compute_relation(a, args.relation, args)
    except langops.CapExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAP
    lines = sorted(
        f"{a.state_names[i]} <= {a.state_names[j]}" for i, j in rel.pairs()
    )
    for line in lines:
        print(line)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        a = _read_input(args.original)
        b = _read_input(args.reduced)
    except BaParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    try:
        ok, witness = langops.equivalent(a, b, args.complement_cap)
    except langops.CapExceeded as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CAP
    if ok:
        print("EQUIVALENT")
        return EXIT_OK
    u = ",".join(a.alphabet[x] for x in witness.prefix)
    v = ",".join(a.alphabet[x] for x in witness.period)
    print(f"COUNTEREXAMPLE u={u} v={v}")
    return EXIT_COUNTEREXAMPLE


def cmd_gen(args) -> int:
    name = args.fixture
    if name == "random":
        a = random_nba(
            args.states, args.symbols, args.density, args.final_density, args.seed
        )
    elif name.startswith("fig2:"):
        try:
            k = int(name.split(":", 1)[1])
            a = fig_2(k)
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return EXIT_PARSE
    elif name in FIXTURES:
        a = FIXTURES[name]()
    else:
        print(f"error: unknown fixture {name!r}", file=sys.stderr)
        return EXIT_PARSE
    _write_output(args.output, write_ba(a))
    return EXIT_OK


def _add_caps(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--complement-cap",
        type=int,
        default=langops.DEFAULT_COMPLEMENT_CAP,
        help="reachable-state cap for complementation",
    )
    parser.add_argument(
        "--mh-cap",
        type=int,
        default=fixedword.DEFAULT_MH_CAP,
        help="reachable-state cap for the breakpoint translation",
    )
    parser.add_argument(
        "--fx-max-states",
        type=int,
        default=fixedword.DEFAULT_FX_MAX_STATES,
        help="state guard for fixed-word simulation",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nbareduce",
        description="Quotient-based reduction of Büchi automata in BA format.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="apply a reduction pipeline to a BA file")
    p.add_argument("input", help="input BA file, or - for stdin")
    p.add_argument("-o", "--output", help="output BA file (default stdout)")
    p.add_argument(
        "--pipeline",
        nargs="*",
        default=[],
        choices=list(proxy.PIPELINE_STEPS),
        help="quotienting steps, applied in order",
    )
    p.add_argument("--stats", action="store_true", help="print a JSON stats line")
    p.add_argument("--dot", help="also write the result as DOT to this file")
    p.add_argument(
        "--report-dir", help="write report.csv and states.png into this directory"
    )
    _add_caps(p)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("sim", help="print all pairs of a simulation preorder")
    p.add_argument("relation", choices=list(SIM_NAMES))
    p.add_argument("input", help="input BA file, or - for stdin")
    _add_caps(p)
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("verify", help="check two BA files for language equality")
    p.add_argument("original")
    p.add_argument("reduced")
    _add_caps(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="write a named fixture or a random automaton")
    p.add_argument(
        "fixture",
        help="fig1a, fig2:<k>, fig3, fig7, fig9, or random",
    )
    p.add_argument("-o", "--output", help="output BA file (default stdout)")
    p.add_argument("--states", type=int, default=5)
    p.add_argument("--symbols", type=int, default=2)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--final-density", type=float, default=0.3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
