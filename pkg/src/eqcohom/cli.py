"""Command-line front end.

Subcommands:

    eqcohom point chart [--window P0:P1,Q0:Q1] [--format ascii|csv|json]
    eqcohom rp <n|inf> basis|present|mul <expr>
    eqcohom so <p> basis|betti|mul <expr>|check-presentation|omega <expr>
    eqcohom stiefel <p> basis|mul <expr>
    eqcohom psi <space> <expr>
    eqcohom verify [--max-p N] [--suite additive|ring|stiefel|forgetful|all]

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
The environment variable EQCOHOM_MAX_P caps verification depth.
"""

from __future__ import annotations

import argparse
import itertools
import json
import os
import re
import sys
from typing import List, Optional, Sequence

from . import forgetful, rotation, stiefel, verify
from .coeff import BiDegree
from .grading import BettiTable, FreeModule, Window
from .parser import ParseError, UnknownGeneratorError
from .projective import INFINITE, rp_basis
from .spaces import RpSpace, SoSpace, Space, StiefelSpace, get_space

_WINDOW_RE = re.compile(r"^(-?\d+):(-?\d+),(-?\d+):(-?\d+)$")


class UsageError(Exception):
    pass


def _parse_window(text: str) -> Window:
    m = _WINDOW_RE.match(text)
    if not m:
        raise UsageError(f"invalid window {text!r}; expected P0:P1,Q0:Q1")
    p0, p1, q0, q1 = (int(g) for g in m.groups())
    if p0 > p1 or q0 > q1:
        raise UsageError(f"empty window {text!r}")
    return (p0, p1, q0, q1)


def _fold_window_flags(argv: List[str]) -> List[str]:
    # argparse refuses option values that begin with '-', as windows often do
    out = []
    i = 0
    while i < len(argv):
        arg = argv[i]
        if arg == "--window" and i + 1 < len(argv) and _WINDOW_RE.match(argv[i + 1]):
            out.append(f"--window={argv[i + 1]}")
            i += 2
            continue
        out.append(arg)
        i += 1
    return out


def _emit_table(table: BettiTable, fmt: str) -> None:
    if fmt == "csv":
        sys.stdout.write(table.to_csv())
    elif fmt == "json":
        sys.stdout.write(table.to_json())
    else:
        sys.stdout.write(table.to_ascii())


def _module_window(module: FreeModule, margin: int = 0) -> Window:
    degs = module.degrees()
    return (
        min(d.p for d in degs) - margin,
        max(d.p for d in degs) + margin,
        min(d.q for d in degs) - margin,
        max(d.q for d in degs) + margin,
    )


def _ambient_arg(text: str):
    if text == "inf":
        return INFINITE
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"invalid ambient {text!r}; expected an integer or 'inf'") from None


def _require_expr(args, what: str) -> str:
    if not args.expr:
        raise UsageError(f"'{what}' needs an expression argument")
    return args.expr


def _cmd_point(args) -> int:
    if args.action != "chart":
        raise UsageError(f"unknown point action {args.action!r}")
    window = _parse_window(args.window) if args.window else (-4, 4, -5, 5)
    table = BettiTable.of_module("pt", get_space("pt").free_module(), window)
    _emit_table(table, args.format)
    return 0


def _cmd_rp(args) -> int:
    ambient = _ambient_arg(args.n)
    space = RpSpace(ambient)
    if args.action == "basis":
        basis = rp_basis(ambient)
        if ambient == INFINITE:
            basis = list(itertools.islice(basis, args.limit))
        for m in basis:
            print(f"{m.label(ambient)}  {m.degree}")
        if ambient == INFINITE:
            print("...")
        return 0
    if args.action == "present":
        if ambient == 1:
            print("generators: a in (1,1)")
            print("relations:  a^2 = r*a")
            return 0
        print("generators: a in (1,1), b in (2,1)")
        relations = ["a^2 = r*a + t*b"]
        if ambient != INFINITE:
            n = ambient
            if n % 2:
                relations.append(f"b^{(n + 1) // 2} = 0")
            else:
                relations.append(f"b^{n // 2 + 1} = 0")
                relations.append(f"a*b^{n // 2} = 0")
        for k, rel in enumerate(relations):
            prefix = "relations:  " if k == 0 else "            "
            print(prefix + rel)
        return 0
    if args.action == "mul":
        elt = space.parse(_require_expr(args, "rp mul"))
        print(space.element_expr(elt))
        return 0
    raise UsageError(f"unknown rp action {args.action!r}")


def _cmd_so(args) -> int:
    space = SoSpace(args.p)
    if args.action == "basis":
        for seq in rotation.admissible_sequences(args.p):
            print(f"{rotation.sequence_label(seq)}  {rotation.sequence_degree(seq)}")
        return 0
    if args.action == "betti":
        module = space.free_module()
        window = _parse_window(args.window) if args.window else _module_window(module)
        _emit_table(BettiTable.of_module(space.name, module, window), args.format)
        return 0
    if args.action == "mul":
        elt = space.parse(_require_expr(args, "so mul"))
        print(space.element_expr(elt))
        return 0
    if args.action == "omega":
        elt = space.parse(_require_expr(args, "so omega"))
        tensor = rotation.omega_star(args.p, elt)
        print(space.omega_space().element_expr(tensor))
        return 0
    if args.action == "check-presentation":
        max_p = max(args.p, rotation.DEFAULT_MAX_P)
        report = rotation.check_presentation(args.p, max_p=max_p)
        sys.stdout.write(report.to_text())
        return 0
    raise UsageError(f"unknown so action {args.action!r}")


def _cmd_stiefel(args) -> int:
    space = StiefelSpace(args.p)
    if args.action == "basis":
        for seq, deg in stiefel.stiefel_basis(args.p):
            print(f"{stiefel.bracket_label(seq)}  {deg}")
        return 0
    if args.action == "mul":
        elt = space.parse(_require_expr(args, "stiefel mul"))
        print(space.element_expr(elt))
        return 0
    raise UsageError(f"unknown stiefel action {args.action!r}")


def _cmd_psi(args) -> int:
    space = get_space(args.space)
    elt = space.parse(args.expr)
    print(str(forgetful.psi_element(elt)))
    return 0


def _cmd_verify(args) -> int:
    max_p: Optional[int] = args.max_p
    env_cap = os.environ.get("EQCOHOM_MAX_P")
    if env_cap is not None:
        try:
            env_value = int(env_cap)
        except ValueError:
            raise UsageError(f"EQCOHOM_MAX_P must be an integer, got {env_cap!r}") from None
        max_p = env_value if max_p is None else min(max_p, env_value)
    if max_p is not None and max_p < 2:
        raise UsageError("--max-p must be at least 2")
    results = verify.run_suites((args.suite,), max_p=max_p)
    width = max(len(f"{r.suite}/{r.name}") for r in results)
    for r in results:
        line = f"{r.status:<5} {f'{r.suite}/{r.name}':<{width}}"
        if r.detail:
            line += f"  {r.detail}"
        print(line)
    print(verify.summarize(results))
    return 1 if any(r.failed for r in results) else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eqcohom",
        description="Bigraded Z/2-equivariant cohomology calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    point = sub.add_parser("point", help="the cohomology of a point")
    point.add_argument("action", choices=["chart"])
    point.add_argument("--window", help="P0:P1,Q0:Q1 (inclusive), default -4:4,-5:5")
    point.add_argument("--format", choices=["ascii", "csv", "json"], default="ascii")
    point.set_defaults(func=_cmd_point)

    rp = sub.add_parser("rp", help="twisted projective spaces")
    rp.add_argument("n", help="ambient (integer >= 1, or 'inf')")
    rp.add_argument("action", choices=["basis", "present", "mul"])
    rp.add_argument("expr", nargs="?")
    rp.add_argument("--limit", type=int, default=10, help="how many basis classes to list for inf")
    rp.set_defaults(func=_cmd_rp)

    so = sub.add_parser("so", help="rotation groups")
    so.add_argument("p", type=int)
    so.add_argument("action", choices=["basis", "betti", "mul", "omega", "check-presentation"])
    so.add_argument("expr", nargs="?")
    so.add_argument("--window", help="P0:P1,Q0:Q1 for betti")
    so.add_argument("--format", choices=["ascii", "csv", "json"], default="ascii")
    so.set_defaults(func=_cmd_so)

    st = sub.add_parser("stiefel", help="frame manifolds")
    st.add_argument("p", type=int)
    st.add_argument("action", choices=["basis", "mul"])
    st.add_argument("expr", nargs="?")
    st.set_defaults(func=_cmd_stiefel)

    psi = sub.add_parser("psi", help="forgetful image of an expression")
    psi.add_argument("space", help="pt | sphere:p,q | rp:n | so:p | stiefel:p | tensor:...")
    psi.add_argument("expr")
    psi.set_defaults(func=_cmd_psi)

    ver = sub.add_parser("verify", help="run verification suites")
    ver.add_argument("--max-p", type=int, default=None, dest="max_p")
    ver.add_argument(
        "--suite",
        choices=list(verify.SUITE_NAMES) + ["all"],
        default="all",
    )
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = _fold_window_flags(list(argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except (UsageError, ParseError, UnknownGeneratorError, ValueError) as exc:
        print(f"eqcohom: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
