"""Command-line surface.

Subcommands: verify, dynamics, solve-tree, optimum, poa, impose, gen, reduce.
Exit codes: 0 success, 1 the checked property is false, 2 input error,
3 profile budget exceeded.  `--json` switches every subcommand to one
machine-readable record on stdout.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Optional

from . import instances
from .dynamics import run_dynamics
from .errors import (
    BudgetExceededError,
    ParameterError,
    PolycoordError,
)
from .game_core import (
    GraphCoordinationSpec,
    PolymatrixGame,
    check_profile,
    from_graph_coordination,
    social_welfare,
)
from .inefficiency import (
    INFINITY,
    NO_EQUILIBRIUM,
    empirical_poa,
    social_optimum,
)
from .mechanisms import impose_and_release
from .serialization import (
    format_rational,
    parse_game,
    parse_graph,
    serialize_game,
)
from .tree_solver import strong_equilibrium_tree
from .verification import is_equilibrium

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def _profile_arg(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"profile must be comma-separated strategy indices, got {text!r}"
        )


def _load_game(path: str) -> tuple[PolymatrixGame, Optional[GraphCoordinationSpec]]:
    with open(path, "r", encoding="utf-8") as fh:
        parsed = parse_game(fh.read())
    if isinstance(parsed, GraphCoordinationSpec):
        return from_graph_coordination(parsed), parsed
    return parsed, None


def _load_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _initial_profile(game: PolymatrixGame, args) -> tuple[int, ...]:
    if args.profile is not None:
        return check_profile(game, args.profile)
    if args.seed is not None:
        rng = random.Random(args.seed)
        return tuple(
            rng.randrange(game.num_strategies(i)) for i in range(game.n)
        )
    return tuple(0 for _ in range(game.n))


def _profile_str(game: PolymatrixGame, s) -> str:
    return ",".join(game.strategies[i][c] for i, c in enumerate(s))


def _emit(args, record: dict, text_lines: list[str]):
    if args.json:
        print(json.dumps(record, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _deviation_record(game, dev):
    if dev is None:
        return None
    return {
        "coalition": list(dev.coalition),
        "new-strategies": [
            game.strategies[i][c] for i, c in zip(dev.coalition, dev.new_choice)
        ],
        "payoffs-before": [format_rational(q) for q in dev.before],
        "payoffs-after": [format_rational(q) for q in dev.after],
    }


def cmd_verify(args) -> int:
    game, _ = _load_game(args.game)
    s = check_profile(game, args.profile)
    report = is_equilibrium(game, s, args.alpha, args.k, method=args.method)
    record = {
        "command": "verify",
        "verdict": report.verdict,
        "method": report.method,
        "witness": _deviation_record(game, report.witness),
    }
    lines = [f"equilibrium: {'yes' if report.verdict else 'no'} ({report.method})"]
    if report.witness is not None:
        dev = report.witness
        lines.append(
            "witness: coalition "
            + ",".join(str(i) for i in dev.coalition)
            + " -> "
            + ",".join(
                game.strategies[i][c] for i, c in zip(dev.coalition, dev.new_choice)
            )
        )
    _emit(args, record, lines)
    return EXIT_OK if report.verdict else EXIT_FALSE


def cmd_dynamics(args) -> int:
    game, _ = _load_game(args.game)
    s0 = _initial_profile(game, args)
    trace = run_dynamics(
        game, s0, args.alpha, args.k, max_steps=args.max_steps, policy=args.policy
    )
    record = {
        "command": "dynamics",
        "verdict": trace.verdict,
        "steps": len(trace.steps),
        "period": trace.period,
        "initial": _profile_str(game, trace.states[0]),
        "final": _profile_str(game, trace.states[-1]),
        "welfares": [format_rational(w) for w in trace.welfares],
        "potentials": [format_rational(p) for p in trace.potentials],
    }
    lines = [
        f"verdict: {trace.verdict} after {len(trace.steps)} steps"
        + (f" (period {trace.period})" if trace.period is not None else ""),
        f"initial: {_profile_str(game, trace.states[0])}"
        f"  welfare {format_rational(trace.welfares[0])}",
        f"final:   {_profile_str(game, trace.states[-1])}"
        f"  welfare {format_rational(trace.welfares[-1])}",
    ]
    _emit(args, record, lines)
    return EXIT_OK


def cmd_solve_tree(args) -> int:
    game, spec = _load_game(args.game)
    if spec is None:
        raise ParameterError(
            "solve-tree needs a graph-coordination document"
        )
    profile = strong_equilibrium_tree(spec)
    sw = social_welfare(game, profile)
    record = {
        "command": "solve-tree",
        "profile": _profile_str(game, profile),
        "welfare": format_rational(sw),
    }
    _emit(
        args,
        record,
        [
            f"strong equilibrium: {_profile_str(game, profile)}",
            f"welfare: {format_rational(sw)}",
        ],
    )
    return EXIT_OK


def cmd_optimum(args) -> int:
    game, _ = _load_game(args.game)
    best, sw = social_optimum(game, max_profiles=args.max_profiles)
    record = {
        "command": "optimum",
        "profile": _profile_str(game, best),
        "welfare": format_rational(sw),
    }
    _emit(
        args,
        record,
        [
            f"optimum: {_profile_str(game, best)}",
            f"welfare: {format_rational(sw)}",
        ],
    )
    return EXIT_OK


def cmd_poa(args) -> int:
    game, _ = _load_game(args.game)
    k = args.k if args.k is not None else game.n
    result = empirical_poa(game, args.alpha, k, max_profiles=args.max_profiles)
    if result is NO_EQUILIBRIUM:
        shown = "no-equilibrium"
    elif result is INFINITY:
        shown = "infinity"
    else:
        shown = format_rational(result)
    _emit(args, {"command": "poa", "ratio": shown}, [f"price of anarchy: {shown}"])
    return EXIT_OK


def cmd_impose(args) -> int:
    game, _ = _load_game(args.game)
    s = check_profile(game, args.profile)
    result = impose_and_release(game, s, args.k, max_profiles=args.max_profiles)
    record = {
        "command": "impose",
        "profile": _profile_str(game, result),
        "welfare": format_rational(social_welfare(game, result)),
        "reference-welfare": format_rational(social_welfare(game, s)),
    }
    _emit(
        args,
        record,
        [
            f"released equilibrium: {_profile_str(game, result)}",
            f"welfare: {format_rational(social_welfare(game, result))}",
        ],
    )
    return EXIT_OK


def cmd_gen(args) -> int:
    name = args.name
    params = args.params
    try:
        if name == "cycle":
            (m,) = params
            out = instances.gen_cycle_counterexample(int(m)).game
        elif name == "golden-ratio":
            (w,) = params
            out = instances.gen_golden_ratio(Fraction(w))
        elif name == "spoa-path":
            (a,) = params
            out = instances.gen_spoa_path(Fraction(a))
        elif name == "poa-lower":
            n, k, a = params
            out = instances.gen_poa_lower(int(n), int(k), Fraction(a))
        elif name == "imposition-tight":
            (k,) = params
            out = instances.gen_imposition_tight(int(k))
        elif name == "private-common":
            (path,) = params
            n, edges, _ = _load_graph(path)
            out = instances.gen_private_common(n, edges)
        else:
            raise ParameterError(f"unknown generator {name!r}")
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParameterError(f"bad arguments for gen {name}: {exc}") from None
    sys.stdout.write(serialize_game(out))
    return EXIT_OK


def cmd_reduce(args) -> int:
    n, edges, _ = _load_graph(args.graph)
    name = args.name
    extra = {}
    if name == "clique":
        if args.k is None:
            raise ParameterError("reduce clique requires --k")
        spec, profile = instances.reduce_clique(n, edges, args.k, args.alpha)
        extra["profile"] = ",".join(str(c) for c in profile)
    elif name == "mmm":
        if args.l is None:
            raise ParameterError("reduce mmm requires --l")
        spec = instances.reduce_mmm(n, edges, args.l)
    elif name == "vertex-cover":
        spec, target = instances.reduce_vertex_cover(n, edges)
        extra["target-welfare"] = format_rational(target)
    else:
        raise ParameterError(f"unknown reduction {name!r}")
    if args.json:
        record = {"command": "reduce", "name": name, "document": serialize_game(spec)}
        record.update(extra)
        print(json.dumps(record, sort_keys=True))
    else:
        sys.stdout.write(serialize_game(spec))
        for key, value in extra.items():
            print(f"{key}: {value}", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycoord",
        description="Solve, verify and generate polymatrix coordination games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, game=True):
        if game:
            p.add_argument("game", help="game document file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument(
            "--max-profiles",
            type=int,
            default=None,
            help="profile-enumeration budget (env POLYCOORD_MAX_PROFILES overrides the default)",
        )

    p = sub.add_parser("verify", help="check whether a profile is an (alpha,k)-equilibrium")
    common(p)
    p.add_argument("--profile", type=_profile_arg, required=True)
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--k", type=int, required=True)
    p.add_argument(
        "--method",
        choices=["auto", "brute-force", "simple", "min-degree"],
        default="auto",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dynamics", help="run coalition improvement dynamics")
    common(p)
    p.add_argument("--profile", type=_profile_arg, default=None)
    p.add_argument("--seed", type=int, default=None, help="random initial profile")
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-steps", type=int, required=True)
    p.add_argument("--policy", choices=["first", "best-welfare"], default="first")
    p.set_defaults(func=cmd_dynamics)

    p = sub.add_parser("solve-tree", help="strong equilibrium on a forest")
    common(p)
    p.set_defaults(func=cmd_solve_tree)

    p = sub.add_parser("optimum", help="exhaustive social optimum")
    common(p)
    p.set_defaults(func=cmd_optimum)

    p = sub.add_parser("poa", help="exact empirical price of anarchy")
    common(p)
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--k", type=int, default=None, help="defaults to n")
    p.set_defaults(func=cmd_poa)

    p = sub.add_parser("impose", help="impose the top-k earners, settle, release")
    common(p)
    p.add_argument("--profile", type=_profile_arg, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_impose)

    p = sub.add_parser("gen", help="emit a named instance as a game document")
    p.add_argument(
        "name",
        choices=[
            "cycle",
            "golden-ratio",
            "spoa-path",
            "poa-lower",
            "imposition-tight",
            "private-common",
        ],
    )
    p.add_argument("params", nargs="*")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="emit a hardness-reduction instance")
    p.add_argument("name", choices=["clique", "mmm", "vertex-cover"])
    p.add_argument("graph", help="edge-list graph file")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--alpha", type=_rational, default=Fraction(1))
    p.add_argument("--l", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    return parser


def cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad input and 0 on --help; keep those codes.
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (PolycoordError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main():
    sys.exit(cli())


if __name__ == "__main__":
    main()
