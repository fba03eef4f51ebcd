"""Command-line interface.

Subcommands: prob, table, advise, verify, simulate, serve. Dice counts are
entered in R,Y,G order to match the table presentation. Every flag has a
ZO_-prefixed environment variable fallback (for example ZO_SEED, ZO_GAMES,
ZO_PORT).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .model import (
    ColorCounts,
    InvalidStateError,
    UnknownPolicyError,
    prob_str,
)
from .rolls import brain_dist, expected_brains_next, round_end_prob, shotgun_dist
from .solver import SolverMode, TurnSolver, table_checksum
from .strategy import GameContext, advise_params, parse_policy
from .verify import TABLE_ROW_TARGET, run_verification


def _env(name: str, default=None):
    return os.environ.get(f"ZO_{name.upper()}", default)


def _parse_ryg(text: str, what: str) -> ColorCounts:
    try:
        r, y, g = (int(x) for x in text.split(","))
    except ValueError:
        raise SystemExit(f"{what} must be R,Y,G counts, got {text!r}")
    return ColorCounts(green=g, yellow=y, red=r)


def _add_state_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--cup", required=True, metavar="R,Y,G",
                   help="dice left in the cup, red,yellow,green")
    p.add_argument("--fp", default="0,0,0", metavar="R,Y,G",
                   help="footprints held for reroll (default none)")


def cmd_prob(args) -> int:
    cup = _parse_ryg(args.cup, "--cup")
    fp = _parse_ryg(args.fp, "--fp")
    try:
        bd = brain_dist(cup, fp)
        sd = shotgun_dist(cup, fp)
    except (InvalidStateError, ValueError) as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return 2
    print(f"state: cup {cup}, footprints {fp}")
    print("brains on next roll:")
    for x, p in enumerate(bd.probabilities):
        print(f"  B({x}) = {prob_str(p)}")
    print("shotguns on next roll:")
    for x, p in enumerate(sd.probabilities):
        print(f"  S({x}) = {prob_str(p)}")
    print("round ends on next roll:")
    for s in (0, 1, 2):
        print(f"  PE({s}) = {prob_str(round_end_prob(cup, fp, s))}")
    eb = expected_brains_next(cup, fp)
    print(f"expected brains next roll: {prob_str(eb)}")
    if args.plot_dir:
        from .report import save_distribution_figure

        out = Path(args.plot_dir)
        out.mkdir(parents=True, exist_ok=True)
        fig = save_distribution_figure(
            bd.probabilities, sd.probabilities, out / "next_roll_distributions.png"
        )
        print(f"figure written to {fig}")
    return 0


def cmd_table(args) -> int:
    from .report import (
        save_table_figure,
        write_table_csv,
        write_table_json,
    )

    solver = TurnSolver()
    mode = SolverMode(args.mode)
    t0 = time.perf_counter()
    rows = solver.generate_table(mode)
    elapsed = time.perf_counter() - t0
    checksum = table_checksum(rows)
    out = Path(args.output)
    if args.format == "csv":
        write_table_csv(rows, out)
    else:
        write_table_json(rows, out)
    cells = 3 * len(rows)
    print(f"wrote {out} ({args.format}, mode {mode.value}) in {elapsed:.1f}s")
    print(f"rows: {len(rows)}  (cup,footprint,shotgun) combinations: {cells}")
    print(f"sha256: {checksum}")
    if len(rows) != TABLE_ROW_TARGET and cells != TABLE_ROW_TARGET:
        print(
            f"note: published combination count is {TABLE_ROW_TARGET}; the "
            f"canonical feasibility rules here give {len(rows)} rows x 3 "
            f"shotgun columns. See README for the enumeration analysis."
        )
    if args.plot_dir:
        outdir = Path(args.plot_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        fig = save_table_figure(rows, outdir / "decision_table.png")
        print(f"figure written to {fig}")
    return 0


def cmd_advise(args) -> int:
    cup = _parse_ryg(args.cup, "--cup")
    fp = _parse_ryg(args.fp, "--fp")
    try:
        policy = parse_policy(args.policy)
    except UnknownPolicyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    ctx = None
    if args.scores:
        own, *others = (int(x) for x in args.scores.split(","))
        ctx = GameContext(
            own_score=own,
            opponent_scores=tuple(others),
            position=args.position,
        )
    solver = TurnSolver()
    try:
        advice = advise_params(
            policy, cup, fp, args.shotguns, args.brains, ctx, solver
        )
    except InvalidStateError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return 2
    verdict = "ROLL" if advice.should_continue else "STOP"
    print(f"verdict: {verdict}")
    thr = advice.threshold_used
    thr_text = "unlimited" if thr == float("inf") else str(int(thr))
    print(f"keep rolling while banked brains <= {thr_text}")
    print(f"bust probability: {prob_str(advice.bust_probability)}")
    print(f"expected value of continuing: {advice.expected_value_of_continuing:+.6f}")
    print(f"rationale: {advice.rationale}")
    return 0


def cmd_verify(args) -> int:
    report = run_verification(TurnSolver())
    for line in report.lines():
        print(line)
    return 0 if report.passed else 1


def cmd_simulate(args) -> int:
    from .simulate import run_tournament

    try:
        players = [parse_policy(p) for p in args.players.split(",") if p]
    except UnknownPolicyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not players:
        print("error: --players needs at least one policy", file=sys.stderr)
        return 2
    solver = TurnSolver()
    trace = [] if args.trace else None
    summary = run_tournament(players, games=args.games, seed=args.seed,
                             solver=solver, trace=trace)
    if args.trace:
        from .report import write_trace_jsonl

        write_trace_jsonl(trace, args.trace)
        print(f"trace written to {args.trace} ({len(trace)} turns)")
    d = summary.to_dict()
    unit = "turns" if len(players) == 1 else "games"
    print(f"{args.games} {unit}, seed {args.seed}, players: {', '.join(d['players'])}")
    for name, st in d["policies"].items():
        if len(players) > 1:
            print(
                f"  {name}: win rate {st['win_rate']:.4f} "
                f"(se {st['win_rate_se']:.4f}), "
                f"mean brains/turn {st['mean_brains_per_turn']:.4f} "
                f"(se {st['mean_brains_se']:.4f}), "
                f"bust rate {st['bust_rate']:.4f}"
            )
        else:
            print(
                f"  {name}: mean brains/turn {st['mean_brains_per_turn']:.4f} "
                f"(se {st['mean_brains_se']:.4f}), "
                f"collected/turn {st['mean_collected_per_turn']:.4f}, "
                f"bust rate {st['bust_rate']:.4f}"
            )
    if d.get("simple_rule_regret"):
        reg = d["simple_rule_regret"]
        print(
            f"  simple-rule regret: {reg['count']} decisions, "
            f"max {reg['max']:.4f}, mean {reg['mean']:.4f}"
        )
    if args.output:
        from .report import write_tournament_csv, write_tournament_json

        out = Path(args.output)
        if args.format == "csv":
            write_tournament_csv(summary, out)
        else:
            write_tournament_json(summary, out)
        print(f"summary written to {out}")
    if args.plot_dir:
        from .report import save_tournament_figure

        outdir = Path(args.plot_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        fig = save_tournament_figure(summary, outdir / "tournament.png")
        print(f"figure written to {fig}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    frontend = args.frontend
    if frontend is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        frontend = candidate if candidate.is_dir() else None
    app = create_app(TurnSolver(), frontend_dir=frontend)
    print(f"serving on http://{args.host}:{args.port}")
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zombieodds",
        description="Exact odds, optimal stopping, and advice for the "
        "Zombie Dice turn problem.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prob", help="next-roll distributions for a state")
    _add_state_args(p)
    p.add_argument("--plot-dir", default=_env("plot_dir"),
                   help="also render a distribution figure into this directory")
    p.set_defaults(func=cmd_prob)

    p = sub.add_parser("table", help="generate the full decision table")
    p.add_argument("-o", "--output", default=_env("output", "decision_table.csv"))
    p.add_argument("--format", choices=("csv", "json"),
                   default=_env("format", "csv"))
    p.add_argument("--mode", choices=[m.value for m in SolverMode],
                   default=_env("mode", "recursive"))
    p.add_argument("--plot-dir", default=_env("plot_dir"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("advise", help="stop/continue advice for a state")
    _add_state_args(p)
    p.add_argument("--shotguns", type=int, default=0, choices=(0, 1, 2))
    p.add_argument("--brains", type=int, default=0,
                   help="brains banked so far this turn")
    p.add_argument("--policy", default=_env("policy", "table"),
                   help="optimal|table|simple|onestep|stopat:<k>|alwaysroll")
    p.add_argument("--scores", default=None, metavar="OWN,OPP1,OPP2,...",
                   help="game scores (own first) to enable the endgame check")
    p.add_argument("--position", type=int, default=0,
                   help="how many listed opponents play after you this round")
    p.set_defaults(func=cmd_advise)

    p = sub.add_parser("verify", help="recompute the published reference constants")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", help="run a seeded policy tournament")
    p.add_argument("--games", type=int, default=int(_env("games", 1000)))
    p.add_argument("--seed", type=int, default=int(_env("seed", 0)))
    p.add_argument("--players", default=_env("players", "optimal,simple"),
                   help="comma-separated policy ids")
    p.add_argument("-o", "--output", default=_env("output"))
    p.add_argument("--format", choices=("csv", "json"),
                   default=_env("format", "json"))
    p.add_argument("--plot-dir", default=_env("plot_dir"))
    p.add_argument("--trace", default=_env("trace"),
                   help="write per-turn records to this line-delimited JSON file")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP advice service")
    p.add_argument("--port", type=int, default=int(_env("port", 8000)))
    p.add_argument("--host", default=_env("host", "127.0.0.1"))
    p.add_argument("--frontend", default=None,
                   help="directory of built UI assets to serve at /")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
