"""Command-line front end.

::

    hierarch ch --game games/table1.json --poisson 3/2 --levels 2
    hierarch compare --game games/table1.json --poisson 5 --levels 2 --json -
    hierarch bayes --game games/bc.json --poisson 3/2 --levels 7 --state 5,7

Exit status is 0 on success, 2 for bad input and 3 when a result breaks a
containment the theory guarantees.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from .bayes import build_elaboration, decision_rule_from_solution, state_outcome, verify_bayesian_equilibrium
from .beliefs import LevelWeights
from .dynamic import run_dch, run_delta_kappa_dynamic
from .game import GameError, LevelAugmentedGame, MultistageGame, StaticGame
from .io import GameFormatError, load_game, parse_rational, static_to_json
from .solution import ConsistencyError, SolveReport
from .static import compare, perturb_to_generic, run_ch, run_delta_kappa_static
from .validation import check_level_weights

__all__ = ["main", "build_parser", "run_command"]

EXIT_OK, EXIT_INPUT, EXIT_CONSISTENCY = 0, 2, 3

COMMANDS = ("ch", "dkr", "dch", "ddkr", "compare", "perturb", "bayes")


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text, "argument")
    except GameFormatError as exc:
        raise argparse.ArgumentTypeError(exc.reason) from None


def _weights(text: str) -> list[Fraction]:
    return [_rational(part) for part in text.split(",")]


def _state(text: str) -> tuple[int, int]:
    try:
        m, n = (int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"state must look like m,n, got {text!r}") from None
    return m, n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hierarch", description="Level-k solution concepts with exact arithmetic.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    helps = {
        "ch": "one-by-one cognitive hierarchy (static game)",
        "dkr": "level-restricted rationalizability (static game)",
        "dch": "dynamic cognitive hierarchy (multistage game)",
        "ddkr": "level-restricted rationalizability with sequential rationality",
        "compare": "run both procedures and report where they differ",
        "perturb": "nudge payoffs until the cognitive hierarchy run has no ties",
        "bayes": "check the Bayesian elaboration of the cognitive hierarchy solution",
    }
    for name in COMMANDS:
        cmd = sub.add_parser(name, help=helps[name])
        cmd.add_argument("--game", required=True, help="JSON game file")
        level = cmd.add_mutually_exclusive_group(required=True)
        level.add_argument("--poisson", type=_rational, metavar="P/Q", help="Poisson parameter tau")
        level.add_argument("--weights", type=_weights, metavar="W0,W1,...", help="explicit level weights")
        cmd.add_argument("--levels", type=int, required=True, metavar="L", help="highest level")
        cmd.add_argument("--trace", action="store_true", help="include every elimination step")
        cmd.add_argument("--json", metavar="FILE", help="write the JSON report to FILE ('-' for stdout)")
        cmd.add_argument("--no-presolve", action="store_true", help="decide every belief test by LP")
        if name in ("ddkr", "compare"):
            cmd.add_argument("--belief-lag", action="store_true", help="support step n+1 by survivors of step n-1")
        if name in ("perturb", "bayes"):
            default = Fraction(1, 1000) if name == "perturb" else Fraction(1, 10)
            cmd.add_argument("--eps", type=_rational, default=default, metavar="P/Q")
        if name == "bayes":
            cmd.add_argument("--state", type=_state, metavar="M,N", help="report the outcome at this state")
    return parser


# -- report pieces -----------------------------------------------------------


def _solve_json(report: SolveReport, trace: bool) -> dict:
    out = {
        "procedure": report.procedure,
        "steps": report.steps,
        "survivors": report.final.to_json(),
        "ties": [
            {"step": t.step, "player": t.player, "level": t.level, "options": list(t.options)}
            for t in report.ties
        ],
        "witnesses": {
            f"{p},{k},{a}": w.to_json() for (p, k, a), w in sorted(report.witnesses.items())
        },
    }
    if report.procedure in ("dkr", "ddkr"):
        out["belief_lag"] = report.belief_lag
    if trace:
        out["trace"] = [s.to_json() for s in report.trace]
    return out


def _table(title: str, report: SolveReport) -> list[str]:
    lines = [f"{title} ({report.steps} steps)"]
    final = report.final
    for p in (1, 2):
        for k in range(final.max_level + 1):
            lines.append(f"  theta[{p},{k}]  {{{', '.join(final[(p, k)])}}}")
    for t in report.ties:
        lines.append(f"  tie at step {t.step}: player {t.player} level {t.level} {{{', '.join(t.options)}}}")
    return lines


def _trace_lines(report: SolveReport) -> list[str]:
    lines = []
    for n, sets in enumerate(report.trace):
        cells = []
        for p in (1, 2):
            for k in range(1, sets.max_level + 1):
                cells.append(f"{p}{k}:{{{','.join(sets[(p, k)])}}}")
        lines.append(f"  step {n}: " + " ".join(cells))
    return lines


# -- dispatch ----------------------------------------------------------------


def _augment(game, levels: int, dynamic: bool) -> LevelAugmentedGame:
    if dynamic and isinstance(game, StaticGame):
        game = MultistageGame.from_static(game)
    if not dynamic and isinstance(game, MultistageGame):
        raise ValueError("this command needs a static game; use dch or ddkr for trees")
    return LevelAugmentedGame(game, levels)


def _level_weights(args) -> LevelWeights:
    if args.levels < 1:
        raise ValueError("--levels must be at least 1")
    return check_level_weights(args.poisson, args.weights, args.levels)


def run_command(args: argparse.Namespace) -> tuple[dict, list[str]]:
    """Run the selected command; returns the JSON report and the text table."""
    game = load_game(args.game)
    f = _level_weights(args)
    presolve = not args.no_presolve
    doc: dict = {
        "command": args.command,
        "levels": args.levels,
        "weights": [str(w) for w in f.weights],
    }
    lines: list[str] = []
    cmd = args.command
    if cmd == "ch":
        report = run_ch(_augment(game, args.levels, False), f)
        doc["result"] = _solve_json(report, args.trace)
        lines += _table("cognitive hierarchy", report)
        if args.trace:
            lines += _trace_lines(report)
    elif cmd == "dkr":
        report = run_delta_kappa_static(_augment(game, args.levels, False), f, presolve=presolve)
        doc["result"] = _solve_json(report, args.trace)
        lines += _table("level-restricted rationalizability", report)
        if args.trace:
            lines += _trace_lines(report)
    elif cmd == "dch":
        report = run_dch(_augment(game, args.levels, True), f)
        doc["result"] = _solve_json(report, args.trace)
        lines += _table("dynamic cognitive hierarchy", report)
        if args.trace:
            lines += _trace_lines(report)
    elif cmd == "ddkr":
        report = run_delta_kappa_dynamic(
            _augment(game, args.levels, True), f, belief_lag=args.belief_lag, presolve=presolve
        )
        doc["result"] = _solve_json(report, args.trace)
        lines += _table("dynamic level-restricted rationalizability", report)
        if args.trace:
            lines += _trace_lines(report)
    elif cmd == "compare":
        dynamic = isinstance(game, MultistageGame)
        g = _augment(game, args.levels, dynamic)
        if dynamic:
            ch = run_dch(g, f)
            dk = run_delta_kappa_dynamic(g, f, belief_lag=args.belief_lag, presolve=presolve)
        else:
            ch = run_ch(g, f)
            dk = run_delta_kappa_static(g, f, presolve=presolve)
        verdict = compare(dk, ch)
        doc["one_by_one"] = _solve_json(ch, args.trace)
        doc["simultaneous"] = _solve_json(dk, args.trace)
        doc["comparison"] = {
            "equal": verdict.equal,
            "subset_holds": True,
            "tie_detected": verdict.tie_detected,
            "divergences": [
                {"player": d.player, "level": d.level, "one_by_one": list(d.ch), "simultaneous": list(d.dk)}
                for d in verdict.divergences
            ],
        }
        lines += _table(ch.procedure, ch) + _table(dk.procedure, dk)
        if verdict.equal:
            lines.append("procedures agree")
        for d in verdict.divergences:
            lines.append(
                f"divergence at player {d.player} level {d.level}: "
                f"{{{', '.join(d.ch)}}} vs {{{', '.join(d.dk)}}} (subset holds)"
            )
    elif cmd == "perturb":
        if not isinstance(game, StaticGame):
            raise ValueError("perturb works on static games")
        nudged = perturb_to_generic(game, args.eps, f, args.levels)
        change = sum(
            abs(nudged.payoff(p, a, b) - game.payoff(p, a, b))
            for p in (1, 2)
            for a in game.actions[p - 1]
            for b in game.actions[2 - p]
        )
        before = run_ch(LevelAugmentedGame(game, args.levels), f)
        after = run_ch(LevelAugmentedGame(nudged, args.levels), f)
        doc["eps"] = str(args.eps)
        doc["total_change"] = str(change)
        doc["ties_before"] = len(before.ties)
        doc["ties_after"] = len(after.ties)
        doc["game"] = static_to_json(nudged)
        doc["result"] = _solve_json(after, args.trace)
        lines.append(f"ties before {len(before.ties)}, after {len(after.ties)}; total payoff change {change}")
        lines += _table("cognitive hierarchy after perturbation", after)
    elif cmd == "bayes":
        g = _augment(game, args.levels, False)
        report = run_ch(g, f)
        rule = decision_rule_from_solution(report)
        el = build_elaboration(g, f, args.eps)
        check = verify_bayesian_equilibrium(el, rule, g)
        doc["eps"] = str(args.eps)
        doc["passed"] = check.passed
        doc["violations"] = [list(v) for v in check.violations]
        doc["result"] = _solve_json(report, args.trace)
        lines.append("Bayesian equilibrium: " + ("PASS" if check.passed else "FAIL"))
        for p, t, a in check.violations:
            lines.append(f"  player {p} type {t} mixes over non-best action {a}")
        if args.state is not None:
            outcome = state_outcome(el, rule, args.state)
            doc["state"] = {
                "state": list(args.state),
                "players": {
                    str(p): {"level": lvl, "mix": {a: str(q) for a, q in mix.items()}}
                    for p, (lvl, mix) in outcome.items()
                },
            }
            chosen = ", ".join(
                f"player {p} (level {lvl}) plays {{{', '.join(a for a, q in mix.items() if q)}}}"
                for p, (lvl, mix) in outcome.items()
            )
            lines.append(f"state {args.state[0]},{args.state[1]}: {chosen}")
        lines += _table("cognitive hierarchy", report)
    return doc, lines


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        doc, lines = run_command(args)
    except ConsistencyError as exc:
        print(f"hierarch: consistency violation: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (GameFormatError, GameError, ValueError, TypeError, OSError) as exc:
        print(f"hierarch: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.json == "-":
        sys.stdout.write(text)
    else:
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(text)
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
