"""Elimination procedures on static games with level types.

Two procedures are implemented and kept separate:

* :func:`run_ch`, the one-by-one cognitive-hierarchy schedule. At step
  ``n+1`` only level ``n+1`` is resolved, best-responding to the belief that
  mixes lower levels by ``f^k`` and is uniform over their survivors.
* :func:`run_delta_kappa_static`, where every level reasons at every step
  and keeps an action whenever *some* admissible belief concentrated on the
  previous step's survivors makes it optimal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .beliefs import (
    BeliefPolytope,
    ExpectationRow,
    LevelWeights,
    PointBelief,
    build_static_belief_polytope,
    ch_point_belief,
)
from .game import PLAYERS, LevelAugmentedGame, StaticGame, augment_with_levels, opponent
from .solution import ConsistencyError, SolveReport, Tie, TypeActionSet

__all__ = [
    "Support",
    "best_responses",
    "supports_action",
    "run_delta_kappa_static",
    "run_ch",
    "detect_ties",
    "perturb_to_generic",
    "Divergence",
    "Comparison",
    "compare",
]


@dataclass(frozen=True)
class Support:
    """Outcome of a "does some admissible belief support this option" test."""

    feasible: bool
    witness: PointBelief | None = None

    def __bool__(self):
        return self.feasible


def _check_weights(game: LevelAugmentedGame, f: LevelWeights) -> None:
    if f.max_level < game.max_level:
        raise ValueError(
            f"level weights cover levels 0..{f.max_level}, game needs 0..{game.max_level}"
        )


def _expected_payoffs(game: LevelAugmentedGame, player: int, belief: PointBelief) -> list[Fraction]:
    matrix = game.matrix(player)
    pos = {b: n for n, b in enumerate(game.options(opponent(player)))}
    marginal = belief.option_marginal()
    return [
        sum((p * row[pos[b]] for b, p in marginal.items()), Fraction(0))
        for row in matrix
    ]


def best_responses(k: int, belief: PointBelief, game: LevelAugmentedGame, player: int) -> tuple[str, ...]:
    """Actions maximising a level-``k`` type's expected payoff under ``belief``."""
    own = game.options(player)
    if k == 0:
        return tuple(own)
    values = _expected_payoffs(game, player, belief)
    best = max(values)
    return tuple(a for a, v in zip(own, values) if v == best)


def _comparison_rows(game: LevelAugmentedGame, player: int, action: str) -> list[ExpectationRow]:
    own = game.options(player)
    matrix = game.matrix(player)
    mine = matrix[own.index(action)]
    return [
        ExpectationRow(tuple(x - y for x, y in zip(mine, other)))
        for alt, other in zip(own, matrix)
        if alt != action
    ]


def supports_action(
    k: int,
    action: str,
    polytope: BeliefPolytope,
    game: LevelAugmentedGame,
    player: int,
    presolve: bool = True,
) -> Support:
    """Is ``action`` a best response of the level-``k`` type to some member of ``polytope``?

    With ``presolve`` the question is first settled, when possible, by the
    polytope's center or by an alternative that beats ``action`` on the whole
    polytope; otherwise an exact LP decides.
    """
    if k < 1:
        raise ValueError("level-0 types are unrestricted; every action is optimal")
    if polytope.level != k:
        raise ValueError("polytope belongs to a different level")
    if presolve:
        values = _center_values(polytope, game, player)
        own = game.options(player)
        best = max(values)
        mine = own.index(action)
        if values[mine] == best:
            return Support(True, polytope.center())
        matrix = game.matrix(player)
        rival = matrix[values.index(best)]
        row = ExpectationRow(tuple(x - y for x, y in zip(matrix[mine], rival)))
        if polytope.upper_bound(row) < 0:
            return Support(False, None)
    rows = _comparison_rows(game, player, action)
    witness = polytope.find_member(rows, presolve=presolve)
    return Support(witness is not None, witness)


def _center_values(polytope: BeliefPolytope, game: LevelAugmentedGame, player: int) -> list[Fraction]:
    # memoised on the polytope: every action of a type is tested against the same one
    cache = polytope.__dict__.setdefault("_center_cache", {})
    hit = cache.get(player)
    if hit is None or hit[0] is not game:
        marginal = polytope._center_marginal
        values = [sum((m * x for m, x in zip(marginal, row) if m), Fraction(0)) for row in game.matrix(player)]
        hit = cache[player] = (game, values)
    return hit[1]


def _full_sets(game: LevelAugmentedGame) -> TypeActionSet:
    return TypeActionSet({(p, k): tuple(game.options(p)) for p in PLAYERS for k in game.levels})


def run_delta_kappa_static(
    game: LevelAugmentedGame, f: LevelWeights, presolve: bool = True
) -> SolveReport:
    """Iterate the simultaneous elimination schedule to its fixed point."""
    if not game.is_static:
        raise TypeError("run_delta_kappa_static needs a static game; use the dynamic solver")
    _check_weights(game, f)
    current = _full_sets(game)
    report = SolveReport("dkr", game, f, [current])
    # levels settle by step L, so step L+1 must already repeat
    for _ in range(game.max_level + 2):
        new_sets = {}
        for p in PLAYERS:
            other = opponent(p)
            new_sets[(p, 0)] = current[(p, 0)]
            for k in range(1, game.max_level + 1):
                allowed = [current[(other, t)] for t in range(k)]
                polytope = build_static_belief_polytope(k, allowed, f)
                keep = []
                for a in current[(p, k)]:
                    verdict = supports_action(k, a, polytope, game, p, presolve=presolve)
                    if verdict:
                        keep.append(a)
                        report.witnesses[(p, k, a)] = verdict.witness
                if not keep:
                    raise ConsistencyError(f"no action survives for player {p} at level {k}")
                new_sets[(p, k)] = tuple(keep)
        new = TypeActionSet(new_sets)
        report.trace.append(new)
        if new == current:
            break
        current = new
    else:
        raise ConsistencyError("elimination did not stabilise within max_level + 1 steps")
    _drop_stale_witnesses(report)
    return report


def _drop_stale_witnesses(report: SolveReport) -> None:
    final = report.final
    report.witnesses = {
        key: w for key, w in sorted(report.witnesses.items()) if key[2] in final[(key[0], key[1])]
    }


def run_ch(game: LevelAugmentedGame, f: LevelWeights) -> SolveReport:
    """One-by-one cognitive-hierarchy procedure."""
    if not game.is_static:
        raise TypeError("run_ch needs a static game; use run_dch for multistage games")
    _check_weights(game, f)
    current = _full_sets(game)
    report = SolveReport("ch", game, f, [current])
    for n in range(game.max_level):
        k = n + 1
        new_sets = dict(current.sets)
        for p in PLAYERS:
            other = opponent(p)
            belief = ch_point_belief(k, [current[(other, t)] for t in range(k)], f)
            chosen = best_responses(k, belief, game, p)
            if len(chosen) > 1:
                report.ties.append(Tie(k, p, k, chosen))
            new_sets[(p, k)] = chosen
            for a in chosen:
                report.witnesses[(p, k, a)] = belief
        current = TypeActionSet(new_sets)
        report.trace.append(current)
    return report


def detect_ties(report: SolveReport) -> list[Tie]:
    """Steps of a one-by-one run where the resolved level had several best responses."""
    if report.procedure not in ("ch", "dch"):
        raise ValueError("ties are recorded by the one-by-one procedures (ch, dch) only")
    return list(report.ties)


def perturb_to_generic(
    game: StaticGame, eps, f: LevelWeights, max_level: int
) -> StaticGame:
    """Nudge payoffs until the cognitive-hierarchy run has no ties.

    A tie for player ``i`` at step ``k`` is broken by raising ``i``'s payoff
    for the first tied action against the opponent's first action by
    ``eps / 2**(k+1)``; level 0 gives that profile positive weight, so the
    nudged action becomes the unique best response. If the nudge would alter
    an earlier step it is halved until it does not. The total change is below
    ``eps``.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    current = game
    for k in range(1, max_level + 1):
        for p in PLAYERS:
            before = run_ch(augment_with_levels(current, max_level), f)
            tie = _tie_at(before, k, p)
            if tie is None:
                continue
            action = tie.options[0]
            target = current.actions[opponent(p) - 1][0]
            bonus = eps / 2 ** (k + 1)
            while True:
                candidate = current.with_payoff(
                    p, action, target, current.payoff(p, action, target) + bonus
                )
                after = run_ch(augment_with_levels(candidate, max_level), f)
                if after.trace[:k] == before.trace[:k] and _tie_at(after, k, p) is None:
                    current = candidate
                    break
                bonus /= 2
    return current


def _tie_at(report: SolveReport, step: int, player: int) -> Tie | None:
    for tie in report.ties:
        if tie.step == step and tie.player == player:
            return tie
    return None


@dataclass(frozen=True)
class Divergence:
    player: int
    level: int
    ch: tuple[str, ...]
    dk: tuple[str, ...]


@dataclass
class Comparison:
    equal: bool
    divergences: list[Divergence] = field(default_factory=list)
    ties: list[Tie] = field(default_factory=list)

    @property
    def tie_detected(self) -> bool:
        return bool(self.ties)


def compare(dk: SolveReport, ch: SolveReport) -> Comparison:
    """Check the one-by-one solution against the simultaneous one.

    Every one-by-one survivor must also survive the simultaneous schedule;
    a violation raises :class:`ConsistencyError`. Remaining differences are
    reported as divergences.
    """
    if dk.game.max_level != ch.game.max_level:
        raise ValueError("reports use different maximum levels")
    if dk.weights != ch.weights:
        raise ValueError("reports use different level weights")
    divergences = []
    for p in PLAYERS:
        for k in ch.game.levels:
            at_k_ch, at_k_dk = ch.at_step(k)[(p, k)], dk.at_step(k)[(p, k)]
            fin_ch, fin_dk = ch.final[(p, k)], dk.final[(p, k)]
            if not set(at_k_ch) <= set(at_k_dk) or not set(fin_ch) <= set(fin_dk):
                raise ConsistencyError(
                    f"one-by-one survivors {fin_ch} of player {p} level {k} "
                    f"are not contained in {fin_dk}"
                )
            if fin_ch != fin_dk:
                divergences.append(Divergence(p, k, fin_ch, fin_dk))
    return Comparison(not divergences, divergences, list(ch.ties))

