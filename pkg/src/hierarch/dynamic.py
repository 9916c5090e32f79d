"""Level-type procedures on perfect-information multistage games.

Beliefs are conditional probability systems. Because a level-0 opponent is
always possible and plays every strategy with equal probability, every
history has positive prior probability, so a conditional probability system
is pinned down by its initial belief and Bayes' rule. Only initial beliefs
are stored; conditionals are derived with :func:`bayes_update`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .beliefs import (
    ExpectationRow,
    LevelWeights,
    PointBelief,
    build_static_belief_polytope,
    ch_point_belief,
)
from .game import PLAYERS, History, HistoryIndex, LevelAugmentedGame, Strategy, opponent
from .solution import ConsistencyError, SolveReport, Tie, TypeStrategySet
from .static import Support

__all__ = [
    "history_index",
    "bayes_update",
    "ConditionalBeliefView",
    "conditional_view",
    "sequentially_rational",
    "supports_strategy",
    "run_dch",
    "run_delta_kappa_dynamic",
    "lemma2_beliefs",
]

StrategyLike = Union[Strategy, str]


def history_index(game: LevelAugmentedGame) -> HistoryIndex:
    if game.is_static:
        raise TypeError("expected a level-augmented multistage game")
    return game._form().index


def _check_weights(game: LevelAugmentedGame, f: LevelWeights) -> None:
    if f.max_level < game.max_level:
        raise ValueError(
            f"level weights cover levels 0..{f.max_level}, game needs 0..{game.max_level}"
        )


def _label(s: StrategyLike) -> str:
    return s.label if isinstance(s, Strategy) else s


def _consistent_labels(index: HistoryIndex, player: int, h: History) -> set[str]:
    return {s.label for s in index.strategies_at(player, h)}


def bayes_update(initial: PointBelief, h: History, game: LevelAugmentedGame, player: int) -> PointBelief:
    """Condition ``player``'s initial belief on reaching ``h``."""
    index = history_index(game)
    reachable = _consistent_labels(index, opponent(player), h)
    mass = sum((p for (_, s), p in initial.probs.items() if s in reachable), Fraction(0))
    if mass == 0:
        raise ValueError(
            "history has zero prior probability; the level-0 part of the belief must be uniform over all strategies"
        )
    return PointBelief(
        {key: p / mass for key, p in initial.probs.items() if key[1] in reachable}
    )


@dataclass(frozen=True)
class ConditionalBeliefView:
    """An initial belief together with its conditionals at every non-terminal history."""

    player: int
    initial: PointBelief
    conditionals: Mapping[History, PointBelief]

    def __getitem__(self, h: History) -> PointBelief:
        return self.conditionals[h]

    def chain_rule_violations(self, index: HistoryIndex) -> list[tuple[History, History]]:
        """Pairs ``h' < h''`` where ``mu(.|h') = mu(.|h'') * mu(S(h'')|h')`` fails."""
        other = opponent(self.player)
        bad = []
        for h1 in index.nonterminal:
            for h2 in index.nonterminal:
                if len(h1) >= len(h2) or h2[: len(h1)] != h1:
                    continue
                reach = _consistent_labels(index, other, h2)
                early, late = self.conditionals[h1], self.conditionals[h2]
                scale = sum((p for (_, s), p in early.probs.items() if s in reach), Fraction(0))
                keys = set(early.probs) | set(late.probs)
                ok = all(
                    early.probs.get(key, 0) == late.probs.get(key, 0) * scale
                    for key in keys
                    if key[1] in reach
                ) and all(key[1] in reach for key in late.probs)
                if not ok:
                    bad.append((h1, h2))
        return bad


def conditional_view(initial: PointBelief, game: LevelAugmentedGame, player: int) -> ConditionalBeliefView:
    index = history_index(game)
    return ConditionalBeliefView(
        player,
        initial,
        {h: bayes_update(initial, h, game, player) for h in index.nonterminal},
    )


def _strategy_values(game, player, belief: PointBelief, candidates: Sequence[Strategy]) -> dict[str, Fraction]:
    form = game._form()
    own_pos = {s: n for n, s in enumerate(form.labels[player - 1])}
    opp_pos = {s: n for n, s in enumerate(form.labels[opponent(player) - 1])}
    matrix = game.matrix(player)
    marginal = belief.option_marginal()
    return {
        s.label: sum(
            (p * matrix[own_pos[s.label]][opp_pos[b]] for b, p in marginal.items()),
            Fraction(0),
        )
        for s in candidates
    }


def _rational_strategies(game, player, k, view: ConditionalBeliefView) -> tuple[str, ...]:
    """Labels of strategies sequentially rational against ``view``."""
    index = history_index(game)
    labels = [s.label for s in index.strategies[player]]
    if k == 0:
        return tuple(labels)
    good = set(labels)
    for h in index.nonterminal:
        candidates = index.strategies_at(player, h)
        values = _strategy_values(game, player, view[h], candidates)
        best = max(values.values())
        good -= {s for s, v in values.items() if v < best}
    return tuple(s for s in labels if s in good)


def sequentially_rational(
    s: StrategyLike, k: int, initial: PointBelief, game: LevelAugmentedGame, player: int | None = None
) -> bool:
    """Is ``s`` optimal for a level-``k`` type at every history it allows?"""
    if player is None:
        if not isinstance(s, Strategy):
            raise ValueError("pass player when giving a strategy label")
        player = s.player
    if k == 0:
        return True
    index = history_index(game)
    label = _label(s)
    for h in index.nonterminal:
        candidates = index.strategies_at(player, h)
        if label not in {c.label for c in candidates}:
            continue
        values = _strategy_values(game, player, bayes_update(initial, h, game, player), candidates)
        if values[label] < max(values.values()):
            return False
    return True


def _sequential_rows(game, player, label) -> list[ExpectationRow]:
    # rows depend only on the game, so they are memoised across steps
    cache = game.__dict__.setdefault("_sequential_rows", {})
    if (player, label) in cache:
        return cache[(player, label)]
    index = history_index(game)
    form = game._form()
    own = form.labels[player - 1]
    other_labels = form.labels[opponent(player) - 1]
    opp_pos = {b: n for n, b in enumerate(other_labels)}
    matrix = game.matrix(player)
    mine = matrix[own.index(label)]
    diffs: dict[str, tuple[Fraction, ...]] = {}
    rows: dict[ExpectationRow, None] = {}
    for h in index.nonterminal:
        candidates = [s.label for s in index.strategies_at(player, h)]
        if label not in candidates:
            continue
        within = frozenset(opp_pos[s.label] for s in index.strategies_at(opponent(player), h))
        if len(within) == len(other_labels):
            within = None
        for alt in candidates:
            if alt == label:
                continue
            if alt not in diffs:
                diffs[alt] = tuple(x - y for x, y in zip(mine, matrix[own.index(alt)]))
            rows[ExpectationRow(diffs[alt], within)] = None
    cache[(player, label)] = list(rows)
    return cache[(player, label)]


def supports_strategy(
    k: int,
    s: StrategyLike,
    survivors: Sequence[Sequence[str]],
    f: LevelWeights,
    game: LevelAugmentedGame,
    player: int,
    presolve: bool = True,
) -> Support:
    """Is there an admissible initial belief, concentrated on ``survivors``, making ``s`` sequentially rational?

    ``survivors[t]`` lists the opponent strategies allowed under level ``t``
    for ``t < k``; level 0 is always uniform over every opponent strategy.
    Each conditional comparison is multiplied through by the (positive)
    probability of reaching its history, which makes it linear in the
    initial belief.
    """
    if k < 1:
        raise ValueError("level-0 types are unrestricted")
    other = opponent(player)
    options = game.options(other)
    allowed = [options] + [tuple(survivors[t]) for t in range(1, k)]
    polytope = build_static_belief_polytope(k, allowed, f)
    rows = _sequential_rows(game, player, _label(s))
    witness = polytope.find_member(rows, presolve=presolve)
    return Support(witness is not None, witness)


def _full_sets(game: LevelAugmentedGame) -> TypeStrategySet:
    return TypeStrategySet({(p, k): tuple(game.options(p)) for p in PLAYERS for k in game.levels})


def run_dch(game: LevelAugmentedGame, f: LevelWeights) -> SolveReport:
    """One-by-one dynamic cognitive-hierarchy procedure."""
    history_index(game)
    _check_weights(game, f)
    current = _full_sets(game)
    report = SolveReport("dch", game, f, [current])
    for n in range(game.max_level):
        k = n + 1
        new_sets = dict(current.sets)
        for p in PLAYERS:
            other = opponent(p)
            belief = ch_point_belief(k, [current[(other, t)] for t in range(k)], f)
            chosen = _rational_strategies(game, p, k, conditional_view(belief, game, p))
            if not chosen:
                raise ConsistencyError(f"no sequentially rational strategy for player {p} level {k}")
            if len(chosen) > 1:
                report.ties.append(Tie(k, p, k, chosen))
            new_sets[(p, k)] = chosen
            for s in chosen:
                report.witnesses[(p, k, s)] = belief
        current = TypeStrategySet(new_sets)
        report.trace.append(current)
    return report


def run_delta_kappa_dynamic(
    game: LevelAugmentedGame, f: LevelWeights, belief_lag: bool = False, presolve: bool = True
) -> SolveReport:
    """Simultaneous elimination with sequential rationality, to its fixed point.

    By default step ``n+1`` restricts beliefs to the step-``n`` survivors.
    ``belief_lag=True`` uses the step ``n-1`` survivors instead (step 0's at
    the first step).
    """
    history_index(game)
    _check_weights(game, f)
    current = _full_sets(game)
    report = SolveReport("ddkr", game, f, [current], belief_lag=belief_lag)
    limit = 2 * game.max_level + 3 if belief_lag else game.max_level + 2
    for n in range(limit):
        basis = report.trace[max(n - 1, 0)] if belief_lag else current
        new_sets = {}
        for p in PLAYERS:
            other = opponent(p)
            new_sets[(p, 0)] = current[(p, 0)]
            for k in range(1, game.max_level + 1):
                survivors = [basis[(other, t)] for t in range(k)]
                keep = []
                for s in current[(p, k)]:
                    verdict = supports_strategy(k, s, survivors, f, game, p, presolve=presolve)
                    if verdict:
                        keep.append(s)
                        report.witnesses[(p, k, s)] = verdict.witness
                if not keep:
                    raise ConsistencyError(f"no strategy survives for player {p} at level {k}")
                new_sets[(p, k)] = tuple(keep)
        new = TypeStrategySet(new_sets)
        report.trace.append(new)
        if new == current and (not belief_lag or _lag_settled(report)):
            break
        current = new
    else:
        raise ConsistencyError("dynamic elimination did not stabilise")
    final = report.final
    report.witnesses = {
        key: w for key, w in sorted(report.witnesses.items()) if key[2] in final[(key[0], key[1])]
    }
    return report


def _lag_settled(report: SolveReport) -> bool:
    # with lagged beliefs the next step depends on the last two snapshots
    return len(report.trace) >= 3 and report.trace[-1] == report.trace[-2] == report.trace[-3]


def lemma2_beliefs(
    step: int,
    h: History,
    survivors: Sequence[Sequence[str]],
    f: LevelWeights,
    k: int,
    game: LevelAugmentedGame,
    player: int,
) -> PointBelief:
    """Closed-form conditional belief at ``h`` of a level-``k`` type resolved after ``step``.

    Opponent level ``t <= min(step, k-1)`` keeps weight ``f(t)`` scaled by
    the share of its survivors consistent with ``h``; within a level, the
    consistent survivors are equally likely. Level 0's survivors are every
    strategy.
    """
    if k < 1:
        raise ValueError("level-0 types hold no restricted belief")
    index = history_index(game)
    reachable = _consistent_labels(index, opponent(player), h)
    top = min(step, k - 1)
    groups = {}
    for t in range(top + 1):
        pool = tuple(dict.fromkeys(survivors[t]))
        group = [s for s in pool if s in reachable]
        if group:
            groups[t] = (group, f.weights[t] * len(group) / len(pool))
    total = sum(w for _, w in groups.values())
    probs = {}
    for t, (group, w) in groups.items():
        for s in group:
            probs[(t, s)] = w / total / len(group)
    return PointBelief(probs)
