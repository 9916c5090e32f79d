"""Bayesian games whose mixed-action equilibria reproduce the CH solution.

States are pairs ``(m, n)``: player 1 has level ``m`` and player 2 level
``n``. Each player has a subjective prior; player 1's prior only puts mass on
states where player 2's level is lower than player 1's (plus the all-level-0
state), weighted so that a level-``m`` type's conditional over opponent levels
is ``f^m``. Player 2's prior is the mirror image.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

from .beliefs import LevelWeights, truncated_weights
from .game import PLAYERS, LevelAugmentedGame, opponent
from .solution import SolveReport, TypeActionSet

__all__ = [
    "BayesianElaboration",
    "DecisionRule",
    "EquilibriumCheck",
    "build_elaboration",
    "conditional_prior",
    "decision_rule_from_solution",
    "verify_bayesian_equilibrium",
    "state_outcome",
]

State = tuple[int, int]


@dataclass(frozen=True)
class BayesianElaboration:
    max_level: int
    epsilon: Fraction
    weights: LevelWeights
    priors: Mapping[int, Mapping[State, Fraction]]

    @property
    def states(self) -> list[State]:
        return [(m, n) for m in range(self.max_level + 1) for n in range(self.max_level + 1)]

    @staticmethod
    def type_of(player: int, state: State) -> int:
        """Level index of ``player``'s Harsanyi type at ``state``."""
        return state[player - 1]

    @staticmethod
    def payoff_type(player: int, t: int) -> tuple[int, int]:
        """The level type ``(player, level)`` attached to Harsanyi type ``t``."""
        return (player, t)

    def marginal(self, player: int, t: int) -> Fraction:
        prior = self.priors[player]
        return sum((prior[s] for s in self.states if s[player - 1] == t), Fraction(0))


def _raw_weight(own: int, other: int, eps: Fraction, dist: tuple[Fraction, ...], f: LevelWeights) -> Fraction:
    if own == 0 and other == 0:
        return eps
    if own == 0 or other >= own:
        # own == 0 < other has no defined weight; it never enters an incentive check
        return Fraction(0)
    return (1 - eps) * dist[own] * truncated_weights(f, own)[other]


def build_elaboration(game: LevelAugmentedGame, f: LevelWeights, eps) -> BayesianElaboration:
    eps = Fraction(eps)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    if f.max_level < game.max_level:
        raise ValueError("level weights do not cover every level of the game")
    f = LevelWeights(f.weights[: game.max_level + 1])
    dist = f.normalized()
    L = game.max_level
    priors = {}
    for p in PLAYERS:
        raw = {}
        for m in range(L + 1):
            for n in range(L + 1):
                own, other = (m, n) if p == 1 else (n, m)
                raw[(m, n)] = _raw_weight(own, other, eps, dist, f)
        total = sum(raw.values())
        priors[p] = {s: w / total for s, w in raw.items()}
    return BayesianElaboration(L, eps, f, priors)


def conditional_prior(el: BayesianElaboration, player: int, t: int) -> dict[State, Fraction]:
    """``p_i(. | t_i)`` restricted to the states where it is positive."""
    mass = el.marginal(player, t)
    if mass == 0:
        raise ValueError(f"type {t} of player {player} has zero prior probability")
    prior = el.priors[player]
    return {
        s: prior[s] / mass for s in el.states if s[player - 1] == t and prior[s]
    }


@dataclass(frozen=True)
class DecisionRule:
    """Mixed action for every ``(player, level)``."""

    mixes: Mapping[tuple[int, int], Mapping[str, Fraction]]

    def __getitem__(self, key: tuple[int, int]) -> Mapping[str, Fraction]:
        return self.mixes[key]

    def support(self, player: int, level: int) -> tuple[str, ...]:
        return tuple(a for a, p in self.mixes[(player, level)].items() if p > 0)


def decision_rule_from_solution(sol: Union[TypeActionSet, SolveReport]) -> DecisionRule:
    """Uniform mixing over each type's surviving actions."""
    sets = sol.final if isinstance(sol, SolveReport) else sol
    mixes = {}
    for key in sets:
        group = sets[key]
        mixes[key] = {a: Fraction(1, len(group)) for a in group}
    return DecisionRule(mixes)


@dataclass
class EquilibriumCheck:
    passed: bool
    violations: list[tuple[int, int, str]] = field(default_factory=list)

    def __bool__(self):
        return self.passed


def _type_values(el, rule, game, player, t) -> dict[str, Fraction]:
    own = game.options(player)
    other_opts = game.options(opponent(player))
    pos = {b: n for n, b in enumerate(other_opts)}
    matrix = game.matrix(player)
    values = {a: Fraction(0) for a in own}
    for state, p in conditional_prior(el, player, t).items():
        other_level = el.type_of(opponent(player), state)
        for b, q in rule[(opponent(player), other_level)].items():
            if not q:
                continue
            for i, a in enumerate(own):
                values[a] += p * q * matrix[i][pos[b]]
    return values


def verify_bayesian_equilibrium(
    el: BayesianElaboration, rule: DecisionRule, game: LevelAugmentedGame
) -> EquilibriumCheck:
    """Check that every positive-prior type only mixes over best responses."""
    violations = []
    for p in PLAYERS:
        for t in range(el.max_level + 1):
            if el.marginal(p, t) == 0 or t == 0:
                # level-0 payoffs are constant, so any mix is optimal
                continue
            values = _type_values(el, rule, game, p, t)
            best = max(values.values())
            for a in rule.support(p, t):
                if values[a] < best:
                    violations.append((p, t, a))
    return EquilibriumCheck(not violations, violations)


def state_outcome(el: BayesianElaboration, rule: DecisionRule, state: State) -> dict[int, tuple[int, Mapping[str, Fraction]]]:
    """Level type and mixed action of each player at ``state``."""
    if state not in el.priors[1]:
        raise ValueError(f"state {state} outside the elaboration")
    return {p: (el.type_of(p, state), dict(rule[(p, el.type_of(p, state))])) for p in PLAYERS}
