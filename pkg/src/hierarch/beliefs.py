"""Level distributions and the beliefs a level-k type may hold.

A level-k type's belief is a distribution over (opponent level, opponent
option) pairs. Admissible beliefs put mass ``f^k(t)`` on each opponent level
``t < k``, are uniform over all opponent options conditional on level 0, and
leave the conditional on each level ``1 <= t < k`` free inside an allowed set.
Such beliefs form a product of simplices, parametrised here by the
conditional probabilities ``q[t, b]`` of the free levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .lp import LinearSystem, lp_feasible

__all__ = [
    "LevelWeights",
    "poisson_weights",
    "truncated_weights",
    "PointBelief",
    "ExpectationRow",
    "BeliefPolytope",
    "build_static_belief_polytope",
    "ch_point_belief",
]


@dataclass(frozen=True)
class LevelWeights:
    """Unnormalised positive weights ``w(0..L)`` of a level distribution."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        if len(ws) < 2:
            raise ValueError("need weights for at least levels 0 and 1")
        if any(w <= 0 for w in ws):
            raise ValueError("every level must carry positive weight")
        object.__setattr__(self, "weights", ws)

    @property
    def max_level(self) -> int:
        return len(self.weights) - 1

    def normalized(self) -> tuple[Fraction, ...]:
        """The distribution over ``0..L`` (renormalised truncation)."""
        total = sum(self.weights)
        return tuple(w / total for w in self.weights)

    def truncated(self, k: int) -> tuple[Fraction, ...]:
        return truncated_weights(self, k)

    def __len__(self):
        return len(self.weights)


def poisson_weights(tau, max_level: int) -> LevelWeights:
    """Poisson(tau) weights ``tau**t / t!`` for ``t = 0..max_level``.

    The factor ``exp(-tau)`` is dropped; every use of the weights is a ratio.
    """
    tau = Fraction(tau)
    if tau <= 0:
        raise ValueError("tau must be positive")
    return LevelWeights(tuple(tau**t / math.factorial(t) for t in range(max_level + 1)))


def truncated_weights(f: LevelWeights, k: int) -> tuple[Fraction, ...]:
    """``f^k(t) = f(t) / sum_{l<k} f(l)`` for ``t = 0..k-1``."""
    if k < 1:
        raise ValueError("level 0 has no belief restriction (k must be >= 1)")
    if k > f.max_level:
        raise ValueError(f"level {k} exceeds the maximum level {f.max_level}")
    head = f.weights[:k]
    total = sum(head)
    return tuple(w / total for w in head)


@dataclass(frozen=True)
class PointBelief:
    """Probabilities on ``(opponent level, opponent option label)`` pairs."""

    probs: Mapping[tuple[int, str], Fraction]

    def __post_init__(self):
        probs = {key: Fraction(p) for key, p in self.probs.items() if p}
        if any(p < 0 for p in probs.values()):
            raise ValueError("negative probability in belief")
        if sum(probs.values()) != 1:
            raise ValueError("belief does not sum to one")
        object.__setattr__(self, "probs", dict(sorted(probs.items())))

    def __hash__(self):
        return hash(tuple(self.probs.items()))

    def __eq__(self, other):
        if not isinstance(other, PointBelief):
            return NotImplemented
        return self.probs == other.probs

    def support(self) -> set[tuple[int, str]]:
        return set(self.probs)

    def type_mass(self, t: int) -> Fraction:
        return sum((p for (lvl, _), p in self.probs.items() if lvl == t), Fraction(0))

    def levels(self) -> list[int]:
        return sorted({lvl for lvl, _ in self.probs})

    def conditional(self, t: int) -> dict[str, Fraction]:
        mass = self.type_mass(t)
        if mass == 0:
            raise ValueError(f"level {t} has zero probability")
        return {b: p / mass for (lvl, b), p in self.probs.items() if lvl == t}

    def option_marginal(self) -> dict[str, Fraction]:
        out: dict[str, Fraction] = {}
        for (_, b), p in self.probs.items():
            out[b] = out.get(b, Fraction(0)) + p
        return out

    def expectation(self, values: Mapping[str, Fraction]) -> Fraction:
        """Expected value of a function of the opponent's option."""
        return sum((p * values[b] for (_, b), p in self.probs.items()), Fraction(0))

    def to_json(self) -> list:
        return [[t, b, str(p)] for (t, b), p in self.probs.items()]


@dataclass(frozen=True)
class ExpectationRow:
    """The constraint ``E_mu[values(b) * 1{b in within}] >= 0``.

    ``values`` is indexed by opponent option position; ``within=None`` means
    every option.
    """

    values: tuple[Fraction, ...]
    within: frozenset[int] | None = None

    def weight(self, b: int) -> Fraction:
        if self.within is not None and b not in self.within:
            return Fraction(0)
        return self.values[b]

    def dot(self, vector: Sequence[Fraction]) -> Fraction:
        """``sum_b vector[b] * weight(b)``."""
        if self.within is None:
            return sum((v * x for v, x in zip(vector, self.values) if v and x), Fraction(0))
        return sum((vector[b] * self.values[b] for b in self.within if self.values[b]), Fraction(0))


@dataclass(frozen=True)
class BeliefPolytope:
    """Admissible beliefs of a level-``level`` type.

    ``allowed[t]`` lists positions (into ``options``) the opponent may use
    under level ``t``; ``allowed[0]`` is always every option.
    """

    level: int
    options: tuple[str, ...]
    masses: tuple[Fraction, ...]
    allowed: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level-0 types have no belief restriction")
        if len(self.masses) != self.level or len(self.allowed) != self.level:
            raise ValueError("need one mass and one allowed set per opponent level below k")
        if sum(self.masses) != 1 or any(m <= 0 for m in self.masses):
            raise ValueError("type masses must be positive and sum to one")
        if tuple(self.allowed[0]) != tuple(range(len(self.options))):
            raise ValueError("level-0 opponents must be allowed every option")
        for t, group in enumerate(self.allowed):
            if not group:
                raise ValueError(f"empty allowed set for opponent level {t}")

    # -- variables ---------------------------------------------------------

    @property
    def variables(self) -> tuple[tuple[int, int], ...]:
        return tuple((t, b) for t in range(1, self.level) for b in self.allowed[t])

    @property
    def n_free(self) -> int:
        """Dimension of the polytope."""
        return sum(len(self.allowed[t]) - 1 for t in range(1, self.level))

    @property
    def is_singleton(self) -> bool:
        return self.n_free == 0

    def point(self, q: Sequence[Fraction]) -> PointBelief:
        n_all = len(self.options)
        probs: dict[tuple[int, str], Fraction] = {}
        for b in range(n_all):
            probs[(0, self.options[b])] = self.masses[0] / n_all
        for (t, b), value in zip(self.variables, q):
            if value:
                probs[(t, self.options[b])] = self.masses[t] * value
        return PointBelief(probs)

    def center(self) -> PointBelief:
        """The member that is uniform over each allowed set."""
        return self.point([Fraction(1, len(self.allowed[t])) for t, _ in self.variables])

    def contains(self, belief: PointBelief) -> bool:
        labels = {b: n for n, b in enumerate(self.options)}
        for (t, b) in belief.probs:
            if t >= self.level or b not in labels:
                return False
            if labels[b] not in self.allowed[t]:
                return False
        for t in range(self.level):
            if belief.type_mass(t) != self.masses[t]:
                return False
        uniform = Fraction(1, len(self.options))
        cond0 = belief.conditional(0)
        return len(cond0) == len(self.options) and all(p == uniform for p in cond0.values())

    # -- linear encodings --------------------------------------------------

    def system(self, rows: Iterable[ExpectationRow] = ()) -> LinearSystem:
        names = [f"q[{t},{self.options[b]}]" for t, b in self.variables]
        system = LinearSystem(names)
        variables = self.variables
        for t in range(1, self.level):
            system.add([1 if tv == t else 0 for tv, _ in variables], "=", 1)
        for row in rows:
            coeffs, const = self.linear_form(row)
            system.add(coeffs, ">=", -const)
        return system

    def linear_form(self, row: ExpectationRow) -> tuple[list[Fraction], Fraction]:
        """``(c, d)`` with ``E_mu[row] = c . q + d``."""
        n_all = len(self.options)
        const = self.masses[0] * sum((row.weight(b) for b in range(n_all)), Fraction(0)) / n_all
        coeffs = [self.masses[t] * row.weight(b) for t, b in self.variables]
        return coeffs, const

    def upper_bound(self, row: ExpectationRow) -> Fraction:
        """Maximum of ``E_mu[row]`` over the polytope (it separates by level)."""
        n_all = len(self.options)
        total = self.masses[0] * sum((row.weight(b) for b in range(n_all)), Fraction(0)) / n_all
        for t in range(1, self.level):
            total += self.masses[t] * max(row.weight(b) for b in self.allowed[t])
        return total

    def find_member(self, rows: Sequence[ExpectationRow], presolve: bool = True) -> PointBelief | None:
        """A member satisfying every row, or ``None`` when there is none."""
        rows = list(rows)
        if presolve:
            marginal = self._center_marginal
            center_ok = True
            for row in rows:
                if row.dot(marginal) < 0:
                    center_ok = False
                    # only rows violated at the center can be violated everywhere
                    if self.upper_bound(row) < 0:
                        return None
            if center_ok:
                return self.center()
        result = lp_feasible(self.system(rows))
        if not result.feasible:
            return None
        return self.point(result.witness)

    @cached_property
    def _center_marginal(self) -> tuple[Fraction, ...]:
        n_all = len(self.options)
        out = [self.masses[0] / n_all] * n_all
        for t in range(1, self.level):
            share = self.masses[t] / len(self.allowed[t])
            for b in self.allowed[t]:
                out[b] += share
        return tuple(out)

    def _value(self, belief: PointBelief, row: ExpectationRow) -> Fraction:
        pos = {b: n for n, b in enumerate(self.options)}
        return sum((p * row.weight(pos[b]) for (_, b), p in belief.probs.items()), Fraction(0))

    def satisfies(self, belief: PointBelief, rows: Iterable[ExpectationRow]) -> bool:
        return self.contains(belief) and all(self._value(belief, row) >= 0 for row in rows)


def _positions(options: Sequence[str], labels: Iterable[str]) -> tuple[int, ...]:
    pos = {b: n for n, b in enumerate(options)}
    try:
        return tuple(sorted({pos[b] for b in labels}))
    except KeyError as exc:
        raise ValueError(f"unknown opponent option {exc.args[0]!r}") from None


def build_static_belief_polytope(k: int, allowed: Sequence[Sequence[str]], f: LevelWeights) -> BeliefPolytope:
    """Admissible beliefs of a level-``k`` type given per-level allowed sets.

    ``allowed[0]`` must be the opponent's full option list, in canonical
    order; ``allowed[t]`` for ``1 <= t < k`` restricts the level-``t``
    conditional.
    """
    if k < 1:
        raise ValueError("level-0 types have no belief restriction")
    if len(allowed) < k:
        raise ValueError(f"need allowed sets for opponent levels 0..{k - 1}")
    options = tuple(allowed[0])
    groups = [tuple(range(len(options)))]
    for t in range(1, k):
        if not allowed[t]:
            raise ValueError(
                f"no surviving option for opponent level {t}: best responses always exist, so this is a contradiction"
            )
        groups.append(_positions(options, allowed[t]))
    return BeliefPolytope(k, options, truncated_weights(f, k), tuple(groups))


def ch_point_belief(k: int, survivors: Sequence[Sequence[str]], f: LevelWeights) -> PointBelief:
    """Belief with masses ``f^k`` and uniform conditionals over each level's survivors."""
    masses = truncated_weights(f, k)
    probs: dict[tuple[int, str], Fraction] = {}
    for t in range(k):
        group = tuple(dict.fromkeys(survivors[t]))
        if not group:
            raise ValueError(f"no surviving option for opponent level {t}")
        for b in group:
            probs[(t, b)] = masses[t] / len(group)
    return PointBelief(probs)
