"""Result containers shared by the static and dynamic solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .beliefs import LevelWeights, PointBelief
from .game import PLAYERS, LevelAugmentedGame

__all__ = [
    "ConsistencyError",
    "TypeActionSet",
    "TypeStrategySet",
    "Tie",
    "SolveReport",
]


class ConsistencyError(RuntimeError):
    """A result that the theory rules out; indicates a solver bug."""


@dataclass(frozen=True)
class TypeActionSet:
    """Surviving options per ``(player, level)``, in canonical option order."""

    sets: Mapping[tuple[int, int], tuple[str, ...]]

    def __getitem__(self, key: tuple[int, int]) -> tuple[str, ...]:
        return self.sets[key]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self.sets))

    def __eq__(self, other):
        if not isinstance(other, TypeActionSet):
            return NotImplemented
        return dict(self.sets) == dict(other.sets)

    def __hash__(self):
        return hash(tuple(sorted(self.sets.items())))

    @property
    def max_level(self) -> int:
        return max(k for _, k in self.sets)

    def level_sets(self, player: int) -> list[tuple[str, ...]]:
        return [self.sets[(player, k)] for k in range(self.max_level + 1)]

    def to_json(self) -> dict:
        return {
            str(p): {str(k): list(self.sets[(p, k)]) for k in range(self.max_level + 1)}
            for p in PLAYERS
        }


#: the dynamic solvers return the same container, holding strategy labels
TypeStrategySet = TypeActionSet


@dataclass(frozen=True)
class Tie:
    """Several options were optimal for the level resolved at ``step``."""

    step: int
    player: int
    level: int
    options: tuple[str, ...]


@dataclass
class SolveReport:
    procedure: str
    game: LevelAugmentedGame
    weights: LevelWeights
    trace: list[TypeActionSet]
    ties: list[Tie] = field(default_factory=list)
    witnesses: dict[tuple[int, int, str], PointBelief] = field(default_factory=dict)
    belief_lag: bool = False

    @property
    def final(self) -> TypeActionSet:
        return self.trace[-1]

    @property
    def steps(self) -> int:
        return len(self.trace) - 1

    def at_step(self, n: int) -> TypeActionSet:
        """Snapshot after step ``n``; past the last recorded step the run is at its fixed point."""
        return self.trace[min(n, len(self.trace) - 1)]

    def survivors(self, player: int, level: int) -> tuple[str, ...]:
        return self.final[(player, level)]
