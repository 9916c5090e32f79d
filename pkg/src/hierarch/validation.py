"""Input checks shared by the estimators and the CLI."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Any, Sequence, Union

from .beliefs import LevelWeights, poisson_weights
from .game import PLAYERS, LevelAugmentedGame, MultistageGame, StaticGame

__all__ = [
    "check_rational",
    "check_level_weights",
    "check_game",
    "check_player",
    "check_level",
]


def check_rational(value: Any, name: str = "value") -> Fraction:
    """Exact conversion; floats are refused because they are rarely what was meant."""
    if isinstance(value, bool):
        raise TypeError(f"{name} must be rational, got a bool")
    if isinstance(value, (Rational, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"{name}: malformed rational {value!r}") from None
    raise TypeError(f"{name} must be an int, Fraction or 'p/q' string, got {type(value).__name__}")


def check_level_weights(
    tau: Any = None, weights: Sequence[Any] | LevelWeights | None = None, max_level: int | None = None
) -> LevelWeights:
    """Build level weights from exactly one of ``tau`` and ``weights``."""
    if (tau is None) == (weights is None):
        raise ValueError("give exactly one of tau (Poisson) or explicit weights")
    if weights is not None:
        f = weights if isinstance(weights, LevelWeights) else LevelWeights(
            tuple(check_rational(w, "weight") for w in weights)
        )
        if max_level is not None and f.max_level < max_level:
            raise ValueError(f"{len(f)} weights cannot cover levels 0..{max_level}")
        if max_level is not None:
            f = LevelWeights(f.weights[: max_level + 1])
        return f
    if max_level is None:
        raise ValueError("max_level is needed to build Poisson weights")
    return poisson_weights(check_rational(tau, "tau"), max_level)


def check_level(level: Any, max_level: int, allow_zero: bool = True) -> int:
    if isinstance(level, bool) or not isinstance(level, int):
        raise TypeError(f"level must be an int, got {level!r}")
    low = 0 if allow_zero else 1
    if not low <= level <= max_level:
        raise ValueError(f"level {level} outside {low}..{max_level}")
    return level


def check_player(player: Any) -> int:
    if player not in PLAYERS or isinstance(player, bool):
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    return player


def check_game(game: Union[StaticGame, MultistageGame, LevelAugmentedGame], max_level: int) -> LevelAugmentedGame:
    """Attach level types ``0..max_level`` to a game (or check an augmented one)."""
    check_level(max_level, max_level=max_level, allow_zero=False)
    if isinstance(game, LevelAugmentedGame):
        if game.max_level != max_level:
            raise ValueError(f"game carries levels 0..{game.max_level}, expected 0..{max_level}")
        return game
    if isinstance(game, (StaticGame, MultistageGame)):
        return LevelAugmentedGame(game, max_level)
    raise TypeError(f"expected a StaticGame or MultistageGame, got {type(game).__name__}")
