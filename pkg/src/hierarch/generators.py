"""Seeded random instances for property checks."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .game import InstanceTooLarge, Leaf, MultistageGame, Node, StaticGame, enumerate_histories

__all__ = ["random_rational", "random_static_game", "random_tree"]


def random_rational(rng: random.Random, low: int = -4, high: int = 4, denominators: Sequence[int] = (1, 1, 2, 3)) -> Fraction:
    """Small rational; the narrow range keeps exact ties reasonably common."""
    q = rng.choice(denominators)
    return Fraction(rng.randint(low * q, high * q), q)


def random_static_game(
    rng: random.Random, min_actions: int = 2, max_actions: int = 4, **kwargs
) -> StaticGame:
    n1 = rng.randint(min_actions, max_actions)
    n2 = rng.randint(min_actions, max_actions)
    rows = [
        [(random_rational(rng, **kwargs), random_rational(rng, **kwargs)) for _ in range(n2)]
        for _ in range(n1)
    ]
    return StaticGame.from_matrix(
        [f"r{i}" for i in range(n1)], [f"c{j}" for j in range(n2)], rows
    )


def random_tree(
    rng: random.Random,
    max_depth: int = 3,
    max_branching: int = 3,
    max_strategies: int = 48,
    stop_probability: float = 0.3,
    **kwargs,
) -> MultistageGame:
    """Random perfect-information tree.

    Trees whose strategy spaces exceed ``max_strategies`` for either player
    are redrawn.
    """

    def build(depth: int) -> Node | Leaf:
        if depth > 0 and (depth >= max_depth or rng.random() < stop_probability):
            return Leaf((random_rational(rng, **kwargs), random_rational(rng, **kwargs)))
        player = rng.choice((1, 2))
        width = rng.randint(2, max_branching)
        moves = {chr(ord("a") + i): build(depth + 1) for i in range(width)}
        return Node.move(player, moves)

    while True:
        game = MultistageGame(build(0))
        try:
            enumerate_histories(game, strategy_cap=max_strategies)
        except InstanceTooLarge:
            continue
        return game
