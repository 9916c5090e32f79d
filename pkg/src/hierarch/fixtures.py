"""Small games used throughout the docs and tests."""

from __future__ import annotations

from fractions import Fraction

from .game import Leaf, MultistageGame, Node, StaticGame

__all__ = ["table1", "beauty_contest", "entry_game"]


def table1() -> StaticGame:
    """2x3 game where a tie at level 1 separates the two procedures."""
    return StaticGame.from_matrix(
        ["a", "b"],
        ["c", "d", "e"],
        [
            [(1, 1), (2, 2), (8, -1)],
            [(-4, 2), (3, 1), (0, -1)],
        ],
    )


def beauty_contest(n_actions: int = 101, ratio=Fraction(2, 3)) -> StaticGame:
    """Two-player guessing game on ``0..n_actions-1``.

    A player wins (payoff 1) when the guess is at least as close to
    ``ratio`` times the average guess as the opponent's guess is.
    """
    ratio = Fraction(ratio)
    labels = [str(a) for a in range(n_actions)]
    rows = []
    for a in range(n_actions):
        row = []
        for b in range(n_actions):
            target = ratio * Fraction(a + b, 2)
            da, db = abs(a - target), abs(b - target)
            row.append((int(da <= db), int(db <= da)))
        rows.append(row)
    return StaticGame.from_matrix(labels, labels, rows)


def entry_game() -> MultistageGame:
    """Player 1 stays Out (2, 2) or goes In; then player 2 picks L (3, 1) or R (0, 0)."""
    return MultistageGame(
        Node.move(
            1,
            {
                "Out": Leaf((2, 2)),
                "In": Node.move(2, {"L": Leaf((3, 1)), "R": Leaf((0, 0))}),
            },
        )
    )
