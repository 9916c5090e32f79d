"""Static games, perfect-information multistage games, and level augmentation.

Players are numbered 1 and 2. Payoffs are :class:`fractions.Fraction`.

A multistage game is a finite tree. Every internal :class:`Node` lists the
actions available to each player; in a perfect-information game exactly one
player has actions at each node and the other implicitly waits. The single
exception is :meth:`MultistageGame.from_static`, which builds the one-stage
game where both players move at the root and every outcome is a leaf.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping, Sequence, Union

__all__ = [
    "PLAYERS",
    "opponent",
    "GameError",
    "InstanceTooLarge",
    "StaticGame",
    "Leaf",
    "Node",
    "MultistageGame",
    "Strategy",
    "HistoryIndex",
    "StrategicForm",
    "LevelAugmentedGame",
    "augment_with_levels",
    "enumerate_histories",
    "enumerate_strategies",
    "strategic_form",
    "history_label",
]

PLAYERS = (1, 2)

#: default bound on the number of strategies enumerated for one player
DEFAULT_STRATEGY_CAP = 20_000


class GameError(ValueError):
    """Raised for structurally invalid games."""


class InstanceTooLarge(GameError):
    """Raised when a strategy space exceeds the configured cap."""


def opponent(player: int) -> int:
    if player not in PLAYERS:
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    return 3 - player


def _pair(values) -> tuple[Fraction, Fraction]:
    v1, v2 = values
    return Fraction(v1), Fraction(v2)


@dataclass(frozen=True, eq=False)
class StaticGame:
    """Finite two-player game in normal form.

    ``payoffs[(a1, a2)]`` is the pair ``(v1, v2)``.
    """

    actions: tuple[tuple[str, ...], tuple[str, ...]]
    payoffs: Mapping[tuple[str, str], tuple[Fraction, Fraction]]

    def __post_init__(self):
        acts = tuple(tuple(str(a) for a in group) for group in self.actions)
        if len(acts) != 2:
            raise GameError("a static game has exactly two players")
        for p, group in zip(PLAYERS, acts):
            if not group:
                raise GameError(f"player {p} has no actions")
            if len(set(group)) != len(group):
                raise GameError(f"player {p} has duplicate action labels")
        table = {}
        for a1 in acts[0]:
            for a2 in acts[1]:
                if (a1, a2) not in self.payoffs:
                    raise GameError(f"missing payoff for profile ({a1}, {a2})")
                table[(a1, a2)] = _pair(self.payoffs[(a1, a2)])
        if len(table) != len(self.payoffs):
            raise GameError("payoffs mention profiles outside the action sets")
        object.__setattr__(self, "actions", acts)
        object.__setattr__(self, "payoffs", table)

    @classmethod
    def from_matrix(cls, actions1: Sequence[str], actions2: Sequence[str], rows) -> StaticGame:
        """Build from ``rows[i][j] = (v1, v2)``, row = player 1's action."""
        if len(rows) != len(actions1) or any(len(r) != len(actions2) for r in rows):
            raise GameError("payoff matrix shape does not match the action lists")
        payoffs = {
            (a1, a2): rows[i][j]
            for i, a1 in enumerate(actions1)
            for j, a2 in enumerate(actions2)
        }
        return cls((tuple(actions1), tuple(actions2)), payoffs)

    def payoff(self, player: int, own: str, other: str) -> Fraction:
        profile = (own, other) if player == 1 else (other, own)
        return self.payoffs[profile][player - 1]

    def matrix(self, player: int) -> list[list[Fraction]]:
        """Player's payoffs indexed ``[own action][opponent action]``."""
        own = self.actions[player - 1]
        other = self.actions[opponent(player) - 1]
        return [[self.payoff(player, a, b) for b in other] for a in own]

    def with_payoff(self, player: int, own: str, other: str, value) -> StaticGame:
        profile = (own, other) if player == 1 else (other, own)
        payoffs = dict(self.payoffs)
        pair = list(payoffs[profile])
        pair[player - 1] = Fraction(value)
        payoffs[profile] = tuple(pair)
        return StaticGame(self.actions, payoffs)

    def __eq__(self, other):
        if not isinstance(other, StaticGame):
            return NotImplemented
        return self.actions == other.actions and self.payoffs == other.payoffs

    def __repr__(self):
        return f"StaticGame({len(self.actions[0])}x{len(self.actions[1])})"


# ---------------------------------------------------------------------------
# multistage games

Profile = tuple[Union[str, None], Union[str, None]]
History = tuple[Profile, ...]


@dataclass(frozen=True)
class Leaf:
    payoffs: tuple[Fraction, Fraction]

    def __post_init__(self):
        if len(self.payoffs) != 2:
            raise GameError("a leaf needs exactly two payoffs")
        object.__setattr__(self, "payoffs", _pair(self.payoffs))


@dataclass(frozen=True, eq=False)
class Node:
    """Internal node: available actions per player and one child per profile."""

    actions: tuple[tuple[str, ...], tuple[str, ...]]
    children: Mapping[Profile, Union[Node, Leaf]] = field(repr=False)

    @classmethod
    def move(cls, player: int, moves: Mapping[str, Union[Node, Leaf]]) -> Node:
        """Perfect-information node where ``player`` chooses among ``moves``."""
        labels = tuple(str(a) for a in moves)
        actions = (labels, ()) if player == 1 else ((), labels)
        children = {}
        for label, child in moves.items():
            profile = (str(label), None) if player == 1 else (None, str(label))
            children[profile] = child
        return cls(actions, children)

    @property
    def movers(self) -> tuple[int, ...]:
        return tuple(p for p in PLAYERS if self.actions[p - 1])

    def child(self, profile: Profile) -> Union[Node, Leaf]:
        return self.children[profile]

    def profiles(self) -> Iterator[Profile]:
        acts1 = self.actions[0] or (None,)
        acts2 = self.actions[1] or (None,)
        for a1 in acts1:
            for a2 in acts2:
                yield (a1, a2)


def history_label(h: History) -> str:
    """Readable form of a history, e.g. ``"In,L"``; the root is ``"∅"``."""
    if not h:
        return "∅"
    steps = []
    for a1, a2 in h:
        if a1 is not None and a2 is not None:
            steps.append(f"({a1},{a2})")
        else:
            steps.append(a1 if a1 is not None else a2)
    return ",".join(steps)


class MultistageGame:
    """Finite multistage game given by its root node."""

    def __init__(self, root: Union[Node, Leaf]):
        if isinstance(root, Leaf):
            raise GameError("empty game: the root is a leaf")
        self.root = root
        self._validate(root, depth=0)

    def _validate(self, node: Node, depth: int) -> None:
        movers = node.movers
        if not movers:
            raise GameError("a non-terminal node has no available actions")
        for p in PLAYERS:
            acts = node.actions[p - 1]
            if len(set(acts)) != len(acts):
                raise GameError(f"duplicate action labels for player {p} at a node")
        expected = set(node.profiles())
        if set(node.children) != expected:
            raise GameError("node children do not match its action profiles")
        all_leaves = all(isinstance(c, Leaf) for c in node.children.values())
        if len(movers) > 1 and not (depth == 0 and all_leaves):
            raise GameError("perfect information violated: two active players at one node")
        for child in node.children.values():
            if isinstance(child, Node):
                self._validate(child, depth + 1)
            elif not isinstance(child, Leaf):
                raise GameError(f"unexpected tree element {child!r}")

    @classmethod
    def from_static(cls, game: StaticGame) -> MultistageGame:
        """One-stage game: both players move once, simultaneously."""
        children = {
            (a1, a2): Leaf(game.payoffs[(a1, a2)])
            for a1 in game.actions[0]
            for a2 in game.actions[1]
        }
        return cls(Node(game.actions, children))

    @property
    def is_one_stage(self) -> bool:
        return all(isinstance(c, Leaf) for c in self.root.children.values())

    def node_at(self, h: History) -> Union[Node, Leaf]:
        node: Union[Node, Leaf] = self.root
        for profile in h:
            node = node.child(profile)
        return node

    def __repr__(self):
        idx = enumerate_histories(self)
        return f"MultistageGame({len(idx.nonterminal)} decision nodes, {len(idx.terminal)} leaves)"


@dataclass(frozen=True)
class Strategy:
    """A player's choice at each history where that player moves."""

    player: int
    histories: tuple[History, ...]
    choices: tuple[str, ...]

    def __call__(self, h: History) -> str:
        return self.choices[self.histories.index(h)]

    def as_dict(self) -> dict[History, str]:
        return dict(zip(self.histories, self.choices))

    @property
    def label(self) -> str:
        return ".".join(self.choices) if self.choices else "wait"

    def __str__(self):
        return self.label


class HistoryIndex:
    """Histories of a multistage game together with the sets ``S_i(h)``.

    ``consistent[i][h]`` is the tuple of indices into ``strategies[i]`` of the
    strategies that do not rule out reaching ``h``.
    """

    def __init__(self, game: MultistageGame, strategy_cap: int = DEFAULT_STRATEGY_CAP):
        self.game = game
        nonterminal: list[History] = []
        terminal: list[History] = []
        nodes: dict[History, Union[Node, Leaf]] = {}
        stack: list[tuple[History, Union[Node, Leaf]]] = [((), game.root)]
        while stack:
            h, node = stack.pop()
            nodes[h] = node
            if isinstance(node, Leaf):
                terminal.append(h)
                continue
            nonterminal.append(h)
            for profile in reversed(list(node.profiles())):
                stack.append((h + (profile,), node.child(profile)))
        self.nonterminal = tuple(nonterminal)
        self.terminal = tuple(terminal)
        self.nodes = nodes

        self.active: dict[int, tuple[History, ...]] = {
            p: tuple(h for h in nonterminal if nodes[h].actions[p - 1]) for p in PLAYERS
        }
        self.strategies: dict[int, tuple[Strategy, ...]] = {
            p: _strategy_product(p, self.active[p], nodes, strategy_cap) for p in PLAYERS
        }
        self.consistent: dict[int, dict[History, tuple[int, ...]]] = {
            p: {h: self._consistent(p, h) for h in nonterminal + terminal} for p in PLAYERS
        }

    def _consistent(self, player: int, h: History) -> tuple[int, ...]:
        required = {}
        for t, profile in enumerate(h):
            action = profile[player - 1]
            if action is not None:
                required[h[:t]] = action
        out = []
        for n, s in enumerate(self.strategies[player]):
            choice = s.as_dict()
            if all(choice[prefix] == a for prefix, a in required.items()):
                out.append(n)
        return tuple(out)

    def strategies_at(self, player: int, h: History) -> tuple[Strategy, ...]:
        """``S_i(h)`` as strategy objects."""
        return tuple(self.strategies[player][n] for n in self.consistent[player][h])

    def path(self, s1: Strategy, s2: Strategy) -> History:
        """Terminal history reached by the profile ``(s1, s2)``."""
        h: History = ()
        c1, c2 = s1.as_dict(), s2.as_dict()
        node = self.game.root
        while isinstance(node, Node):
            profile = (
                c1[h] if node.actions[0] else None,
                c2[h] if node.actions[1] else None,
            )
            h = h + (profile,)
            node = node.child(profile)
        return h

    def payoff(self, s1: Strategy, s2: Strategy) -> tuple[Fraction, Fraction]:
        leaf = self.nodes[self.path(s1, s2)]
        return leaf.payoffs


def _strategy_product(player, histories, nodes, cap) -> tuple[Strategy, ...]:
    menus = [nodes[h].actions[player - 1] for h in histories]
    size = 1
    for menu in menus:
        size *= len(menu)
        if size > cap:
            raise InstanceTooLarge(
                f"player {player} has more than {cap} strategies"
            )
    return tuple(
        Strategy(player, tuple(histories), tuple(choice))
        for choice in itertools.product(*menus)
    )


def enumerate_histories(game: MultistageGame, strategy_cap: int = DEFAULT_STRATEGY_CAP) -> HistoryIndex:
    return HistoryIndex(game, strategy_cap)


def enumerate_strategies(game: MultistageGame, player: int, strategy_cap: int = DEFAULT_STRATEGY_CAP) -> list[Strategy]:
    """All strategies of ``player`` in lexicographic (history, action) order."""
    opponent(player)
    index = game if isinstance(game, HistoryIndex) else HistoryIndex(game, strategy_cap)
    return list(index.strategies[player])


@dataclass(frozen=True)
class StrategicForm:
    """Payoffs of every strategy profile of a multistage game."""

    index: HistoryIndex
    payoffs: Mapping[tuple[str, str], tuple[Fraction, Fraction]]

    @property
    def labels(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        return tuple(tuple(s.label for s in self.index.strategies[p]) for p in PLAYERS)

    def matrix(self, player: int) -> list[list[Fraction]]:
        own, other = self.labels[player - 1], self.labels[opponent(player) - 1]
        out = []
        for a in own:
            row = []
            for b in other:
                profile = (a, b) if player == 1 else (b, a)
                row.append(self.payoffs[profile][player - 1])
            out.append(row)
        return out

    def to_static(self) -> StaticGame:
        return StaticGame(self.labels, self.payoffs)


def strategic_form(game: MultistageGame | HistoryIndex) -> StrategicForm:
    index = game if isinstance(game, HistoryIndex) else enumerate_histories(game)
    for p in PLAYERS:
        labels = [s.label for s in index.strategies[p]]
        if len(set(labels)) != len(labels):
            raise GameError(f"player {p} has strategies with identical labels")
    payoffs = {}
    for s1 in index.strategies[1]:
        for s2 in index.strategies[2]:
            payoffs[(s1.label, s2.label)] = index.payoff(s1, s2)
    return StrategicForm(index, payoffs)


# ---------------------------------------------------------------------------
# level types


@dataclass(frozen=True, eq=False)
class LevelAugmentedGame:
    """A game whose players carry level types ``0..max_level``.

    Level-0 types get payoff 0 everywhere; every other level gets the base
    game's payoff.
    """

    base: Union[StaticGame, MultistageGame]
    max_level: int

    def __post_init__(self):
        if isinstance(self.max_level, bool) or not isinstance(self.max_level, int):
            raise TypeError("max_level must be an int")
        if self.max_level < 1:
            raise ValueError("max_level must be at least 1: level 0 alone has no strategic type")

    @property
    def is_static(self) -> bool:
        return isinstance(self.base, StaticGame)

    @property
    def levels(self) -> range:
        return range(self.max_level + 1)

    def types(self, player: int) -> tuple[tuple[int, int], ...]:
        opponent(player)
        return tuple((player, k) for k in self.levels)

    def utility(self, player: int, own_level: int, other_level: int, own, other) -> Fraction:
        """``u_i(theta_i, theta_-i, a)`` with ``own``/``other`` actions or strategies."""
        if not 0 <= other_level <= self.max_level:
            raise ValueError(f"level {other_level} outside 0..{self.max_level}")
        if own_level == 0:
            return Fraction(0)
        if self.is_static:
            return self.base.payoff(player, own, other)
        form = self._form()
        profile = (own, other) if player == 1 else (other, own)
        return form.payoffs[profile][player - 1]

    def _form(self) -> StrategicForm:
        cached = self.__dict__.get("_cached_form")
        if cached is None:
            cached = strategic_form(self.base)
            object.__setattr__(self, "_cached_form", cached)
        return cached

    def options(self, player: int) -> tuple[str, ...]:
        """Action labels (static) or strategy labels (multistage)."""
        opponent(player)
        if self.is_static:
            return self.base.actions[player - 1]
        return self._form().labels[player - 1]

    def matrix(self, player: int) -> list[list[Fraction]]:
        """Payoffs of a positive-level type, ``[own option][opponent option]``."""
        key = f"_cached_matrix_{player}"
        cached = self.__dict__.get(key)
        if cached is None:
            cached = self.base.matrix(player) if self.is_static else self._form().matrix(player)
            object.__setattr__(self, key, cached)
        return cached


def augment_with_levels(game: Union[StaticGame, MultistageGame], max_level: int) -> LevelAugmentedGame:
    return LevelAugmentedGame(game, max_level)
