"""JSON game files.

Static games::

    {"actions": [["a", "b"], ["c", "d", "e"]],
     "payoffs": [[["1", "1"], ["2", "2"], ["8", "-1"]],
                 [["-4", "2"], ["3", "1"], ["0", "-1"]]]}

rows are player 1's actions, columns player 2's. Trees::

    {"player": 1, "moves": {"Out": {"leaf": ["2", "2"]},
                            "In": {"player": 2, "moves": {...}}}}

Payoffs are strings holding integers or ``p/q`` fractions (JSON integers are
accepted too), so values are exact.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from .game import GameError, Leaf, MultistageGame, Node, StaticGame

__all__ = [
    "GameFormatError",
    "parse_rational",
    "parse_static_game",
    "parse_tree_game",
    "parse_game",
    "load_game",
    "dump_static_game",
    "dump_tree_game",
    "dump_game",
    "static_to_json",
    "tree_to_json",
]

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


class GameFormatError(ValueError):
    """Malformed game file; ``path`` locates the offending JSON element."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


def parse_rational(value: Any, path: str = "$") -> Fraction:
    if isinstance(value, bool):
        raise GameFormatError(f"malformed rational {value!r}", path)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            pass
    raise GameFormatError(f"malformed rational {value!r} (expected an integer or 'p/q' string)", path)


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise GameFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}") from None


def _payoff_pair(value: Any, path: str) -> tuple[Fraction, Fraction]:
    if not isinstance(value, list) or len(value) != 2:
        raise GameFormatError("a payoff entry must be a list of two rationals", path)
    return parse_rational(value[0], f"{path}[0]"), parse_rational(value[1], f"{path}[1]")


def _static_from_obj(doc: Any) -> StaticGame:
    if not isinstance(doc, dict):
        raise GameFormatError("a static game must be a JSON object")
    unknown = set(doc) - {"actions", "payoffs"}
    if unknown:
        raise GameFormatError(f"unexpected keys {sorted(unknown)}")
    actions = doc.get("actions")
    if not isinstance(actions, list) or len(actions) != 2:
        raise GameFormatError("'actions' must list two players' action labels", "$.actions")
    for p, group in enumerate(actions):
        if not isinstance(group, list) or not group:
            raise GameFormatError("each player needs a nonempty list of actions", f"$.actions[{p}]")
        for j, label in enumerate(group):
            if not isinstance(label, str) or not label:
                raise GameFormatError("action labels must be nonempty strings", f"$.actions[{p}][{j}]")
    rows = doc.get("payoffs")
    if not isinstance(rows, list):
        raise GameFormatError("'payoffs' must be a list of rows", "$.payoffs")
    if len(rows) != len(actions[0]):
        raise GameFormatError(
            f"ragged payoff matrix: {len(rows)} rows for {len(actions[0])} player-1 actions", "$.payoffs"
        )
    table = []
    for i, row in enumerate(rows):
        path = f"$.payoffs[{i}]"
        if not isinstance(row, list) or len(row) != len(actions[1]):
            size = len(row) if isinstance(row, list) else "no"
            raise GameFormatError(
                f"ragged payoff matrix: {size} cells for {len(actions[1])} player-2 actions", path
            )
        table.append([_payoff_pair(cell, f"{path}[{j}]") for j, cell in enumerate(row)])
    try:
        return StaticGame.from_matrix(actions[0], actions[1], table)
    except GameError as exc:
        raise GameFormatError(str(exc)) from None


def _node_from_obj(doc: Any, path: str) -> Union[Node, Leaf]:
    if not isinstance(doc, dict):
        raise GameFormatError("tree elements must be JSON objects", path)
    if "leaf" in doc:
        if set(doc) != {"leaf"}:
            raise GameFormatError("a leaf holds only 'leaf'", path)
        value = doc["leaf"]
        if not isinstance(value, list) or len(value) != 2:
            raise GameFormatError("a leaf needs exactly two payoffs", f"{path}.leaf")
        return Leaf(_payoff_pair(value, f"{path}.leaf"))
    unknown = set(doc) - {"player", "moves"}
    if unknown:
        raise GameFormatError(f"unexpected keys {sorted(unknown)}", path)
    player = doc.get("player")
    if isinstance(player, list):
        raise GameFormatError("a node lists more than one active player (perfect information required)", f"{path}.player")
    if player not in (1, 2) or isinstance(player, bool):
        raise GameFormatError("'player' must be 1 or 2", f"{path}.player")
    moves = doc.get("moves")
    if not isinstance(moves, dict):
        raise GameFormatError("'moves' must be an object mapping action labels to subtrees", f"{path}.moves")
    if not moves:
        raise GameFormatError("empty move map: a decision node needs at least one action", f"{path}.moves")
    children = {}
    for label, child in moves.items():
        if not label or "." in label:
            raise GameFormatError("action labels must be nonempty and contain no '.'", f"{path}.moves")
        children[label] = _node_from_obj(child, f"{path}.moves.{label}")
    return Node.move(player, children)


def _tree_from_obj(doc: Any) -> MultistageGame:
    root = _node_from_obj(doc, "$")
    if isinstance(root, Leaf):
        raise GameFormatError("empty game: the root is a leaf, nobody moves")
    try:
        return MultistageGame(root)
    except GameError as exc:
        raise GameFormatError(str(exc)) from None


def parse_static_game(text: str) -> StaticGame:
    return _static_from_obj(_loads(text))


def parse_tree_game(text: str) -> MultistageGame:
    return _tree_from_obj(_loads(text))


def parse_game(text: str) -> Union[StaticGame, MultistageGame]:
    """Parse either format, telling them apart by their top-level keys."""
    doc = _loads(text)
    if isinstance(doc, dict) and "actions" in doc:
        return _static_from_obj(doc)
    return _tree_from_obj(doc)


def load_game(path: Union[str, Path]) -> Union[StaticGame, MultistageGame]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise GameFormatError(f"cannot read game file: {exc.strerror}", str(path)) from None
    return parse_game(text)


def static_to_json(game: StaticGame) -> dict:
    a1, a2 = game.actions
    return {
        "actions": [list(a1), list(a2)],
        "payoffs": [[[str(v) for v in game.payoffs[(x, y)]] for y in a2] for x in a1],
    }


def tree_to_json(game: MultistageGame) -> dict:
    def encode(node):
        if isinstance(node, Leaf):
            return {"leaf": [str(v) for v in node.payoffs]}
        movers = node.movers
        if len(movers) != 1:
            raise GameError("simultaneous nodes have no tree encoding; write the static game instead")
        player = movers[0]
        moves = {}
        for label in node.actions[player - 1]:
            profile = (label, None) if player == 1 else (None, label)
            moves[label] = encode(node.child(profile))
        return {"player": player, "moves": moves}

    return encode(game.root)


def dump_static_game(game: StaticGame) -> str:
    return json.dumps(static_to_json(game), indent=2) + "\n"


def dump_tree_game(game: MultistageGame) -> str:
    return json.dumps(tree_to_json(game), indent=2) + "\n"


def dump_game(game: Union[StaticGame, MultistageGame]) -> str:
    if isinstance(game, StaticGame):
        return dump_static_game(game)
    return dump_tree_game(game)
