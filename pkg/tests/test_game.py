import pytest
from hypothesis import given
from hypothesis import strategies as st

from hierarch import fixtures
from hierarch.game import (
    GameError,
    InstanceTooLarge,
    LevelAugmentedGame,
    Leaf,
    MultistageGame,
    Node,
    StaticGame,
    augment_with_levels,
    enumerate_histories,
    enumerate_strategies,
    history_label,
    strategic_form,
)

from conftest import seeded_static, seeded_tree


def test_static_game_lookup():
    g = fixtures.table1()
    assert g.payoff(1, "a", "e") == 8 and g.payoff(2, "e", "a") == -1
    assert g.matrix(2) == [[1, 2], [2, 1], [-1, -1]]


def test_static_game_validation():
    with pytest.raises(GameError):
        StaticGame.from_matrix(["a", "a"], ["c"], [[(0, 0)], [(0, 0)]])
    with pytest.raises(GameError):
        StaticGame.from_matrix(["a"], ["c", "d"], [[(0, 0)]])
    with pytest.raises(GameError):
        StaticGame.from_matrix([], ["c"], [])


def test_level_zero_payoff_is_constant():
    g = augment_with_levels(fixtures.table1(), 2)
    assert [t for t in g.types(1)] == [(1, 0), (1, 1), (1, 2)]
    for a in "ab":
        for b in "cde":
            assert g.utility(1, 0, 2, a, b) == 0
            assert g.utility(1, 2, 0, a, b) == fixtures.table1().payoff(1, a, b)


def test_beauty_contest_payoffs():
    g = augment_with_levels(fixtures.beauty_contest(), 4)
    bc = fixtures.beauty_contest()
    for t in range(5):
        assert g.utility(1, 3, t, "10", "30") == bc.payoff(1, "10", "30") == 1
    assert bc.payoff(1, "30", "10") == 0
    assert bc.payoff(1, "7", "7") == bc.payoff(2, "7", "7") == 1


def test_entry_game_histories():
    idx = enumerate_histories(fixtures.entry_game())
    assert [history_label(h) for h in idx.nonterminal] == ["∅", "In"]
    assert sorted(history_label(h) for h in idx.terminal) == ["In,L", "In,R", "Out"]
    into = idx.nonterminal[1]
    assert [s.label for s in idx.strategies_at(1, into)] == ["In"]
    assert [s.label for s in idx.strategies_at(2, into)] == ["L", "R"]


def test_entry_game_strategies_and_paths():
    game = fixtures.entry_game()
    s1, s2 = enumerate_strategies(game, 1), enumerate_strategies(game, 2)
    assert [s.label for s in s1] == ["Out", "In"] and [s.label for s in s2] == ["L", "R"]
    idx = enumerate_histories(game)
    assert idx.payoff(s1[0], s2[0]) == (2, 2)
    assert idx.payoff(s1[1], s2[1]) == (0, 0)
    g = augment_with_levels(game, 2)
    assert g.utility(2, 1, 0, "L", "In") == 1


def test_strategy_count_is_a_product():
    # player 2 moves at two histories with 2 and 3 actions
    root = Node.move(
        1,
        {
            "x": Node.move(2, {"p": Leaf((0, 0)), "q": Leaf((1, 1))}),
            "y": Node.move(2, {"r": Leaf((0, 0)), "s": Leaf((1, 1)), "t": Leaf((2, 2))}),
        },
    )
    assert len(enumerate_strategies(MultistageGame(root), 2)) == 6
    with pytest.raises(InstanceTooLarge):
        enumerate_histories(MultistageGame(root), strategy_cap=5)


def test_tree_validation():
    with pytest.raises(GameError):
        MultistageGame(Leaf((1, 1)))
    with pytest.raises(GameError):
        MultistageGame(Node.move(1, {}))
    both = Node(
        (("a",), ("b",)),
        {("a", "b"): Node.move(1, {"c": Leaf((0, 0))})},
    )
    with pytest.raises(GameError):
        MultistageGame(both)


def test_one_stage_game_matches_static_table():
    g = fixtures.table1()
    tree = MultistageGame.from_static(g)
    assert tree.is_one_stage
    idx = enumerate_histories(tree)
    assert idx.nonterminal == ((),)
    assert strategic_form(tree).to_static() == g


def test_level_augmented_checks():
    with pytest.raises(ValueError):
        LevelAugmentedGame(fixtures.table1(), 0)
    with pytest.raises(TypeError):
        LevelAugmentedGame(fixtures.table1(), 1.5)


@given(st.integers(0, 10_000))
def test_consistency_means_prefix_of_the_path(seed):
    tree = seeded_tree(seed, max_strategies=24)
    idx = enumerate_histories(tree)
    for h in idx.nonterminal:
        for s1 in idx.strategies[1]:
            for s2 in idx.strategies[2]:
                z = idx.path(s1, s2)
                on_path = z[: len(h)] == h
                both = s1 in idx.strategies_at(1, h) and s2 in idx.strategies_at(2, h)
                assert on_path == both


@given(st.integers(0, 10_000))
def test_consistent_sets_shrink_along_histories(seed):
    idx = enumerate_histories(seeded_tree(seed, max_strategies=24))
    for h in idx.nonterminal:
        for p in (1, 2):
            for h2 in idx.nonterminal + idx.terminal:
                if h2[: len(h)] == h:
                    assert set(idx.consistent[p][h2]) <= set(idx.consistent[p][h])


@given(st.integers(0, 10_000))
def test_strategic_form_of_one_stage_game(seed):
    g = seeded_static(seed)
    assert strategic_form(MultistageGame.from_static(g)).to_static() == g
