from fractions import Fraction

import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from hierarch import CognitiveHierarchy, DeltaKappaRationalizability, GenericPerturbation, fixtures
from hierarch.validation import check_game, check_level, check_level_weights, check_player, check_rational


def test_params_round_trip():
    est = DeltaKappaRationalizability(tau="5", max_level=2, presolve=False)
    params = est.get_params()
    assert params == {"tau": "5", "weights": None, "max_level": 2, "belief_lag": False, "presolve": False}
    copy = clone(est)
    assert copy.get_params() == params and copy is not est
    est.set_params(max_level=3)
    assert est.max_level == 3


def test_fit_predict_static():
    ch = CognitiveHierarchy(tau=Fraction(3, 2), max_level=2).fit(fixtures.table1())
    assert ch.predict([(1, 2), (2, 1)]) == [("a",), ("c", "d")]
    assert ch.predict_proba([(2, 1)]) == [{"c": Fraction(1, 2), "d": Fraction(1, 2)}]
    assert ch.n_steps_ == 2 and len(ch.ties_) == 1
    dk = DeltaKappaRationalizability(tau=5, max_level=2).fit(fixtures.table1())
    ch5 = CognitiveHierarchy(tau=5, max_level=2).fit(fixtures.table1())
    assert dk.predict([(1, 2)]) == [("a", "b")]
    assert not dk.compare(ch5).equal


def test_fit_multistage():
    est = CognitiveHierarchy(weights=["1", "3/2", "9/8", "27/16"], max_level=3).fit(fixtures.entry_game())
    assert est.predict([(1, 1), (1, 3)]) == [("Out",), ("In",)]
    dk = DeltaKappaRationalizability(tau="3/2", max_level=3, belief_lag=True).fit(fixtures.entry_game())
    assert dk.survivors_ == est.survivors_


def test_perturbation_transformer():
    game = fixtures.table1()
    out = GenericPerturbation(eps=Fraction(1, 100), max_level=2).fit_transform(game)
    assert out.payoff(2, "c", "a") - game.payoff(2, "c", "a") == Fraction(1, 400)
    with pytest.raises(TypeError):
        GenericPerturbation().fit(fixtures.entry_game())


def test_unfitted_and_bad_queries():
    with pytest.raises(NotFittedError):
        CognitiveHierarchy().predict([(1, 1)])
    ch = CognitiveHierarchy(max_level=2).fit(fixtures.table1())
    with pytest.raises(ValueError):
        ch.predict([(3, 1)])
    with pytest.raises(ValueError):
        ch.predict([(1, 5)])


def test_validation_helpers():
    assert check_rational("3/2") == Fraction(3, 2)
    with pytest.raises(TypeError):
        check_rational(0.5)
    with pytest.raises(TypeError):
        check_rational(True)
    with pytest.raises(ValueError):
        check_rational("1/0")
    with pytest.raises(ValueError):
        check_level_weights(1, [1, 1], 1)
    with pytest.raises(ValueError):
        check_level_weights(None, None, 1)
    with pytest.raises(ValueError):
        check_level_weights(None, [1, 1], 2)
    assert check_level_weights(None, [1, 2, 3], 1).weights == (1, 2)
    with pytest.raises(ValueError):
        check_level(3, 2)
    with pytest.raises(ValueError):
        check_player(0)
    with pytest.raises(TypeError):
        check_game("not a game", 2)
    with pytest.raises(ValueError):
        check_game(check_game(fixtures.table1(), 2), 3)
