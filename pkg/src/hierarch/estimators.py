"""scikit-learn style front ends.

The solvers are "fit" on a game; fitted attributes end in an underscore::

    >>> from hierarch import CognitiveHierarchy, fixtures
    >>> ch = CognitiveHierarchy(tau="3/2", max_level=2).fit(fixtures.table1())
    >>> ch.predict([(1, 2), (2, 1)])
    [('a',), ('c', 'd')]

Static games run the static procedures, multistage games the dynamic ones.
"""

from __future__ import annotations

from fractions import Fraction

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .bayes import decision_rule_from_solution
from .dynamic import run_dch, run_delta_kappa_dynamic
from .game import MultistageGame, StaticGame
from .static import compare, perturb_to_generic, run_ch, run_delta_kappa_static
from .validation import check_game, check_level, check_level_weights, check_player

__all__ = ["CognitiveHierarchy", "DeltaKappaRationalizability", "GenericPerturbation"]


class _LevelSolver(BaseEstimator):
    def _prepare(self, game):
        tau = None if self.weights is not None else self.tau
        self.weights_ = check_level_weights(tau, self.weights, self.max_level)
        self.game_ = check_game(game, self.max_level)

    def _record(self, report):
        self.report_ = report
        self.survivors_ = report.final
        self.trace_ = list(report.trace)
        self.n_steps_ = report.steps
        self.witnesses_ = dict(report.witnesses)

    def predict(self, X):
        """Surviving options for each ``(player, level)`` pair in ``X``."""
        check_is_fitted(self, "survivors_")
        out = []
        for player, level in X:
            check_player(player)
            check_level(level, self.max_level)
            out.append(self.survivors_[(player, level)])
        return out

    def predict_proba(self, X):
        """Uniform mix over the survivors of each ``(player, level)`` pair."""
        check_is_fitted(self, "survivors_")
        rule = decision_rule_from_solution(self.survivors_)
        return [dict(rule[(check_player(p), check_level(k, self.max_level))]) for p, k in X]


class CognitiveHierarchy(_LevelSolver):
    """One-by-one CH procedure (static) or DCH procedure (multistage).

    Parameters
    ----------
    tau : rational, optional
        Poisson parameter of the level distribution.
    weights : sequence of rationals, optional
        Explicit positive level weights; when given, ``tau`` is ignored.
    max_level : int
        Highest level type.
    """

    def __init__(self, tau=Fraction(3, 2), weights=None, max_level=2):
        self.tau = tau
        self.weights = weights
        self.max_level = max_level

    def fit(self, game, y=None):
        self._prepare(game)
        if isinstance(self.game_.base, StaticGame):
            report = run_ch(self.game_, self.weights_)
        else:
            report = run_dch(self.game_, self.weights_)
        self._record(report)
        self.ties_ = list(report.ties)
        return self


class DeltaKappaRationalizability(_LevelSolver):
    """Simultaneous elimination where any admissible belief may support an option.

    ``belief_lag`` only affects multistage games (beliefs concentrate on the
    survivors of two steps back). ``presolve=False`` sends every test to the LP.
    """

    def __init__(self, tau=Fraction(3, 2), weights=None, max_level=2, belief_lag=False, presolve=True):
        self.tau = tau
        self.weights = weights
        self.max_level = max_level
        self.belief_lag = belief_lag
        self.presolve = presolve

    def fit(self, game, y=None):
        self._prepare(game)
        if isinstance(self.game_.base, MultistageGame):
            report = run_delta_kappa_dynamic(
                self.game_, self.weights_, belief_lag=self.belief_lag, presolve=self.presolve
            )
        else:
            report = run_delta_kappa_static(self.game_, self.weights_, presolve=self.presolve)
        self._record(report)
        return self

    def compare(self, ch: CognitiveHierarchy):
        """Check a fitted CH solver against this one (see :func:`hierarch.static.compare`)."""
        check_is_fitted(self, "report_")
        check_is_fitted(ch, "report_")
        return compare(self.report_, ch.report_)


class GenericPerturbation(TransformerMixin, BaseEstimator):
    """Transformer that removes CH ties by payoff nudges totalling less than ``eps``."""

    def __init__(self, eps=Fraction(1, 1000), tau=Fraction(3, 2), weights=None, max_level=2):
        self.eps = eps
        self.tau = tau
        self.weights = weights
        self.max_level = max_level

    def fit(self, game, y=None):
        if not isinstance(game, StaticGame):
            raise TypeError("GenericPerturbation works on static games")
        tau = None if self.weights is not None else self.tau
        self.weights_ = check_level_weights(tau, self.weights, self.max_level)
        return self

    def transform(self, game):
        check_is_fitted(self, "weights_")
        return perturb_to_generic(game, Fraction(self.eps), self.weights_, self.max_level)
