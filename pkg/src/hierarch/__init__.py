"""Cognitive-hierarchy solvers and level-restricted rationalizability.

Everything is computed with exact rational arithmetic.
"""

from . import fixtures
from .bayes import (
    BayesianElaboration,
    DecisionRule,
    build_elaboration,
    conditional_prior,
    decision_rule_from_solution,
    state_outcome,
    verify_bayesian_equilibrium,
)
from .beliefs import (
    BeliefPolytope,
    LevelWeights,
    PointBelief,
    build_static_belief_polytope,
    ch_point_belief,
    poisson_weights,
    truncated_weights,
)
from .dynamic import (
    bayes_update,
    conditional_view,
    lemma2_beliefs,
    run_dch,
    run_delta_kappa_dynamic,
    sequentially_rational,
    supports_strategy,
)
from .estimators import CognitiveHierarchy, DeltaKappaRationalizability, GenericPerturbation
from .game import (
    HistoryIndex,
    LevelAugmentedGame,
    Leaf,
    MultistageGame,
    Node,
    StaticGame,
    Strategy,
    augment_with_levels,
    enumerate_histories,
    enumerate_strategies,
    strategic_form,
)
from .io import load_game, parse_game, parse_static_game, parse_tree_game
from .lp import LinearSystem, lp_feasible
from .solution import ConsistencyError, SolveReport, TypeActionSet
from .static import (
    best_responses,
    compare,
    detect_ties,
    perturb_to_generic,
    run_ch,
    run_delta_kappa_static,
    supports_action,
)

__version__ = "0.1.0"

__all__ = [
    "BayesianElaboration",
    "BeliefPolytope",
    "CognitiveHierarchy",
    "ConsistencyError",
    "DecisionRule",
    "DeltaKappaRationalizability",
    "GenericPerturbation",
    "HistoryIndex",
    "Leaf",
    "LevelAugmentedGame",
    "LevelWeights",
    "LinearSystem",
    "MultistageGame",
    "Node",
    "PointBelief",
    "SolveReport",
    "StaticGame",
    "Strategy",
    "TypeActionSet",
    "augment_with_levels",
    "bayes_update",
    "best_responses",
    "build_elaboration",
    "build_static_belief_polytope",
    "ch_point_belief",
    "compare",
    "conditional_prior",
    "conditional_view",
    "decision_rule_from_solution",
    "detect_ties",
    "enumerate_histories",
    "enumerate_strategies",
    "fixtures",
    "lemma2_beliefs",
    "load_game",
    "lp_feasible",
    "parse_game",
    "parse_static_game",
    "parse_tree_game",
    "perturb_to_generic",
    "poisson_weights",
    "run_ch",
    "run_dch",
    "run_delta_kappa_dynamic",
    "run_delta_kappa_static",
    "sequentially_rational",
    "state_outcome",
    "strategic_form",
    "supports_action",
    "supports_strategy",
    "truncated_weights",
    "verify_bayesian_equilibrium",
]
