"""Exit criteria. Each test carries a ``criterion`` marker; the terminal
summary prints one PASS/FAIL line per criterion."""

import random
import time
from fractions import Fraction

import pytest

from hierarch import (
    MultistageGame,
    augment_with_levels,
    bayes_update,
    build_elaboration,
    build_static_belief_polytope,
    ch_point_belief,
    compare,
    conditional_prior,
    conditional_view,
    decision_rule_from_solution,
    fixtures,
    lemma2_beliefs,
    perturb_to_generic,
    poisson_weights,
    run_ch,
    run_dch,
    run_delta_kappa_dynamic,
    run_delta_kappa_static,
    state_outcome,
    supports_action,
    truncated_weights,
    verify_bayesian_equilibrium,
)
from hierarch.dynamic import history_index
from hierarch.game import PLAYERS, opponent
from hierarch.generators import random_static_game, random_tree

from oracles import fm_supports

pytestmark = pytest.mark.acceptance

N_GAMES = 500
TAUS = (Fraction(1), Fraction(3, 2), Fraction(4))
L = 3


def _report(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())


@pytest.fixture(scope="module")
def ensemble():
    runs = []
    for seed in range(N_GAMES):
        game = random_static_game(random.Random(seed))
        g = augment_with_levels(game, L)
        for tau in TAUS:
            f = poisson_weights(tau, L)
            runs.append((seed, game, g, f, run_ch(g, f), run_delta_kappa_static(g, f)))
    return runs


@pytest.fixture(scope="module")
def trees():
    runs = []
    for seed in range(200):
        tree = random_tree(random.Random(10_000 + seed), max_depth=3, max_branching=3)
        g = augment_with_levels(tree, L)
        f = poisson_weights(TAUS[seed % 3], L)
        runs.append((seed, g, f, run_dch(g, f), run_delta_kappa_dynamic(g, f)))
    return runs


@pytest.mark.criterion(1, "beauty contest reduces to {0} for every level >= 1")
@pytest.mark.parametrize("tau", [Fraction(1, 2), Fraction(3, 2), Fraction(5)])
def test_beauty_contest(tau):
    bc = fixtures.beauty_contest()
    full = tuple(str(a) for a in range(101))
    worst = 0.0
    for levels in range(1, 5):
        g = augment_with_levels(bc, levels)
        f = poisson_weights(tau, levels)
        for solver in (run_ch, run_delta_kappa_static):
            start = time.perf_counter()
            report = solver(g, f)
            worst = max(worst, time.perf_counter() - start)
            for p in PLAYERS:
                assert report.final[(p, 0)] == full
                for k in range(1, levels + 1):
                    assert report.final[(p, k)] == ("0",)
    assert worst < 30
    _report(1, True, f"tau={tau} slowest run {worst:.1f}s")


@pytest.mark.criterion(2, "table1 fixture: CH keeps a; with tau=5 the simultaneous run keeps a and b")
def test_table1():
    start = time.perf_counter()
    game = augment_with_levels(fixtures.table1(), 2)
    ch = run_ch(game, poisson_weights(Fraction(3, 2), 2))
    assert ch.final[(1, 2)] == ("a",)
    f5 = poisson_weights(5, 2)
    ch5, dk5 = run_ch(game, f5), run_delta_kappa_static(game, f5)
    assert dk5.final[(1, 2)] == ("a", "b")
    assert ch5.final[(1, 2)] == ("a",)
    verdict = compare(dk5, ch5)
    assert [(d.player, d.level, d.ch, d.dk) for d in verdict.divergences] == [(1, 2, ("a",), ("a", "b"))]
    elapsed = time.perf_counter() - start
    assert elapsed < 1
    _report(2, True, f"{elapsed:.2f}s")


@pytest.mark.criterion(3, "one-by-one survivors contained in simultaneous survivors")
def test_subset(ensemble):
    violations = []
    for seed, _, g, f, ch, dk in ensemble:
        for p in PLAYERS:
            for k in range(1, L + 1):
                for n in (k, max(ch.steps, dk.steps)):
                    if not set(ch.at_step(n)[(p, k)]) <= set(dk.at_step(n)[(p, k)]):
                        violations.append((seed, f.weights[1], p, k, n))
    assert len(ensemble) >= 1500
    assert violations == []
    _report(3, True, f"{len(ensemble)} runs, 0 violations")


@pytest.mark.criterion(4, "tie-free runs coincide; perturbation removes every tie")
def test_tie_free_coincidence(ensemble):
    tie_free = [r for r in ensemble if not r[4].ties]
    mismatches = [r[0] for r in tie_free if r[4].final != r[5].final]
    assert tie_free and mismatches == []
    perturbed = 0
    eps = Fraction(1, 1000)
    for seed, game, _, f, ch, _ in ensemble:
        if not ch.ties:
            continue
        nudged = perturb_to_generic(game, eps, f, L)
        change = sum(
            abs(nudged.payoff(p, a, b) - game.payoff(p, a, b))
            for p in PLAYERS
            for a in game.actions[p - 1]
            for b in game.actions[opponent(p) - 1]
        )
        assert 0 < change < eps
        g = augment_with_levels(nudged, L)
        ch2, dk2 = run_ch(g, f), run_delta_kappa_static(g, f)
        assert ch2.ties == [], seed
        assert ch2.final == dk2.final, seed
        perturbed += 1
    assert perturbed > 0
    _report(4, True, f"{len(tie_free)} tie-free runs, {perturbed} perturbed games")


@pytest.mark.criterion(5, "level-k trace constant from step k onward")
def test_stabilization(ensemble):
    bad = []
    for seed, _, _, _, ch, dk in ensemble:
        for report in (ch, dk):
            for p in PLAYERS:
                for k in range(L + 1):
                    tail = {report.at_step(n)[(p, k)] for n in range(k, len(report.trace) + 1)}
                    if len(tail) != 1:
                        bad.append((seed, report.procedure, p, k))
    assert bad == []
    _report(5, True)


@pytest.mark.criterion(6, "CH solution is a Bayesian equilibrium of the elaboration")
def test_bayesian_elaboration(ensemble):
    for seed, _, g, f, ch, _ in ensemble:
        el = build_elaboration(g, f, Fraction(1, 10))
        check = verify_bayesian_equilibrium(el, decision_rule_from_solution(ch), g)
        assert check.passed, (seed, check.violations)
        for p in PLAYERS:
            for m in range(1, L + 1):
                cond = conditional_prior(el, p, m)
                marginal = [Fraction(0)] * m
                for state, q in cond.items():
                    marginal[el.type_of(opponent(p), state)] += q
                assert tuple(marginal) == truncated_weights(f, m)
    bc = augment_with_levels(fixtures.beauty_contest(), 7)
    f = poisson_weights(Fraction(3, 2), 7)
    ch = run_ch(bc, f)
    el = build_elaboration(bc, f, Fraction(1, 10))
    rule = decision_rule_from_solution(ch)
    assert verify_bayesian_equilibrium(el, rule, bc).passed
    outcome = state_outcome(el, rule, (5, 7))
    assert outcome == {1: (5, {"0": 1}), 2: (7, {"0": 1})}
    _report(6, True, "including state (5,7) with actions (0,0)")


def _closed_form_and_chain_rule(g, f, report):
    index = history_index(g)
    for k in range(1, g.max_level + 1):
        sets = report.at_step(k - 1)
        for p in PLAYERS:
            survivors = [sets[(opponent(p), t)] for t in range(k)]
            initial = ch_point_belief(k, survivors, f)
            view = conditional_view(initial, g, p)
            assert view.chain_rule_violations(index) == []
            for h in index.nonterminal:
                assert lemma2_beliefs(k - 1, h, survivors, f, k, g, p) == bayes_update(initial, h, g, p)


@pytest.mark.criterion(7, "entry game DCH values, closed-form conditionals and chain rule")
def test_dynamic_entry(trees):
    g = augment_with_levels(fixtures.entry_game(), 3)
    f = poisson_weights(Fraction(3, 2), 3)
    report = run_dch(g, f)
    expected = {(1, 1): ("Out",), (2, 1): ("L",), (1, 2): ("In",), (2, 2): ("L",), (1, 3): ("In",)}
    for key, value in expected.items():
        assert report.final[key] == value
    _closed_form_and_chain_rule(g, f, report)
    for _, tg, tf, dch, _ in trees:
        _closed_form_and_chain_rule(tg, tf, dch)
    _report(7, True)


@pytest.mark.criterion(8, "dynamic subset, tie-free equality and one-stage degeneracy")
def test_dynamic_subset_and_coincidence(trees):
    tie_free = 0
    for seed, g, f, dch, ddk in trees:
        for p in PLAYERS:
            for k in range(1, L + 1):
                assert set(dch.at_step(k)[(p, k)]) <= set(ddk.at_step(k)[(p, k)]), seed
                assert set(dch.final[(p, k)]) <= set(ddk.final[(p, k)]), seed
        if not dch.ties:
            tie_free += 1
            assert dch.final == ddk.final, seed
    assert len(trees) >= 200 and tie_free > 0
    for seed in range(60):
        game = random_static_game(random.Random(seed))
        f = poisson_weights(TAUS[seed % 3], L)
        static, tree = augment_with_levels(game, L), augment_with_levels(MultistageGame.from_static(game), L)
        assert run_dch(tree, f).trace == run_ch(static, f).trace
        assert run_delta_kappa_dynamic(tree, f).trace == run_delta_kappa_static(static, f).trace
    _report(8, True, f"{len(trees)} trees, {tie_free} tie-free")


@pytest.mark.criterion(9, "feasibility verdicts match a Fourier-Motzkin oracle")
def test_oracle_equivalence(ensemble):
    checked = 0
    for seed, game, g, f, _, dk in ensemble[:600]:
        for n, sets in enumerate(dk.trace[:-1]):
            for p in PLAYERS:
                other = opponent(p)
                own, opts = game.actions[p - 1], game.actions[other - 1]
                matrix = g.matrix(p)
                for k in range(1, L + 1):
                    allowed = [sets[(other, t)] for t in range(k)]
                    poly = build_static_belief_polytope(k, allowed, f)
                    if poly.n_free > 3:
                        continue
                    for a in own:
                        expected = fm_supports(k, a, matrix, own, opts, allowed, f.weights)
                        assert bool(supports_action(k, a, poly, g, p)) == expected, (seed, n, p, k, a)
                        assert bool(supports_action(k, a, poly, g, p, presolve=False)) == expected
                        checked += 1
    assert checked > 1000
    _report(9, True, f"{checked} verdicts")
