import random
from fractions import Fraction

import pytest

from polycoord import (
    ParameterError,
    UnsupportedGameError,
    exact_potential,
    find_improving_deviation,
    find_simple_improving_deviation,
    from_graph_coordination,
    payoff,
    run_dynamics,
    social_welfare,
)
from helpers import rand_graph_spec, rand_polymatrix
from test_game_core import fig4_spec


def test_singleton_improvement_found_first_on_path():
    game = from_graph_coordination(fig4_spec())
    s = (0, 1, 0, 0)  # (a, b, b, c)
    dev = find_improving_deviation(game, s, Fraction(1), 2)
    # v1 alone switching to a goes from payoff 1 to 2 and comes first in
    # canonical order ({v2} -> c would improve as well).
    assert dev.coalition == (1,)
    assert dev.new_choice == (0,)
    assert dev.before == (Fraction(1),)
    assert dev.after == (Fraction(2),)


def test_no_deviation_at_optimum():
    game = from_graph_coordination(fig4_spec())
    assert find_improving_deviation(game, (0, 0, 1, 0), Fraction(1), 4) is None


def test_improvement_is_strict_and_every_member_changes():
    rng = random.Random(5)
    for _ in range(40):
        game = rand_polymatrix(rng, n_max=4)
        profiles = list(game.profiles())
        s = profiles[rng.randrange(len(profiles))]
        alpha = Fraction(rng.randint(1, 2))
        k = rng.randint(1, game.n)
        dev = find_improving_deviation(game, s, alpha, k)
        if dev is None:
            continue
        s2 = dev.apply(s)
        for i, c in zip(dev.coalition, dev.new_choice):
            assert s[i] != c
            assert payoff(game, s2, i) > alpha * payoff(game, s, i)


def test_simple_search_agrees_with_general_search():
    # Existence of simple deviations is equivalent to existence of general
    # ones on graph coordination games, for every coalition bound.
    rng = random.Random(17)
    for _ in range(60):
        spec = rand_graph_spec(rng, n_max=5, colors_max=2)
        game = from_graph_coordination(spec)
        profiles = list(game.profiles())
        s = profiles[rng.randrange(len(profiles))]
        alpha = Fraction(rng.choice([1, 2]))
        k = rng.randint(1, game.n)
        general = find_improving_deviation(game, s, alpha, k)
        simple = find_simple_improving_deviation(game, s, alpha, k)
        assert (general is None) == (simple is None)


def test_simple_search_requires_graph_coordination():
    game = rand_polymatrix(random.Random(1), n_max=3)
    with pytest.raises(UnsupportedGameError):
        find_simple_improving_deviation(game, next(iter(game.profiles())), 1, 1)


def test_dynamics_converges_and_potential_increases_alpha1_k1():
    rng = random.Random(23)
    for _ in range(25):
        game = rand_polymatrix(rng, n_max=4)
        s0 = next(iter(game.profiles()))
        trace = run_dynamics(game, s0, Fraction(1), 1, max_steps=game.profile_count())
        assert trace.verdict == "converged"
        for a, b in zip(trace.potentials, trace.potentials[1:]):
            assert b > a
        final = trace.states[-1]
        assert find_improving_deviation(game, final, Fraction(1), 1) is None


def test_best_welfare_policy_picks_largest_gain():
    game = from_graph_coordination(fig4_spec())
    s = (0, 1, 0, 0)
    dev = find_improving_deviation(game, s, Fraction(1), 4, policy="best-welfare")
    gain = social_welfare(game, dev.apply(s)) - social_welfare(game, s)
    assert gain == 6  # jump straight to the optimum (a, a, c, c)


def test_schedule_replay_records_exact_ratios():
    game = from_graph_coordination(fig4_spec())
    s = (0, 1, 0, 0)
    schedule = [((1, 2), (0, 1))]  # v1 -> a, v2 -> c
    trace = run_dynamics(game, s, Fraction(1), 2, max_steps=5, policy=schedule)
    assert trace.states[-1] == (0, 0, 1, 0)
    assert trace.welfares == [Fraction(2), Fraction(8)]
    assert trace.verdict == "budget-exhausted"  # schedule ran out, no repeat


def test_schedule_step_must_change_strategy():
    game = from_graph_coordination(fig4_spec())
    with pytest.raises(ParameterError):
        run_dynamics(game, (0, 0, 0, 0), 1, 1, max_steps=3, policy=[((1,), (0,))])


def test_bad_parameters_rejected():
    game = from_graph_coordination(fig4_spec())
    with pytest.raises(ParameterError):
        find_improving_deviation(game, (0, 0, 0, 0), Fraction(1, 2), 1)
    with pytest.raises(ParameterError):
        find_improving_deviation(game, (0, 0, 0, 0), 1, 0)
    with pytest.raises(ParameterError):
        find_improving_deviation(game, (0, 0, 0, 0), 1, 1, policy="nope")
