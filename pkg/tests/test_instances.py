import itertools
from fractions import Fraction

import pytest

from polycoord import (
    Imposition,
    ParameterError,
    enumerate_equilibria,
    from_graph_coordination,
    gen_cycle_counterexample,
    gen_golden_ratio,
    gen_imposition_tight,
    gen_poa_lower,
    gen_private_common,
    gen_spoa_path,
    guaranteed_welfare,
    is_equilibrium,
    payoff,
    reduce_clique,
    reduce_mmm,
    reduce_vertex_cover,
    run_dynamics,
    social_optimum,
    social_welfare,
)
from helpers import (
    graphs_up_to,
    has_clique,
    maximal_matchings,
    min_maximal_matching_size,
    min_vertex_cover_size,
)


def test_private_common_all_private_is_zero_welfare_nash():
    spec = gen_private_common(3, [(0, 1), (1, 2), (0, 2)])
    game = from_graph_coordination(spec)
    all_private = (0, 0, 0)
    assert social_welfare(game, all_private) == 0
    assert is_equilibrium(game, all_private, Fraction(1), 1).verdict
    assert not is_equilibrium(game, all_private, Fraction(1), 3).verdict


def test_cycle_counterexample_structure():
    for m in (3, 4, 5):
        ci = gen_cycle_counterexample(m)
        assert ci.game.n == m + 1
        assert ci.alpha == 2 - Fraction(1, 2 ** (m - 2))
        assert ci.cycle[0] == ci.cycle[-1]
        assert len(ci.schedule) == m + 1
        trace = run_dynamics(
            ci.game, ci.cycle[0], ci.alpha, ci.game.n,
            max_steps=len(ci.schedule) + 1, policy=ci.schedule,
        )
        assert trace.verdict == "cycled"
        assert trace.period == m + 1
        # Every scheduled step is a genuine alpha-improving deviation with the
        # critical member improving by exactly alpha.
        for dev in trace.steps:
            ratios = [
                a / b if b != 0 else None
                for a, b in zip(dev.after, dev.before)
            ]
            finite = [r for r in ratios if r is not None]
            assert min(finite) == ci.alpha
            assert all(a > 0 for a in dev.after)


def test_cycle_counterexample_supporter_payoffs():
    ci = gen_cycle_counterexample(4)
    s_m = ci.cycle[0]
    pays = sorted(payoff(ci.game, s_m, i) for i in range(5))
    assert pays == [0, 2, 4, 8, 14]


def test_cycle_rejects_small_m():
    with pytest.raises(ParameterError):
        gen_cycle_counterexample(2)


def test_golden_ratio_threshold():
    game = from_graph_coordination(gen_golden_ratio(Fraction(8, 5)))
    assert enumerate_equilibria(game, Fraction(3, 2), 2) == []
    assert enumerate_equilibria(game, Fraction(8, 5), 2) != []
    assert enumerate_equilibria(game, Fraction(1), 1) != []


def test_spoa_path_properties():
    spec = gen_spoa_path(Fraction(2))
    game = from_graph_coordination(spec)
    _, sw = social_optimum(game)
    assert sw == 8  # 4a
    middle = (0, 1, 1, 0)  # (a, b, b, c)
    assert is_equilibrium(game, middle, Fraction(2), game.n).verdict
    assert social_welfare(game, middle) == 2


def test_poa_lower_split_profile_is_k_equilibrium():
    spec = gen_poa_lower(5, 3, Fraction(1))
    game = from_graph_coordination(spec)
    split = tuple(0 for _ in range(5))  # clique on a, rest on b
    assert is_equilibrium(game, split, Fraction(1), 3).verdict
    with pytest.raises(ParameterError):
        gen_poa_lower(5, 5, Fraction(1))


def test_imposition_tight_guarantee():
    for k in (1, 2):
        game = from_graph_coordination(gen_imposition_tight(k))
        n = 2 * k + 1
        opt, sw = social_optimum(game)
        assert sw == 2 * n * k
        imp = Imposition(
            tuple(range(k)), tuple(opt[i] for i in range(k)), "chosen-by-topk"
        )
        assert guaranteed_welfare(game, imp) == 2 * k * k


def test_clique_reduction_iff_for_small_graphs():
    for n, edges in graphs_up_to(4):
        for k in (2, 3):
            if k > n:
                continue
            spec, profile = reduce_clique(n, edges, k, Fraction(1))
            game = from_graph_coordination(spec)
            eq = is_equilibrium(game, profile, Fraction(1), k).verdict
            assert eq == (not has_clique(n, edges, k))


def test_mmm_reduction_small_cases():
    # Single edge: minimum maximal matching has size 1.
    assert min_maximal_matching_size(2, [(0, 1)]) == 1
    game0 = from_graph_coordination(reduce_mmm(2, [(0, 1)], 0))
    assert enumerate_equilibria(game0, Fraction(1), 2) == []
    game1 = from_graph_coordination(reduce_mmm(2, [(0, 1)], 1))
    assert enumerate_equilibria(game1, Fraction(1), 2) != []


def test_maximal_matching_oracle():
    # Path on 4 nodes: middle edge alone is maximal.
    assert min_maximal_matching_size(4, [(0, 1), (1, 2), (2, 3)]) == 1
    # Two disjoint edges: both are needed.
    assert min_maximal_matching_size(4, [(0, 1), (2, 3)]) == 2
    assert frozenset({(1, 2)}) in maximal_matchings(4, [(0, 1), (1, 2), (2, 3)])


def test_vertex_cover_reduction_target():
    spec, target = reduce_vertex_cover(3, [(0, 1), (1, 2), (0, 2)])
    assert target == 6
    game = from_graph_coordination(spec)
    _, sw = social_optimum(game)
    assert sw == target
    assert min_vertex_cover_size(3, [(0, 1), (1, 2), (0, 2)]) == 2


def test_vertex_cover_imposition_matches_cover():
    # Fixing the cover endpoints to their own colors guarantees the target.
    n, edges = 3, [(0, 1), (1, 2), (0, 2)]
    spec, target = reduce_vertex_cover(n, edges)
    game = from_graph_coordination(spec)
    cover = (0, 1)
    imp = Imposition(cover, tuple(0 for _ in cover))  # color c_v for each
    assert guaranteed_welfare(game, imp) >= target
