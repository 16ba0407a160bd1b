"""Equilibrium verification.

Brute-force (alpha, k)-equilibrium checks, the simple-deviation fast path
for graph coordination games, and the polynomial greedy-peeling verifier for
approximate strong equilibria.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .dynamics import (
    Deviation,
    find_improving_deviation,
    find_simple_improving_deviation,
)
from .errors import BudgetExceededError, ParameterError, UnsupportedGameError
from .game_core import (
    GraphCoordinationSpec,
    PolymatrixGame,
    Profile,
    ZERO,
    as_graph_coordination,
    check_profile,
    payoff,
)

DEFAULT_MAX_PROFILES = 200_000
BUDGET_ENV_VAR = "POLYCOORD_MAX_PROFILES"


def resolve_budget(max_profiles: Optional[int]) -> int:
    if max_profiles is not None:
        return max_profiles
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else DEFAULT_MAX_PROFILES


@dataclass
class EquilibriumReport:
    verdict: bool
    witness: Optional[Deviation]
    method: str  # "brute-force" | "simple" | "min-degree"


@dataclass
class DegreeInstance:
    """Weighted graph with per-node thresholds.

    Thresholds may be negative: they arise as alpha*p_u(s) minus the weight
    of already-matching neighbors minus the preference for the target color.
    """

    nodes: tuple[int, ...]
    edges: dict[tuple[int, int], Fraction]
    thresholds: dict[int, Fraction]


def min_degree_maximal_set(inst: DegreeInstance) -> frozenset:
    """Greedy peeling: the unique maximal K where every member's weighted
    degree inside K strictly exceeds its threshold."""
    adjacency = {v: {} for v in inst.nodes}
    for (u, v), w in inst.edges.items():
        adjacency[u][v] = w
        adjacency[v][u] = w
    keep = set(inst.nodes)
    changed = True
    while changed:
        changed = False
        for v in list(keep):
            degree = sum(
                (w for u, w in adjacency[v].items() if u in keep), ZERO
            )
            if not degree > inst.thresholds[v]:
                keep.discard(v)
                changed = True
    return frozenset(keep)


def _verify_witness(game, s, dev: Deviation, alpha):
    s2 = dev.apply(s)
    for i in dev.coalition:
        if s2[i] == s[i]:
            raise AssertionError("witness member does not change strategy")
        if not payoff(game, s2, i) > alpha * payoff(game, s, i):
            raise AssertionError("witness deviation is not improving")


def is_equilibrium(
    game: PolymatrixGame,
    s: Sequence[int],
    alpha: Fraction,
    k: int,
    method: str = "auto",
) -> EquilibriumReport:
    """Decide whether s admits no (alpha, k)-improving deviation.

    method "auto" uses the greedy-peeling verifier for graph coordination
    games with k = n, the simple-deviation search for other graph
    coordination games, and exhaustive coalition enumeration otherwise.
    """
    alpha = Fraction(alpha)
    s = check_profile(game, s)
    if method == "auto":
        if as_graph_coordination(game) is not None:
            if k == game.n:
                return is_alpha_strong_equilibrium_graph(game, s, alpha)
            method = "simple"
        else:
            method = "brute-force"
    if method == "min-degree":
        if k != game.n:
            raise ParameterError("min-degree method requires k = n")
        return is_alpha_strong_equilibrium_graph(game, s, alpha)
    if method == "simple":
        witness = find_simple_improving_deviation(game, s, alpha, k)
    elif method == "brute-force":
        witness = find_improving_deviation(game, s, alpha, k)
    else:
        raise ParameterError(f"unknown method {method!r}")
    if witness is not None:
        _verify_witness(game, s, witness, alpha)
        return EquilibriumReport(False, witness, method)
    return EquilibriumReport(True, None, method)


def degree_instance_for_color(
    game: PolymatrixGame,
    spec: GraphCoordinationSpec,
    s: Profile,
    alpha: Fraction,
    color: str,
) -> DegreeInstance:
    """Peeling instance for one target color.

    Nodes are the players that may choose the color but currently do not;
    the threshold of u is alpha*p_u(s) minus the weight of u's edges whose
    other endpoint already plays the color, minus u's preference for it.
    """
    colors_of = [game.strategies[i][s[i]] for i in range(game.n)]
    nodes = tuple(
        v for v in range(game.n)
        if color in game.strategies[v] and colors_of[v] != color
    )
    node_set = set(nodes)
    edges = {
        (i, j): w
        for (i, j), w in spec.weights.items()
        if i in node_set and j in node_set
    }
    thresholds = {}
    for v in nodes:
        matched = sum(
            (
                w
                for (i, j), w in spec.weights.items()
                if (i == v and colors_of[j] == color)
                or (j == v and colors_of[i] == color)
            ),
            ZERO,
        )
        thresholds[v] = alpha * payoff(game, s, v) - matched - spec.preference(v, color)
    return DegreeInstance(nodes, edges, thresholds)


def is_alpha_strong_equilibrium_graph(
    game: PolymatrixGame,
    s: Sequence[int],
    alpha: Fraction,
) -> EquilibriumReport:
    """Polynomial strong-equilibrium verifier for graph coordination games.

    For every color, peel the nodes that could profitably move to it; the
    profile is an alpha-approximate strong equilibrium iff every color
    yields the empty set.  The witness is the maximal set for the smallest
    color that survives peeling, moving jointly to that color.
    """
    alpha = Fraction(alpha)
    s = check_profile(game, s)
    spec = as_graph_coordination(game)
    if spec is None:
        raise UnsupportedGameError("not a graph coordination game")
    all_colors = sorted({c for cs in spec.colors for c in cs})
    for color in all_colors:
        inst = degree_instance_for_color(game, spec, s, alpha, color)
        winners = min_degree_maximal_set(inst)
        if winners:
            coalition = tuple(sorted(winners))
            new_choice = tuple(game.strategies[i].index(color) for i in coalition)
            before = tuple(payoff(game, s, i) for i in coalition)
            s2 = list(s)
            for i, c in zip(coalition, new_choice):
                s2[i] = c
            after = tuple(payoff(game, tuple(s2), i) for i in coalition)
            witness = Deviation(coalition, new_choice, before, after, alpha)
            _verify_witness(game, s, witness, alpha)
            return EquilibriumReport(False, witness, "min-degree")
    return EquilibriumReport(True, None, "min-degree")


def enumerate_equilibria(
    game: PolymatrixGame,
    alpha: Fraction,
    k: int,
    max_profiles: Optional[int] = None,
    method: str = "auto",
) -> list[Profile]:
    """All (alpha, k)-equilibria in lexicographic profile order."""
    budget = resolve_budget(max_profiles)
    count = game.profile_count()
    if count > budget:
        raise BudgetExceededError(count, budget)
    return [
        s for s in game.profiles()
        if is_equilibrium(game, s, alpha, k, method=method).verdict
    ]
