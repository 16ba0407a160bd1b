"""Deterministic generators for the named constructions.

Counterexamples, bound-tight families, and the hardness-reduction gadgets.
Reductions take plain (n, edges) graphs; all outputs are reproducible
byte-for-byte for identical inputs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ParameterError
from .game_core import (
    GraphCoordinationSpec,
    PolymatrixGame,
    Profile,
    ZERO,
    edge_key,
)

Edges = Sequence[tuple[int, int]]


def _canonical_edges(n: int, edges: Edges):
    out = sorted({edge_key(u, v) for u, v in edges})
    for u, v in out:
        if not (0 <= u < n and 0 <= v < n):
            raise ParameterError(f"edge ({u},{v}) outside 0..{n - 1}")
    return out


def gen_private_common(n: int, edges: Edges) -> GraphCoordinationSpec:
    """Unit-weight graph where every node picks its private color or the
    common one; all-private is a welfare-zero Nash equilibrium."""
    edges = _canonical_edges(n, edges)
    colors = tuple((f"c{v}", "c") for v in range(n))
    weights = {e: Fraction(1) for e in edges}
    return GraphCoordinationSpec(colors, weights)


@dataclass
class CycleInstance:
    """A game with a closed schedule of coalition deviations.

    cycle[0] == cycle[-1]; schedule[t] moves cycle[t] to cycle[t + 1].
    Every scheduled step improves each member by a factor of at least
    alpha, with the critical member improving by exactly alpha.
    """

    game: PolymatrixGame
    cycle: list[Profile]
    schedule: list[tuple[tuple[int, ...], tuple[int, ...]]]
    alpha: Fraction


def gen_cycle_counterexample(m: int) -> CycleInstance:
    """Support game with a cycle of coalition deviations for
    alpha = 2 - 1/2^(m-2).

    m + 1 players, each choosing a player to support; mutual support of j by
    the pair {i, j} pays 2^(((i - j) mod (m+1)) - 1) to both.  The schedule
    rotates the supported player, the coalition each time being everyone but
    the player who keeps his strategy.
    """
    if m < 3:
        raise ParameterError("m must be >= 3")
    n_players = m + 1
    names = tuple(str(p) for p in range(n_players))

    def pay(i, j, target):
        # payoff when i and j both support `target` (target in {i, j})
        lo, hi = (i, j) if target == j else (j, i)
        return Fraction(2) ** (((lo - hi) % n_players) - 1)

    tables = {}
    for i, j in itertools.combinations(range(n_players), 2):
        tables[(i, j)] = [
            [
                pay(i, j, j) if ci == cj == j
                else pay(i, j, i) if ci == cj == i
                else ZERO
                for cj in range(n_players)
            ]
            for ci in range(n_players)
        ]
    game = PolymatrixGame.build([names] * n_players, tables=tables)

    def profile(t: int) -> Profile:
        hub = t % n_players
        selfish = (t + 1) % n_players
        return tuple(
            selfish if p == selfish else hub for p in range(n_players)
        )

    cycle = [profile(t) for t in range(m, -2, -1)]  # s^m down to s^(-1) == s^m
    schedule = []
    for step, t in enumerate(range(m, -1, -1)):
        here, there = cycle[step], cycle[step + 1]
        coalition = tuple(p for p in range(n_players) if here[p] != there[p])
        schedule.append((coalition, tuple(there[p] for p in coalition)))
    alpha = 2 - Fraction(1, 2 ** (m - 2))
    return CycleInstance(game, cycle, schedule, alpha)


def gen_golden_ratio(w: Fraction) -> GraphCoordinationSpec:
    """Pseudotree (triangle with pendant leaves) without 2-equilibria.

    The triangle edges carry weight w, the pendants weight 1.  No
    (alpha, 2)-equilibrium exists for alpha < min(w, (1+w)/w); choosing w
    near the golden ratio pushes the threshold toward it.
    """
    w = Fraction(w)
    if not w > 1:
        raise ParameterError("w must be > 1")
    colors = (
        ("x", "z"),  # v0
        ("x", "y"),  # v1
        ("y", "z"),  # v2
        ("y",),      # u1, pendant of v1
        ("z",),      # u2, pendant of v2
        ("x",),      # u3, pendant of v0
    )
    one = Fraction(1)
    weights = {
        (0, 1): w,
        (0, 2): w,
        (1, 2): w,
        (1, 3): one,
        (2, 4): one,
        (0, 5): one,
    }
    return GraphCoordinationSpec(colors, weights)


def gen_spoa_path(a: Fraction) -> GraphCoordinationSpec:
    """4-node path with weights (a, 1, a) whose middle profile (b, b) is an
    a-approximate strong equilibrium of welfare 2 against optimum 4a."""
    a = Fraction(a)
    if a < 1:
        raise ParameterError("a must be >= 1")
    colors = (("a",), ("a", "b"), ("c", "b"), ("c",))
    weights = {(0, 1): a, (1, 2): Fraction(1), (2, 3): a}
    return GraphCoordinationSpec(colors, weights)


def gen_poa_lower(n: int, k: int, a: Fraction) -> GraphCoordinationSpec:
    """Lower-bound family: a k-clique of weight-1 edges joined completely to
    the rest by weight-a edges; the split profile is a k-equilibrium."""
    a = Fraction(a)
    if not (1 <= k < n):
        raise ParameterError("need 1 <= k < n (the family degenerates at k = n)")
    if a < 1:
        raise ParameterError("a must be >= 1")
    colors = tuple(
        ("a", "c") if v < k else ("b", "c") for v in range(n)
    )
    weights = {}
    for u, v in itertools.combinations(range(k), 2):
        weights[(u, v)] = Fraction(1)
    for u in range(k):
        for v in range(k, n):
            weights[(u, v)] = a
    return GraphCoordinationSpec(colors, weights)


def gen_imposition_tight(k: int) -> GraphCoordinationSpec:
    """Complete graph on 2k+1 nodes, unit weights, two shared colors."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    n = 2 * k + 1
    colors = tuple(("a", "b") for _ in range(n))
    weights = {
        (u, v): Fraction(1) for u, v in itertools.combinations(range(n), 2)
    }
    return GraphCoordinationSpec(colors, weights)


def reduce_clique(
    n: int, edges: Edges, k: int, alpha: Fraction
) -> tuple[GraphCoordinationSpec, Profile]:
    """Clique-complement reduction.

    Every original node chooses between a private color and a shared one;
    pendant anchors of weight k-2 hold the private choice.  The all-private
    profile is an (alpha, k)-equilibrium iff the graph has no k-clique.
    Zero-weight pendants (k = 2) are elided.
    """
    alpha = Fraction(alpha)
    if k < 2:
        raise ParameterError("k must be >= 2")
    if alpha < 1:
        raise ParameterError("alpha must be >= 1")
    edges = _canonical_edges(n, edges)
    colors = [(f"x{v}", "y") for v in range(n)]
    weights = {e: alpha for e in edges}
    pendant_weight = Fraction(k - 2)
    if pendant_weight > 0:
        for v in range(n):
            pendant = len(colors)
            colors.append((f"x{v}",))
            weights[(v, pendant)] = pendant_weight
    spec = GraphCoordinationSpec(tuple(colors), weights)
    profile = tuple(0 for _ in colors)  # everyone on the private color
    return spec, profile


def reduce_mmm(n: int, edges: Edges, l: int) -> GraphCoordinationSpec:
    """Minimum-maximal-matching reduction.

    Adds n-2l four-node gadgets, each wired to every original node by
    weight-3 edges; original nodes choose a gadget color or a color naming
    an incident edge (edges weigh 4, so unicolor original edges form a
    matching).  A 2-equilibrium exists iff the graph has a maximal matching
    of size at most l.
    """
    if l < 0:
        raise ParameterError("l must be >= 0")
    edges = _canonical_edges(n, edges)
    gadget_count = max(n - 2 * l, 0)
    colors = []
    for v in range(n):
        own = [f"x{v}g{i}" for i in range(gadget_count)]
        own += [f"y{u}_{w}" for (u, w) in edges if v in (u, w)]
        if not own:
            own = [f"p{v}"]  # isolated node with no gadgets: private filler
        colors.append(tuple(own))
    weights = {e: Fraction(4) for e in edges}
    two, three, four = Fraction(2), Fraction(3), Fraction(4)
    for i in range(gadget_count):
        v0 = len(colors)
        colors.append(tuple(["a", "c"] + [f"x{v}g{i}" for v in range(n)]))
        v1 = len(colors)
        colors.append(("a", "b"))
        v2 = len(colors)
        colors.append(("b", "c"))
        u = len(colors)
        colors.append(("b",))
        weights[(v0, v1)] = four
        weights[(v0, v2)] = three
        weights[(v1, v2)] = two
        weights[(v1, u)] = three
        for v in range(n):
            weights[(v, v0)] = three
    return GraphCoordinationSpec(tuple(colors), weights)


def reduce_vertex_cover(
    n: int, edges: Edges
) -> tuple[GraphCoordinationSpec, Fraction]:
    """Vertex-cover reduction for the strategy-imposition problem.

    Each edge is subdivided by a connector node that can side with either
    endpoint or stay private; an imposition of size k guaranteeing the
    returned target welfare 2|E| exists iff the graph has a size-k vertex
    cover.
    """
    edges = _canonical_edges(n, edges)
    colors = [(f"c{v}", f"p{v}") for v in range(n)]
    weights = {}
    for (u, v) in edges:
        mid = len(colors)
        colors.append((f"c{u}", f"c{v}", "p"))
        weights[(u, mid)] = Fraction(1)
        weights[(v, mid)] = Fraction(1)
    return GraphCoordinationSpec(tuple(colors), weights), Fraction(2 * len(edges))
