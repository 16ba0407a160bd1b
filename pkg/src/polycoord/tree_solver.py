"""Strong equilibria of graph coordination games on forests.

Computed through the sequential-move correspondence: fix a root, solve the
sequential game by backwards induction, and read off the implemented
profile.  On trees that profile is a strong equilibrium.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import StructureError
from .game_core import (
    GraphCoordinationSpec,
    PolymatrixGame,
    Profile,
    ZERO,
    from_graph_coordination,
)
from .verification import is_alpha_strong_equilibrium_graph, is_equilibrium


def _adjacency(spec: GraphCoordinationSpec):
    adj = {i: [] for i in range(spec.n)}
    for (i, j) in spec.weights:
        adj[i].append(j)
        adj[j].append(i)
    return adj


def _components(spec: GraphCoordinationSpec):
    adj = _adjacency(spec)
    seen = set()
    comps = []
    for start in range(spec.n):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        frontier = [start]
        while frontier:
            u = frontier.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    comp.append(v)
                    frontier.append(v)
        comps.append(sorted(comp))
    return comps


def check_forest(spec: GraphCoordinationSpec):
    """Raise StructureError unless the underlying graph is a forest."""
    comps = _components(spec)
    n_edges = len(spec.weights)
    if n_edges != spec.n - len(comps):
        raise StructureError("underlying graph contains a cycle")
    return comps


def eliminate_preferences(spec: GraphCoordinationSpec):
    """Replace individual preferences by pendant dummy nodes.

    Each positive preference q^i(x) becomes a leaf with singleton color set
    {x} attached to i by an edge of weight q^i(x); zero-weight leaves are
    elided.  Returns the new spec and a map dummy id -> (player, color).
    """
    colors = list(spec.colors)
    weights = dict(spec.weights)
    dummy_map = {}
    for i in range(spec.n):
        for x in spec.colors[i]:
            q = spec.preference(i, x)
            if q > 0:
                dummy = len(colors)
                colors.append((x,))
                weights[(i, dummy)] = q
                dummy_map[dummy] = (i, x)
    stripped = GraphCoordinationSpec(tuple(colors), weights)
    return stripped, dummy_map


@dataclass
class SpeTable:
    """Backwards-induction table for a rooted tree.

    best[(v, x)] is v's chosen color when the parent plays x (x is None for
    the root); value[(v, x)] is v's own sequential payoff under that choice.
    """

    root: int
    parent: dict[int, Optional[int]]
    children: dict[int, list[int]]
    best: dict[tuple[int, Optional[str]], str]
    value: dict[tuple[int, Optional[str]], Fraction]


def subgame_perfect_strategy(
    spec: GraphCoordinationSpec, root: int
) -> SpeTable:
    """Backwards induction on a connected tree.

    Bottom-up, v's response to a parent color x maximizes the parent-edge
    match, the subtree matches of children responding to v, and v's own
    preference; ties break toward the smallest color index.
    """
    comps = check_forest(spec)
    comp = next((c for c in comps if root in c), None)
    if comp is None:
        raise StructureError(f"invalid root {root}")
    if len(comp) != spec.n:
        raise StructureError("graph is not connected; solve per component")

    adj = _adjacency(spec)
    parent: dict[int, Optional[int]] = {root: None}
    children: dict[int, list[int]] = {v: [] for v in range(spec.n)}
    order = [root]
    for u in order:
        for v in sorted(adj[u]):
            if v not in parent:
                parent[v] = u
                children[u].append(v)
                order.append(v)

    def weight(u, v):
        return spec.weights[(u, v) if u < v else (v, u)]

    best: dict[tuple[int, Optional[str]], str] = {}
    value: dict[tuple[int, Optional[str]], Fraction] = {}
    for v in reversed(order):
        p = parent[v]
        parent_colors = spec.colors[p] if p is not None else (None,)
        for x in parent_colors:
            best_color, best_value = None, None
            for y in spec.colors[v]:
                val = spec.preference(v, y)
                if p is not None and y == x:
                    val += weight(p, v)
                for c in children[v]:
                    if best[(c, y)] == y:
                        val += weight(v, c)
                if best_value is None or val > best_value:
                    best_color, best_value = y, val
            best[(v, x)] = best_color
            value[(v, x)] = best_value
    return SpeTable(root, parent, children, best, value)


def implemented_profile(spec: GraphCoordinationSpec, table: SpeTable):
    """Unroll the table top-down into the implemented color per node."""
    chosen: dict[int, str] = {}
    chosen[table.root] = table.best[(table.root, None)]
    stack = [table.root]
    while stack:
        v = stack.pop()
        for c in table.children[v]:
            chosen[c] = table.best[(c, chosen[v])]
            stack.append(c)
    return chosen


def strong_equilibrium_tree(spec: GraphCoordinationSpec) -> Profile:
    """Strong equilibrium of a graph coordination game on a forest.

    Eliminates preferences, solves each component by backwards induction
    rooted at its smallest node, projects the dummy nodes out, and verifies
    the result with the polynomial strong-equilibrium check before
    returning.
    """
    check_forest(spec)
    stripped, _dummy_map = eliminate_preferences(spec)
    chosen: dict[int, str] = {}
    for comp in _components(stripped):
        sub_ids = comp
        id_map = {old: new for new, old in enumerate(sub_ids)}
        sub = GraphCoordinationSpec(
            tuple(stripped.colors[v] for v in sub_ids),
            {
                (id_map[i], id_map[j]): w
                for (i, j), w in stripped.weights.items()
                if i in id_map and j in id_map
            },
        )
        table = subgame_perfect_strategy(sub, id_map[min(sub_ids)])
        for v, color in implemented_profile(sub, table).items():
            chosen[sub_ids[v]] = color

    profile = tuple(spec.colors[v].index(chosen[v]) for v in range(spec.n))
    game = from_graph_coordination(spec)
    report = is_alpha_strong_equilibrium_graph(game, profile, Fraction(1))
    if not report.verdict:
        raise AssertionError(
            "backwards-induction profile failed the strong-equilibrium check; "
            "this indicates an implementation bug"
        )
    return profile


def gen_seq_counterexample():
    """Two-player polymatrix game where the sequential-move profile is not
    even a Nash equilibrium.

    Both players choose between coordinating ("c") and playing selfishly
    ("s"); coordinating pays 4 jointly, but each player has a selfish
    preference of 3 and the off-diagonal (s, c) still pays 2.
    Returns (game, implemented_profile).
    """
    four, three, two = Fraction(4), Fraction(3), Fraction(2)
    game = PolymatrixGame.build(
        strategies=[("c", "s"), ("c", "s")],
        preferences=[(ZERO, three), (ZERO, three)],
        tables={(0, 1): [[four, ZERO], [two, ZERO]]},
    )
    implemented = (0, 0)  # both coordinate under the unique SPE
    report = is_equilibrium(game, implemented, Fraction(1), 1)
    if report.verdict:
        raise AssertionError("expected the SPE profile to fail the Nash check")
    return game, implemented
