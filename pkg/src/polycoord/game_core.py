"""Polymatrix coordination games with individual preferences.

Core representation, payoff/welfare evaluation, the exact potential and the
graph-coordination specialization (edge payoff equal to the edge weight iff
both endpoints pick the same color).

All numeric quantities are exact rationals (`fractions.Fraction`); no floats
enter the core anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .errors import GameValidationError

# A joint strategy: one strategy index per player.
Profile = tuple[int, ...]
# A coalition: sorted tuple of distinct player ids.
Coalition = tuple[int, ...]

ZERO = Fraction(0)


def edge_key(i: int, j: int) -> tuple[int, int]:
    """Canonical (low, high) key for an undirected edge."""
    if i == j:
        raise GameValidationError(f"self-loop on player {i}")
    return (i, j) if i < j else (j, i)


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise GameValidationError("floats are not allowed in game data")
    return Fraction(x)


@dataclass
class PolymatrixGame:
    """A polymatrix coordination game w.i.p.

    strategies[i] holds the strategy names of player i (names are metadata;
    all operations work on indices).  preferences[i][a] is the individual
    preference of player i for his a-th strategy.  tables maps a canonical
    edge (i, j) with i < j to a |S_i| x |S_j| payoff table; the single table
    is read symmetrically by both endpoints.

    Treat instances as immutable after construction.
    """

    strategies: tuple[tuple[str, ...], ...]
    preferences: tuple[tuple[Fraction, ...], ...]
    tables: dict[tuple[int, int], tuple[tuple[Fraction, ...], ...]]
    _neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        adj: list[list[int]] = [[] for _ in self.strategies]
        for (i, j) in self.tables:
            adj[i].append(j)
            adj[j].append(i)
        self._neighbors = tuple(tuple(sorted(a)) for a in adj)

    @property
    def n(self) -> int:
        return len(self.strategies)

    def num_strategies(self, i: int) -> int:
        return len(self.strategies[i])

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._neighbors[i]

    def edge_payoff(self, i: int, j: int, si: int, sj: int) -> Fraction:
        """Payoff both i and j receive on edge {i, j} under (si, sj)."""
        if i < j:
            return self.tables[(i, j)][si][sj]
        return self.tables[(j, i)][sj][si]

    def profile_count(self) -> int:
        count = 1
        for names in self.strategies:
            count *= len(names)
        return count

    def profiles(self) -> Iterable[Profile]:
        """All joint strategies in lexicographic order."""
        import itertools

        return itertools.product(*(range(len(s)) for s in self.strategies))

    @classmethod
    def build(cls, strategies, preferences=None, tables=None) -> "PolymatrixGame":
        """Normalize raw input (ints, strings, nested lists) into a game."""
        strats = tuple(tuple(names) for names in strategies)
        n = len(strats)
        if preferences is None:
            prefs = tuple(tuple(ZERO for _ in names) for names in strats)
        else:
            prefs = tuple(
                tuple(_as_fraction(q) for q in player_prefs)
                for player_prefs in preferences
            )
        if isinstance(tables, Mapping):
            edge_items = [(i, j, t) for (i, j), t in tables.items()]
        else:
            edge_items = list(tables or [])
        tabs: dict[tuple[int, int], tuple[tuple[Fraction, ...], ...]] = {}
        for i, j, table in edge_items:
            if not (0 <= i < n and 0 <= j < n):
                raise GameValidationError(f"edge ({i},{j}) references unknown player")
            key = edge_key(i, j)
            if key in tabs:
                raise GameValidationError(f"duplicate edge {key}")
            rows = tuple(tuple(_as_fraction(q) for q in row) for row in table)
            if key != (i, j):
                rows = tuple(zip(*rows))  # given as (j, i): transpose
            tabs[key] = rows
        game = cls(strats, prefs, tabs)
        problems = validate(game)
        if problems:
            raise GameValidationError("; ".join(problems))
        return game


@dataclass
class GraphCoordinationSpec:
    """A graph coordination game: colors per node, weights per edge.

    preferences[i] maps a color name to its individual preference; colors
    absent from the map have preference 0.
    """

    colors: tuple[tuple[str, ...], ...]
    weights: dict[tuple[int, int], Fraction]
    preferences: tuple[dict[str, Fraction], ...] = None

    def __post_init__(self):
        self.colors = tuple(tuple(c) for c in self.colors)
        self.weights = {
            edge_key(i, j): _as_fraction(w) for (i, j), w in self.weights.items()
        }
        if self.preferences is None:
            self.preferences = tuple({} for _ in self.colors)
        else:
            self.preferences = tuple(
                {c: _as_fraction(q) for c, q in p.items()} for p in self.preferences
            )

    @property
    def n(self) -> int:
        return len(self.colors)

    def preference(self, i: int, color: str) -> Fraction:
        return self.preferences[i].get(color, ZERO)


def check_profile(game: PolymatrixGame, s: Sequence[int]) -> Profile:
    """Validate a joint strategy against the game; returns it as a tuple."""
    if len(s) != game.n:
        raise GameValidationError(
            f"profile has {len(s)} entries for {game.n} players"
        )
    for i, si in enumerate(s):
        if not (0 <= si < game.num_strategies(i)):
            raise GameValidationError(f"strategy index {si} invalid for player {i}")
    return tuple(s)


def make_coalition(members: Iterable[int], n: int) -> Coalition:
    """Canonical (sorted, duplicate-free, validated) coalition."""
    k = tuple(sorted(set(members)))
    if not k:
        raise GameValidationError("coalition must be non-empty")
    if k[0] < 0 or k[-1] >= n:
        raise GameValidationError(f"coalition {k} has invalid player ids")
    return k


def payoff(game: PolymatrixGame, s: Sequence[int], i: int) -> Fraction:
    """Overall payoff of player i: own preference plus all edge payoffs."""
    s = check_profile(game, s)
    if not (0 <= i < game.n):
        raise GameValidationError(f"invalid player id {i}")
    total = game.preferences[i][s[i]]
    for j in game.neighbors(i):
        total += game.edge_payoff(i, j, s[i], s[j])
    return total


def social_welfare(game: PolymatrixGame, s: Sequence[int]) -> Fraction:
    """Sum of all players' payoffs (each edge counted twice)."""
    s = check_profile(game, s)
    total = ZERO
    for i in range(game.n):
        total += game.preferences[i][s[i]]
    for (i, j), table in game.tables.items():
        total += 2 * table[s[i]][s[j]]
    return total


def social_welfare_coalition(
    game: PolymatrixGame, s: Sequence[int], coalition: Iterable[int]
) -> Fraction:
    """Sum of payoffs over coalition members only."""
    s = check_profile(game, s)
    members = make_coalition(coalition, game.n)
    return sum((payoff(game, s, i) for i in members), ZERO)


def exact_potential(game: PolymatrixGame, s: Sequence[int]) -> Fraction:
    """Exact potential: preferences plus each edge payoff counted once."""
    s = check_profile(game, s)
    total = ZERO
    for i in range(game.n):
        total += game.preferences[i][s[i]]
    for (i, j), table in game.tables.items():
        total += table[s[i]][s[j]]
    return total


def from_graph_coordination(spec: GraphCoordinationSpec) -> PolymatrixGame:
    """Expand a graph coordination spec into its polymatrix form."""
    tables = {}
    for (i, j), w in spec.weights.items():
        tables[(i, j)] = tuple(
            tuple(w if ci == cj else ZERO for cj in spec.colors[j])
            for ci in spec.colors[i]
        )
    preferences = tuple(
        tuple(spec.preference(i, c) for c in spec.colors[i]) for i in range(spec.n)
    )
    return PolymatrixGame.build(spec.colors, preferences, tables)


def as_graph_coordination(game: PolymatrixGame) -> Optional[GraphCoordinationSpec]:
    """Recognize a polymatrix game as a graph coordination game.

    Succeeds iff every edge table pays a single common weight exactly on
    pairs of equal strategy names and zero elsewhere.  Returns None when the
    game is not of this shape.  The result is cached on the game object.
    """
    cached = getattr(game, "_graph_coordination_cache", False)
    if cached is not False:
        return cached
    result = _recognize_graph_coordination(game)
    game._graph_coordination_cache = result
    return result


def _recognize_graph_coordination(game):
    weights: dict[tuple[int, int], Fraction] = {}
    for (i, j), table in game.tables.items():
        weight = None
        shared = False
        for a, ci in enumerate(game.strategies[i]):
            for b, cj in enumerate(game.strategies[j]):
                q = table[a][b]
                if ci == cj:
                    shared = True
                    if weight is None:
                        weight = q
                    elif q != weight:
                        return None
                elif q != ZERO:
                    return None
        # An edge with disjoint color sets carries an all-zero table; any
        # weight is consistent with it, record 0.
        weights[(i, j)] = weight if shared and weight is not None else ZERO
    preferences = tuple(
        {c: q for c, q in zip(game.strategies[i], game.preferences[i]) if q != ZERO}
        for i in range(game.n)
    )
    return GraphCoordinationSpec(game.strategies, weights, preferences)


def validate(game: PolymatrixGame) -> list[str]:
    """Return all violated invariants; an empty list means well-formed."""
    problems = []
    n = game.n
    for i, names in enumerate(game.strategies):
        if not names:
            problems.append(f"player {i} has an empty strategy set")
        if len(game.preferences[i]) != len(names):
            problems.append(f"player {i} preference vector has wrong length")
        for q in game.preferences[i]:
            if q < 0:
                problems.append(f"negative preference for player {i}")
                break
    for (i, j), table in game.tables.items():
        if i >= j or i < 0 or j >= n:
            problems.append(f"edge ({i},{j}) is not canonical")
            continue
        if len(table) != game.num_strategies(i) or any(
            len(row) != game.num_strategies(j) for row in table
        ):
            problems.append(f"edge ({i},{j}) table has wrong dimensions")
            continue
        if any(q < 0 for row in table for q in row):
            problems.append(f"negative payoff on edge ({i},{j})")
    return problems
