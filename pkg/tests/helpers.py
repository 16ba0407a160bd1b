"""Shared test utilities: random instance generators and independent
brute-force oracles that the library implementations are checked against."""
from __future__ import annotations

import itertools
from fractions import Fraction

from polycoord import GraphCoordinationSpec, PolymatrixGame


def rand_fraction(rng, max_num=6, max_den=4, allow_zero=True):
    num = rng.randint(0 if allow_zero else 1, max_num)
    den = rng.randint(1, max_den)
    return Fraction(num, den)


def rand_polymatrix(rng, n_max=6, s_max=3, edge_prob=0.6) -> PolymatrixGame:
    n = rng.randint(2, n_max)
    strategies = [
        tuple(f"s{a}" for a in range(rng.randint(1, s_max))) for _ in range(n)
    ]
    preferences = [
        tuple(rand_fraction(rng) for _ in names) for names in strategies
    ]
    tables = {}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < edge_prob:
            tables[(i, j)] = [
                [rand_fraction(rng) for _ in strategies[j]] for _ in strategies[i]
            ]
    return PolymatrixGame.build(strategies, preferences, tables)


def rand_graph_spec(
    rng, n_max=7, colors_max=3, palette=("a", "b", "c", "d"), edge_prob=0.6,
    with_prefs=True,
) -> GraphCoordinationSpec:
    n = rng.randint(2, n_max)
    colors = []
    for _ in range(n):
        size = rng.randint(1, colors_max)
        colors.append(tuple(sorted(rng.sample(palette, size))))
    weights = {}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < edge_prob:
            weights[(i, j)] = rand_fraction(rng, allow_zero=False)
    preferences = None
    if with_prefs:
        preferences = tuple(
            {
                c: rand_fraction(rng, allow_zero=False)
                for c in cs
                if rng.random() < 0.4
            }
            for cs in colors
        )
    return GraphCoordinationSpec(tuple(colors), weights, preferences)


def rand_forest_spec(rng, n_max=10, colors_max=3, palette=("a", "b", "c")):
    n = rng.randint(2, n_max)
    colors = []
    for _ in range(n):
        size = rng.randint(1, colors_max)
        colors.append(tuple(sorted(rng.sample(palette, size))))
    weights = {}
    for v in range(1, n):
        if rng.random() < 0.85:  # else v starts a new component
            u = rng.randrange(v)
            weights[(u, v)] = rand_fraction(rng, allow_zero=False)
    preferences = tuple(
        {c: rand_fraction(rng, allow_zero=False) for c in cs if rng.random() < 0.4}
        for cs in colors
    )
    return GraphCoordinationSpec(tuple(colors), weights, preferences)


def rand_weighted_graph(rng, n_max=12):
    """(nodes, edges, thresholds) for degree-peeling tests."""
    n = rng.randint(1, n_max)
    nodes = tuple(range(n))
    edges = {}
    for i, j in itertools.combinations(range(n), 2):
        if rng.random() < 0.5:
            edges[(i, j)] = rand_fraction(rng, allow_zero=False)
    thresholds = {
        v: rand_fraction(rng, max_num=8) - rng.randint(0, 2) for v in nodes
    }
    return nodes, edges, thresholds


def brute_min_degree(nodes, edges, thresholds) -> frozenset:
    """Union of every subset in which all members have in-degree strictly
    above threshold (the union of feasible sets is itself feasible)."""
    adjacency = {v: {} for v in nodes}
    for (u, v), w in edges.items():
        adjacency[u][v] = w
        adjacency[v][u] = w

    def feasible(subset):
        return all(
            sum((w for u, w in adjacency[v].items() if u in subset), Fraction(0))
            > thresholds[v]
            for v in subset
        )

    best = set()
    for size in range(len(nodes), 0, -1):
        for subset in itertools.combinations(nodes, size):
            if feasible(frozenset(subset)):
                best.update(subset)
    # The union of feasible sets is feasible, so `best` is the maximal one.
    assert feasible(best)
    return frozenset(best)


def nonisomorphic_graphs(n: int) -> list[list[tuple[int, int]]]:
    """All graphs on exactly n nodes up to isomorphism, as edge lists.

    Built by extending each (n-1)-node representative with every possible
    neighborhood of a new node and canonicalizing.
    """
    perms = list(itertools.permutations(range(n)))

    def canon(edges):
        best = None
        for p in perms:
            mapped = tuple(
                sorted(tuple(sorted((p[u], p[v]))) for (u, v) in edges)
            )
            if best is None or mapped < best:
                best = mapped
        return best

    if n == 1:
        return [[]]
    reps = {}
    for smaller in nonisomorphic_graphs(n - 1):
        for neighbors in itertools.chain.from_iterable(
            itertools.combinations(range(n - 1), r) for r in range(n)
        ):
            edges = list(smaller) + [(u, n - 1) for u in neighbors]
            key = canon(edges)
            if key not in reps:
                reps[key] = [tuple(e) for e in key]
    return list(reps.values())


def graphs_up_to(n_max: int):
    """(n, edges) for every graph with 1..n_max nodes, up to isomorphism."""
    for n in range(1, n_max + 1):
        for edges in nonisomorphic_graphs(n):
            yield n, edges


def has_clique(n, edges, k) -> bool:
    edge_set = {tuple(sorted(e)) for e in edges}
    return any(
        all(tuple(sorted(p)) in edge_set for p in itertools.combinations(sub, 2))
        for sub in itertools.combinations(range(n), k)
    )


def maximal_matchings(n, edges):
    """All maximal matchings (as frozensets of edges)."""
    edges = [tuple(sorted(e)) for e in edges]

    def is_matching(sub):
        used = set()
        for u, v in sub:
            if u in used or v in used:
                return False
            used.update((u, v))
        return True

    out = []
    for r in range(len(edges) + 1):
        for sub in itertools.combinations(edges, r):
            if not is_matching(sub):
                continue
            used = {x for e in sub for x in e}
            if any(u not in used and v not in used for u, v in edges):
                continue  # extensible, not maximal
            out.append(frozenset(sub))
    return out


def min_maximal_matching_size(n, edges):
    mms = maximal_matchings(n, edges)
    return min((len(m) for m in mms), default=0)


def min_vertex_cover_size(n, edges) -> int:
    edges = [tuple(sorted(e)) for e in edges]
    for k in range(n + 1):
        for sub in itertools.combinations(range(n), k):
            cover = set(sub)
            if all(u in cover or v in cover for u, v in edges):
                return k
    return n
