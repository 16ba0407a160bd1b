"""Coalition improvement dynamics.

Enumerates improving deviations (where a coalition of at most k players all
change strategy and each multiplies his payoff by strictly more than alpha)
and runs improvement dynamics with convergence and cycle detection.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import ParameterError, UnsupportedGameError
from .game_core import (
    Coalition,
    PolymatrixGame,
    Profile,
    as_graph_coordination,
    check_profile,
    exact_potential,
    payoff,
    social_welfare,
)


@dataclass(frozen=True)
class Deviation:
    """A coalition move with per-member payoffs before and after."""

    coalition: Coalition
    new_choice: tuple[int, ...]  # aligned with coalition
    before: tuple[Fraction, ...]
    after: tuple[Fraction, ...]
    alpha: Fraction

    def apply(self, s: Profile) -> Profile:
        out = list(s)
        for i, c in zip(self.coalition, self.new_choice):
            out[i] = c
        return tuple(out)

    def improvement_ratios(self):
        """after/before per member; None where the old payoff was zero."""
        return tuple(
            (a / b) if b != 0 else None for a, b in zip(self.after, self.before)
        )


@dataclass
class DynamicsTrace:
    states: list[Profile]
    steps: list[Deviation]
    potentials: list[Fraction]
    welfares: list[Fraction]
    verdict: str  # "converged" | "cycled" | "budget-exhausted"
    first_repeat: Optional[int] = None

    @property
    def period(self) -> Optional[int]:
        if self.verdict != "cycled":
            return None
        return len(self.states) - 1 - self.first_repeat


def _is_improving(game, s, coalition, new_choice, alpha):
    """Payoffs (before, after) if the move is strictly alpha-improving, else None."""
    s2 = list(s)
    for i, c in zip(coalition, new_choice):
        s2[i] = c
    s2 = tuple(s2)
    before, after = [], []
    for i in coalition:
        pb = payoff(game, s, i)
        pa = payoff(game, s2, i)
        if not pa > alpha * pb:
            return None
        before.append(pb)
        after.append(pa)
    return tuple(before), tuple(after)


def _candidate_moves(game, s, k):
    """All (coalition, new_choice) pairs in canonical order.

    Coalitions ascend by size then lexicographically; joint deviations are
    lexicographic by strategy index.  Every member changes strategy.
    """
    n = game.n
    for size in range(1, k + 1):
        for coalition in itertools.combinations(range(n), size):
            alternatives = [
                [c for c in range(game.num_strategies(i)) if c != s[i]]
                for i in coalition
            ]
            if any(not alts for alts in alternatives):
                continue
            for new_choice in itertools.product(*alternatives):
                yield coalition, new_choice


def find_improving_deviation(
    game: PolymatrixGame,
    s: Sequence[int],
    alpha: Fraction,
    k: int,
    policy: str = "first",
) -> Optional[Deviation]:
    """Exhaustive search for an (alpha, k)-improving deviation.

    Returns the canonically first improving deviation, or with
    policy="best-welfare" the one with the largest social welfare gain
    (canonical order breaking ties).  None iff no improving deviation exists.
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ParameterError(f"alpha must be >= 1, got {alpha}")
    if not (1 <= k <= game.n):
        raise ParameterError(f"k must be in 1..{game.n}, got {k}")
    if policy not in ("first", "best-welfare"):
        raise ParameterError(f"unknown policy {policy!r}")
    s = check_profile(game, s)

    best = None
    best_gain = None
    sw0 = social_welfare(game, s) if policy == "best-welfare" else None
    for coalition, new_choice in _candidate_moves(game, s, k):
        result = _is_improving(game, s, coalition, new_choice, alpha)
        if result is None:
            continue
        before, after = result
        dev = Deviation(coalition, new_choice, before, after, alpha)
        if policy == "first":
            return dev
        gain = social_welfare(game, dev.apply(s)) - sw0
        if best is None or gain > best_gain:
            best, best_gain = dev, gain
    return best


def _simple_moves(spec, s_colors, k):
    """Simple deviations: connected coalition, all members to one common color.

    Yields (coalition, color) in canonical order (size, coalition, color
    name).  s_colors maps node -> current color name.
    """
    n = spec.n
    adj = {i: set() for i in range(n)}
    for (i, j) in spec.weights:
        adj[i].add(j)
        adj[j].add(i)

    def connected(nodes):
        nodes = set(nodes)
        seen = {next(iter(nodes))}
        frontier = list(seen)
        while frontier:
            u = frontier.pop()
            for v in adj[u] & nodes:
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
        return seen == nodes

    all_colors = sorted({c for cs in spec.colors for c in cs})
    for size in range(1, k + 1):
        for coalition in itertools.combinations(range(n), size):
            if size > 1 and not connected(coalition):
                continue
            for x in all_colors:
                if all(x in spec.colors[i] and s_colors[i] != x for i in coalition):
                    yield coalition, x


def find_simple_improving_deviation(
    game: PolymatrixGame,
    s: Sequence[int],
    alpha: Fraction,
    k: int,
) -> Optional[Deviation]:
    """Search simple deviations only (graph coordination games).

    A simple deviation moves a connected coalition to one common color.  For
    graph coordination games an improving deviation exists iff a simple one
    does, so this is a complete equilibrium test for every k.
    """
    alpha = Fraction(alpha)
    if alpha < 1:
        raise ParameterError(f"alpha must be >= 1, got {alpha}")
    if not (1 <= k <= game.n):
        raise ParameterError(f"k must be in 1..{game.n}, got {k}")
    s = check_profile(game, s)
    spec = as_graph_coordination(game)
    if spec is None:
        raise UnsupportedGameError("not a graph coordination game")
    s_colors = [game.strategies[i][s[i]] for i in range(game.n)]
    for coalition, x in _simple_moves(spec, s_colors, k):
        new_choice = tuple(game.strategies[i].index(x) for i in coalition)
        result = _is_improving(game, s, coalition, new_choice, alpha)
        if result is not None:
            before, after = result
            return Deviation(coalition, new_choice, before, after, alpha)
    return None


Schedule = Sequence[tuple[Coalition, tuple[int, ...]]]


def run_dynamics(
    game: PolymatrixGame,
    s0: Sequence[int],
    alpha: Fraction,
    k: int,
    max_steps: int,
    policy: Union[str, Schedule] = "first",
) -> DynamicsTrace:
    """Iterate improving deviations from s0 until convergence, a revisited
    state, or the step budget runs out.

    policy may also be an explicit schedule of (coalition, new_choice) steps;
    a scheduled step is applied as given (members must change strategy) and
    its payoffs are recorded without the strict alpha filter, so a schedule
    whose critical step improves by a factor of exactly alpha replays fully.
    """
    alpha = Fraction(alpha)
    if max_steps < 0:
        raise ParameterError("max_steps must be >= 0")
    s = check_profile(game, s0)

    replay = not isinstance(policy, str)
    schedule = list(policy) if replay else None

    states = [s]
    steps: list[Deviation] = []
    potentials = [exact_potential(game, s)]
    welfares = [social_welfare(game, s)]
    seen = {s: 0}

    verdict = "budget-exhausted"
    first_repeat = None
    step_index = 0
    while step_index < max_steps:
        if replay:
            if step_index >= len(schedule):
                # Schedule exhausted without revisiting a state.
                verdict = "budget-exhausted"
                break
            coalition, new_choice = schedule[step_index]
            s_next = list(s)
            for i, c in zip(coalition, new_choice):
                if s[i] == c:
                    raise ParameterError(
                        f"scheduled step {step_index}: player {i} does not change"
                    )
                s_next[i] = c
            s_next = tuple(s_next)
            before = tuple(payoff(game, s, i) for i in coalition)
            after = tuple(payoff(game, s_next, i) for i in coalition)
            dev = Deviation(tuple(coalition), tuple(new_choice), before, after, alpha)
        else:
            dev = find_improving_deviation(game, s, alpha, k, policy)
            if dev is None:
                verdict = "converged"
                break
        s = dev.apply(s)
        steps.append(dev)
        states.append(s)
        potentials.append(exact_potential(game, s))
        welfares.append(social_welfare(game, s))
        if s in seen:
            verdict = "cycled"
            first_repeat = seen[s]
            break
        seen[s] = len(states) - 1
        step_index += 1

    return DynamicsTrace(states, steps, potentials, welfares, verdict, first_repeat)
