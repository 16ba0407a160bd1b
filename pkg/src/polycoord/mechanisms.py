"""Strategy-imposition coordination mechanism.

Temporarily fixing the strategies of a coalition restricts the game to the
remaining players; the worst Nash equilibrium of the restriction bounds the
welfare recovered after the coalition is released.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import BudgetExceededError, GameValidationError, ParameterError
from .game_core import (
    Coalition,
    PolymatrixGame,
    Profile,
    ZERO,
    check_profile,
    make_coalition,
    payoff,
    social_welfare,
)
from .dynamics import run_dynamics
from .verification import resolve_budget


@dataclass
class Imposition:
    """A coalition together with the strategies fixed for its members."""

    coalition: Coalition
    fixed: tuple[int, ...]  # aligned with coalition
    provenance: str = "user-supplied"  # or "chosen-by-topk"


@dataclass
class RestrictedGame:
    """Result of fixing an imposition.

    game is over the remaining players (ids remapped to 0..m-1 following
    `kept`); edges from a remaining player into the fixed coalition are
    folded into that player's preferences, so restricted payoffs equal
    full-game payoffs.  `constant` records the coalition-internal welfare
    (fixed preferences plus twice the fixed-fixed edges); full-game social
    welfare at (fixed, s) is the restricted welfare plus `constant` plus one
    more copy of the folded cross terms (they are counted once per remaining
    player but twice in the full welfare).
    """

    original: PolymatrixGame
    imposition: Imposition
    game: PolymatrixGame
    kept: tuple[int, ...]
    constant: Fraction

    def embed(self, s_rest: Sequence[int]) -> Profile:
        """Lift a restricted profile to a full-game profile."""
        full = [None] * self.original.n
        for i, c in zip(self.imposition.coalition, self.imposition.fixed):
            full[i] = c
        for new, old in enumerate(self.kept):
            full[old] = s_rest[new]
        return tuple(full)

    def cross_welfare(self, s_rest: Sequence[int]) -> Fraction:
        """Folded coalition-edge payoffs at s_rest (one copy)."""
        total = ZERO
        for new, old in enumerate(self.kept):
            total += (
                self.game.preferences[new][s_rest[new]]
                - self.original.preferences[old][s_rest[new]]
            )
        return total

    def full_welfare(self, s_rest: Sequence[int]) -> Fraction:
        return (
            social_welfare(self.game, s_rest)
            + self.constant
            + self.cross_welfare(s_rest)
        )


def restrict(game: PolymatrixGame, imp: Imposition) -> RestrictedGame:
    """Fix the imposition's strategies and fold them into the remainder."""
    coalition = (
        make_coalition(imp.coalition, game.n) if imp.coalition else ()
    )
    if coalition != tuple(imp.coalition):
        raise GameValidationError("imposition coalition is not canonical")
    fixed = dict(zip(coalition, imp.fixed))
    for i, c in fixed.items():
        if not (0 <= c < game.num_strategies(i)):
            raise GameValidationError(f"fixed strategy {c} invalid for player {i}")

    kept = tuple(i for i in range(game.n) if i not in fixed)
    id_map = {old: new for new, old in enumerate(kept)}

    preferences = []
    for old in kept:
        prefs = list(game.preferences[old])
        for j in game.neighbors(old):
            if j in fixed:
                for a in range(game.num_strategies(old)):
                    prefs[a] += game.edge_payoff(old, j, a, fixed[j])
        preferences.append(tuple(prefs))

    tables = {
        (id_map[i], id_map[j]): table
        for (i, j), table in game.tables.items()
        if i in id_map and j in id_map
    }
    restricted = PolymatrixGame.build(
        tuple(game.strategies[old] for old in kept), preferences, tables
    )

    constant = ZERO
    for i, c in fixed.items():
        constant += game.preferences[i][c]
    for (i, j) in game.tables:
        if i in fixed and j in fixed:
            constant += 2 * game.edge_payoff(i, j, fixed[i], fixed[j])
    return RestrictedGame(game, imp, restricted, kept, constant)


def choose_topk(game: PolymatrixGame, s: Sequence[int], k: int) -> Coalition:
    """The k players with the highest payoff under s, ties to smaller ids."""
    s = check_profile(game, s)
    if not (0 <= k <= game.n):
        raise ParameterError(f"k must be in 0..{game.n}, got {k}")
    ranked = sorted(range(game.n), key=lambda i: (-payoff(game, s, i), i))
    return tuple(sorted(ranked[:k]))


def nash_equilibria(
    game: PolymatrixGame, max_profiles: Optional[int] = None
) -> list[Profile]:
    """All pure Nash equilibria by exhaustive unilateral-move checking."""
    budget = resolve_budget(max_profiles)
    count = game.profile_count()
    if count > budget:
        raise BudgetExceededError(count, budget)
    out = []
    for s in game.profiles():
        stable = True
        for i in range(game.n):
            p = payoff(game, s, i)
            s2 = list(s)
            for c in range(game.num_strategies(i)):
                if c == s[i]:
                    continue
                s2[i] = c
                if payoff(game, tuple(s2), i) > p:
                    stable = False
                    break
            s2[i] = s[i]
            if not stable:
                break
        if stable:
            out.append(s)
    return out


def guaranteed_welfare(
    game: PolymatrixGame,
    imp: Imposition,
    max_profiles: Optional[int] = None,
) -> Fraction:
    """Minimum full-game welfare over all Nash equilibria of the restriction."""
    restriction = restrict(game, imp)
    if restriction.game.n == 0:
        return social_welfare(game, restriction.embed(()))
    equilibria = nash_equilibria(restriction.game, max_profiles=max_profiles)
    return min(
        social_welfare(game, restriction.embed(ne)) for ne in equilibria
    )


def impose_and_release(
    game: PolymatrixGame,
    s: Sequence[int],
    k: int,
    max_profiles: Optional[int] = None,
) -> Profile:
    """Fix the top-k earners at s, let the rest settle, then release.

    Runs unilateral improvement dynamics in the restricted game to a Nash
    equilibrium, re-attaches the coalition at its fixed strategies, and runs
    unilateral dynamics in the full game.  The returned Nash equilibrium is
    asserted to recover at least a k/n fraction of SW(s).
    """
    s = check_profile(game, s)
    if not (0 <= k <= game.n):
        raise ParameterError(f"k must be in 0..{game.n}, got {k}")
    coalition = choose_topk(game, s, k)
    if coalition:
        imp = Imposition(coalition, tuple(s[i] for i in coalition), "chosen-by-topk")
        restriction = restrict(game, imp)
        inner = restriction.game
        if inner.n:
            start = tuple(s[old] for old in restriction.kept)
            trace = run_dynamics(
                inner, start, Fraction(1), 1, max_steps=inner.profile_count()
            )
            assert trace.verdict == "converged"
            settled = restriction.embed(trace.states[-1])
        else:
            settled = restriction.embed(())
    else:
        settled = s
    final = run_dynamics(
        game, settled, Fraction(1), 1, max_steps=game.profile_count()
    )
    assert final.verdict == "converged"
    result = final.states[-1]
    bound = Fraction(k, game.n) * social_welfare(game, s) if game.n else ZERO
    if not social_welfare(game, result) >= bound:
        raise AssertionError(
            "released equilibrium fell below the k/n welfare guarantee"
        )
    return result


def check_smoothness(
    game: PolymatrixGame,
    s_ref: Sequence[int],
    lam: Fraction,
    mu: Fraction,
    imposition: Optional[Imposition] = None,
    max_profiles: Optional[int] = None,
) -> bool:
    """Exhaustively verify the smoothness inequality with respect to s_ref.

    For every profile s (with the imposition's players pinned, when given),
    checks sum_v p_v(s_ref_v, s_{-v}) >= lam*SW(s_ref) + mu*SW(s), where v
    ranges over all players of the full game.
    """
    lam, mu = Fraction(lam), Fraction(mu)
    s_ref = check_profile(game, s_ref)
    if imposition is not None:
        restriction = restrict(game, imposition)
        free = restriction.kept

        def profiles():
            for rest in restriction.game.profiles():
                yield restriction.embed(rest)

        count = restriction.game.profile_count()
    else:
        free = tuple(range(game.n))
        profiles = game.profiles
        count = game.profile_count()

    budget = resolve_budget(max_profiles)
    if count > budget:
        raise BudgetExceededError(count, budget)

    sw_ref = social_welfare(game, s_ref)
    for s in profiles():
        total = ZERO
        for v in range(game.n):
            s2 = list(s)
            s2[v] = s_ref[v]
            total += payoff(game, tuple(s2), v)
        if not total >= lam * sw_ref + mu * social_welfare(game, s):
            return False
    return True
