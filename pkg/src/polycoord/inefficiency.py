"""Social optimum and price-of-anarchy measurement."""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Union

from .errors import BudgetExceededError, ParameterError
from .game_core import PolymatrixGame, Profile, social_welfare
from .verification import enumerate_equilibria, resolve_budget


class Infinity:
    """Symbolic infinity for unbounded price-of-anarchy ratios."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "infinity"

    def __gt__(self, other):
        return not isinstance(other, Infinity)

    def __lt__(self, other):
        return False

    def __ge__(self, other):
        return True

    def __le__(self, other):
        return isinstance(other, Infinity)


class NoEquilibrium:
    """Verdict for games without any (alpha, k)-equilibrium."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "no-equilibrium"


INFINITY = Infinity()
NO_EQUILIBRIUM = NoEquilibrium()

PoaResult = Union[Fraction, Infinity, NoEquilibrium]


def social_optimum(
    game: PolymatrixGame, max_profiles: Optional[int] = None
) -> tuple[Profile, Fraction]:
    """Exhaustive welfare maximization; lexicographically first maximizer."""
    budget = resolve_budget(max_profiles)
    count = game.profile_count()
    if count > budget:
        raise BudgetExceededError(count, budget)
    best = None
    best_sw = None
    for s in game.profiles():
        sw = social_welfare(game, s)
        if best_sw is None or sw > best_sw:
            best, best_sw = s, sw
    return best, best_sw


def empirical_poa(
    game: PolymatrixGame,
    alpha: Fraction,
    k: int,
    max_profiles: Optional[int] = None,
) -> PoaResult:
    """Exact optimum-to-worst-equilibrium welfare ratio.

    Returns NO_EQUILIBRIUM when no (alpha, k)-equilibrium exists and
    INFINITY when the worst equilibrium has zero welfare but the optimum is
    positive (0/0 counts as ratio 1).
    """
    equilibria = enumerate_equilibria(game, alpha, k, max_profiles=max_profiles)
    if not equilibria:
        return NO_EQUILIBRIUM
    _, opt = social_optimum(game, max_profiles=max_profiles)
    worst = min(social_welfare(game, s) for s in equilibria)
    if worst == 0:
        return Fraction(1) if opt == 0 else INFINITY
    return opt / worst


def poa_upper_bound(n: int, k: int, alpha: Fraction) -> PoaResult:
    """Closed-form upper bound 2*alpha*(n-1)/(k-1); infinite for k = 1."""
    _check_bound_args(n, k, alpha)
    if k == 1:
        return INFINITY
    return 2 * Fraction(alpha) * Fraction(n - 1, k - 1)


def poa_lower_bound_formula(n: int, k: int, alpha: Fraction) -> PoaResult:
    """Closed-form lower bound 2*alpha*(n-1)/(k-1) + 1 - 2*alpha."""
    _check_bound_args(n, k, alpha)
    if k == 1:
        return INFINITY
    alpha = Fraction(alpha)
    return 2 * alpha * Fraction(n - 1, k - 1) + 1 - 2 * alpha


def _check_bound_args(n, k, alpha):
    if not (1 <= k <= n):
        raise ParameterError(f"need 1 <= k <= n, got k={k}, n={n}")
    if Fraction(alpha) < 1:
        raise ParameterError(f"alpha must be >= 1, got {alpha}")
