"""Exact-arithmetic toolkit for polymatrix coordination games.

Games live on a graph: every edge hosts a shared-payoff bimatrix game and
every player adds an individual preference for his own strategy.  The
package covers payoffs/potentials, coalition improvement dynamics,
approximate-equilibrium verification, a backwards-induction solver for
forests, price-of-anarchy measurement, strategy-imposition mechanisms, named
instance generators and a command-line front end.  Everything is computed in
`fractions.Fraction`.
"""

from .errors import (
    BudgetExceededError,
    GameValidationError,
    ParameterError,
    PolycoordError,
    StructureError,
    UnsupportedGameError,
)
from .game_core import (
    Coalition,
    GraphCoordinationSpec,
    PolymatrixGame,
    Profile,
    as_graph_coordination,
    check_profile,
    exact_potential,
    from_graph_coordination,
    make_coalition,
    payoff,
    social_welfare,
    social_welfare_coalition,
    validate,
)
from .dynamics import (
    Deviation,
    DynamicsTrace,
    find_improving_deviation,
    find_simple_improving_deviation,
    run_dynamics,
)
from .verification import (
    DEFAULT_MAX_PROFILES,
    DegreeInstance,
    EquilibriumReport,
    degree_instance_for_color,
    enumerate_equilibria,
    is_alpha_strong_equilibrium_graph,
    is_equilibrium,
    min_degree_maximal_set,
)
from .tree_solver import (
    SpeTable,
    check_forest,
    eliminate_preferences,
    gen_seq_counterexample,
    implemented_profile,
    strong_equilibrium_tree,
    subgame_perfect_strategy,
)
from .inefficiency import (
    INFINITY,
    NO_EQUILIBRIUM,
    empirical_poa,
    poa_lower_bound_formula,
    poa_upper_bound,
    social_optimum,
)
from .mechanisms import (
    Imposition,
    RestrictedGame,
    check_smoothness,
    choose_topk,
    guaranteed_welfare,
    impose_and_release,
    nash_equilibria,
    restrict,
)
from .instances import (
    CycleInstance,
    gen_cycle_counterexample,
    gen_golden_ratio,
    gen_imposition_tight,
    gen_poa_lower,
    gen_private_common,
    gen_spoa_path,
    reduce_clique,
    reduce_mmm,
    reduce_vertex_cover,
)
from .serialization import (
    format_rational,
    parse_game,
    parse_graph,
    parse_rational,
    serialize_game,
)
from .cli import cli

__version__ = "1.0.0"

__all__ = [
    "BudgetExceededError",
    "GameValidationError",
    "ParameterError",
    "PolycoordError",
    "StructureError",
    "UnsupportedGameError",
    "Coalition",
    "GraphCoordinationSpec",
    "PolymatrixGame",
    "Profile",
    "as_graph_coordination",
    "check_profile",
    "exact_potential",
    "from_graph_coordination",
    "make_coalition",
    "payoff",
    "social_welfare",
    "social_welfare_coalition",
    "validate",
    "Deviation",
    "DynamicsTrace",
    "find_improving_deviation",
    "find_simple_improving_deviation",
    "run_dynamics",
    "DEFAULT_MAX_PROFILES",
    "DegreeInstance",
    "EquilibriumReport",
    "degree_instance_for_color",
    "enumerate_equilibria",
    "is_alpha_strong_equilibrium_graph",
    "is_equilibrium",
    "min_degree_maximal_set",
    "SpeTable",
    "check_forest",
    "eliminate_preferences",
    "gen_seq_counterexample",
    "implemented_profile",
    "strong_equilibrium_tree",
    "subgame_perfect_strategy",
    "INFINITY",
    "NO_EQUILIBRIUM",
    "empirical_poa",
    "poa_lower_bound_formula",
    "poa_upper_bound",
    "social_optimum",
    "Imposition",
    "RestrictedGame",
    "check_smoothness",
    "choose_topk",
    "guaranteed_welfare",
    "impose_and_release",
    "nash_equilibria",
    "restrict",
    "CycleInstance",
    "gen_cycle_counterexample",
    "gen_golden_ratio",
    "gen_imposition_tight",
    "gen_poa_lower",
    "gen_private_common",
    "gen_spoa_path",
    "reduce_clique",
    "reduce_mmm",
    "reduce_vertex_cover",
    "format_rational",
    "parse_game",
    "parse_graph",
    "parse_rational",
    "serialize_game",
    "cli",
]
