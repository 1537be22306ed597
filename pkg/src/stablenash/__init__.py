"""Toolkit for Nash equilibria of bimatrix games under payoff perturbations.

Computes exact equilibria of small games, searches for well-supported
approximate equilibria over growing supports, measures how far equilibria
move under payoff perturbations or approximation slack, certifies exact
stability radii for constant-sum games, and embeds arbitrary games into
strongly stable ones.
"""

from .config import DEFAULT_TOLS, Tolerances
from .core import (
    BimatrixGame,
    MixedStrategy,
    RegretReport,
    StrategyProfile,
    expected_payoffs,
    is_perturbation_within,
    profile_distance,
    regrets,
    variation_distance,
)
from .constant_sum import (
    MinimaxSolution,
    StrongStabilityCertificate,
    check_constant_sum,
    minimax_solve,
    strong_stability_parameters,
    well_supported_stability_parameters,
)
from .embedding import EmbeddedGame, embed, extract, modified_matching_pennies, random_modified_matching_pennies
from .generators import (
    dominance_gap_game,
    matching_pennies,
    meeting_game,
    public_goods,
    random_constant_sum_game,
    random_game,
)
from .lp import LinearProgram, LpOutcome, solve_lp
from .oracle import EquilibriumSet, distance_to_set, enumerate_equilibria
from .stability import (
    StabilityReport,
    Witness,
    estimate_approximation_stability,
    estimate_perturbation_stability,
    internal_deviation,
    perturbation_witness,
    random_split_deviation,
    random_split_probe,
    sample_approximate_equilibria,
)
from .support import (
    HeavyLightSplit,
    SearchResult,
    find_well_supported,
    heavy_light_partition,
    lmm_sample,
    small_support_approximation,
    well_supported_feasible,
)

__version__ = "0.1.0"

__all__ = [
    "BimatrixGame",
    "DEFAULT_TOLS",
    "EmbeddedGame",
    "EquilibriumSet",
    "HeavyLightSplit",
    "LinearProgram",
    "LpOutcome",
    "MinimaxSolution",
    "MixedStrategy",
    "RegretReport",
    "SearchResult",
    "StabilityReport",
    "StrategyProfile",
    "StrongStabilityCertificate",
    "Tolerances",
    "Witness",
    "check_constant_sum",
    "distance_to_set",
    "dominance_gap_game",
    "embed",
    "enumerate_equilibria",
    "estimate_approximation_stability",
    "estimate_perturbation_stability",
    "expected_payoffs",
    "extract",
    "find_well_supported",
    "heavy_light_partition",
    "internal_deviation",
    "is_perturbation_within",
    "modified_matching_pennies",
    "lmm_sample",
    "matching_pennies",
    "meeting_game",
    "minimax_solve",
    "perturbation_witness",
    "profile_distance",
    "public_goods",
    "random_constant_sum_game",
    "random_game",
    "random_modified_matching_pennies",
    "random_split_deviation",
    "random_split_probe",
    "regrets",
    "sample_approximate_equilibria",
    "small_support_approximation",
    "solve_lp",
    "strong_stability_parameters",
    "variation_distance",
    "well_supported_feasible",
    "well_supported_stability_parameters",
]
