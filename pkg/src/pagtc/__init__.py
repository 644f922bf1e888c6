"""Past-aware game-theoretic centrality and complex-contagion tooling.

Centrality scores are expected marginal contributions of a node to a random
coalition, conditioned on a fixed set of already-active collaborators; they
are computed in closed form for the one-round influence of K-complex
contagion and drive seed selection and dynamic targeting heuristics.
"""

from .contagion import (
    ContagionState,
    full_influence,
    marginal_full,
    marginal_one_round,
    one_round_influence,
    settle,
    state_from_seeds,
    step,
)
from .estimators import DynamicTargeter, PagtcCentrality, SeedSelector
from .graphs import (
    BUNDLED_DATASETS,
    Graph,
    generate_navigable_small_world,
    load_bundled,
    load_edge_list,
    read_edge_list,
    write_edge_list,
)
from .scoring import (
    ScoreVector,
    SizeDistribution,
    brute_force_pagtc,
    c_beta,
    c_beta_exact,
    gtc_closed_form,
    monte_carlo_pagtc,
    semivalue_dirac_pagtc,
    semivalue_dirac_pagtc_exact,
    semivalue_general_pagtc,
    shapley_pagtc,
    shapley_pagtc_exact,
)
from .seeding import (
    SeedSolution,
    degree_select,
    greedy_select,
    optimal_bruteforce,
    pagtc_delta_select,
)
from .targeting import TargetingStrategy, TargetingTrace, choose_next, run_targeted, trace_export

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "load_edge_list",
    "read_edge_list",
    "write_edge_list",
    "generate_navigable_small_world",
    "load_bundled",
    "BUNDLED_DATASETS",
    "ContagionState",
    "state_from_seeds",
    "step",
    "settle",
    "one_round_influence",
    "full_influence",
    "marginal_one_round",
    "marginal_full",
    "SizeDistribution",
    "ScoreVector",
    "c_beta",
    "c_beta_exact",
    "shapley_pagtc",
    "shapley_pagtc_exact",
    "semivalue_dirac_pagtc",
    "semivalue_dirac_pagtc_exact",
    "semivalue_general_pagtc",
    "gtc_closed_form",
    "brute_force_pagtc",
    "monte_carlo_pagtc",
    "SeedSolution",
    "greedy_select",
    "pagtc_delta_select",
    "degree_select",
    "optimal_bruteforce",
    "TargetingStrategy",
    "TargetingTrace",
    "choose_next",
    "run_targeted",
    "trace_export",
    "PagtcCentrality",
    "SeedSelector",
    "DynamicTargeter",
]
