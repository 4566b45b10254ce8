"""Step out-Step in sequencing games: coalition values, oracle checks and game analysis."""

from .analysis import (
    IncompleteTableError,
    Violation,
    in_core,
    is_modular,
    is_monotone,
    is_supermodular,
    is_supermodular_pairwise,
    marginal_vector,
    shapley,
)
from .game import (
    GreedyResult,
    GreedyStep,
    GreedyTrace,
    SizeBoundError,
    ValueTable,
    brute_force_value,
    enumerate_admissible,
    greedy_value,
    is_admissible,
    per_player_savings,
    value_table,
)
from .instances import GenSpec, generate_instance, parse_instance, write_instance
from .scheduling import (
    Instance,
    InstanceError,
    coalition,
    coalition_cost,
    completion_times,
    components,
    delta_block,
    delta_pair,
    grand_coalition,
    members,
    orders_equivalent,
    smith_order,
    subgame,
    urgency_cmp,
)

__version__ = "0.1.0"
