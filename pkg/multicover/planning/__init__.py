from multicover.planning.pddl import parse_pddl
from multicover.planning.planning_graph import (
    MutexPair,
    PlanningGraph,
    eventual_fluent_mutexes,
    first_appearance_layers,
    mutex_graph_of,
    prune_to_needed,
)
from multicover.planning.strips import Action, StripsProblem, add_preserving_actions, make_problem
