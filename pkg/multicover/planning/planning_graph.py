"""Planning-graph layers and eventual fluent mutexes.

Eventual mutexes are computed under the sequential assumption: every pair of
regular actions is treated as mutex, so the only action mutexes that are
ever stored are those between a preserving action and another action. The
layered computation stops once two consecutive layers agree on both the
fluent set and the fluent-mutex set.
"""
import logging
from collections.abc import Iterable
from dataclasses import dataclass, field

from core.exceptions import UnreachableGoalError
from multicover.graph import MutexGraph, build_graph
from multicover.planning.strips import Action, StripsProblem, add_preserving_actions, make_problem

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class MutexPair:
    f: str
    g: str

    def __post_init__(self):
        if self.f == self.g:
            raise ValueError(f'a fluent cannot be mutex with itself: {self.f}')
        if self.g < self.f:
            f, g = self.g, self.f
            object.__setattr__(self, 'f', f)
            object.__setattr__(self, 'g', g)


@dataclass
class PlanningGraph:
    fluents: tuple[str, ...] = ()
    # None marks a fluent or action that never becomes reachable
    fluent_first_layer: dict[str, int | None] = field(default_factory=dict)
    action_first_layer: dict[str, int | None] = field(default_factory=dict)
    fluent_mutex_by_layer: list[frozenset[tuple[int, int]]] = field(default_factory=list)
    present_by_layer: list[frozenset[int]] = field(default_factory=list)
    stabilized_layer: int = 0
    # peak number of (preserving action, action) mutex entries held for one layer
    action_mutex_entries: int = 0

    def goal_layer(self, goal: Iterable[str]) -> int:
        layers = [self.fluent_first_layer.get(f) for f in goal]
        if any(layer is None for layer in layers):
            missing = sorted(f for f in goal if self.fluent_first_layer.get(f) is None)
            raise UnreachableGoalError(f'Goal fluent {missing[0]} is unreachable; the problem has no plan.')
        return max(layers, default=0)


def first_appearance_layers(p: StripsProblem, require_goals: bool = True) -> PlanningGraph:
    """Relaxed (delete-free) layers at which each fluent and action can first occur."""
    fluent_layer: dict[str, int | None] = {f: None for f in p.fluents}
    action_layer: dict[str, int | None] = {a.name: None for a in p.actions}
    for f in p.init:
        fluent_layer[f] = 0

    pending = list(p.actions)
    k = 0
    while True:
        started = [a for a in pending if all(fluent_layer[f] is not None for f in a.pre)]
        for a in started:
            action_layer[a.name] = k
        pending = [a for a in pending if action_layer[a.name] is None]
        reached = {f for a in started for f in a.add if fluent_layer[f] is None}
        if not started and not reached:
            break
        for f in reached:
            fluent_layer[f] = k + 1
        k += 1

    graph = PlanningGraph(fluents=p.fluents, fluent_first_layer=fluent_layer, action_first_layer=action_layer)
    if require_goals:
        graph.goal_layer(p.goal)
    return graph


def eventual_fluent_mutexes(p: StripsProblem, keep_layers: bool = True) -> tuple[set[MutexPair], PlanningGraph]:
    p = add_preserving_actions(p)
    index = {f: i for i, f in enumerate(p.fluents)}
    n = len(p.fluents)
    regular = [(frozenset(index[f] for f in a.pre), frozenset(index[f] for f in a.add),
                frozenset(index[f] for f in a.delete)) for a in p.regular_actions]

    present = frozenset(index[f] for f in p.init)
    mutex: list[frozenset[int]] = [frozenset()] * n
    graph = PlanningGraph(fluents=p.fluents)
    graph.present_by_layer.append(present)
    graph.fluent_mutex_by_layer.append(frozenset())

    k = 0
    while True:
        applicable = [
            (pre, add, delete) for pre, add, delete in regular
            if pre <= present and not any(mutex[x] & pre for x in pre)
        ]

        compatible = [set() for _ in range(n)]
        for f in present:
            compatible[f] |= present - mutex[f]
        # preserve(g) -> regular actions mutex with it at this layer
        preserving_mutex: dict[int, list[int]] = {}
        for a, (pre, add, delete) in enumerate(applicable):
            blocked = set(delete)
            for x in pre:
                blocked |= mutex[x]
            for g in present & blocked:
                preserving_mutex.setdefault(g, []).append(a)
            alongside = present - blocked
            for f in add:
                compatible[f] |= add
                compatible[f] |= alongside
                for g in alongside:
                    compatible[g].add(f)
        graph.action_mutex_entries = max(graph.action_mutex_entries,
                                         sum(len(actions) for actions in preserving_mutex.values()))

        reached = present.union(*(add for _, add, _ in applicable))
        next_mutex = [frozenset(reached - compatible[f] - {f}) if f in reached else frozenset() for f in range(n)]
        if reached == present and next_mutex == mutex:
            break
        present, mutex = reached, next_mutex
        k += 1
        logger.info('layer %d: %d fluents, %d applicable actions', k, len(present), len(applicable))
        if keep_layers:
            graph.present_by_layer.append(present)
            graph.fluent_mutex_by_layer.append(_pairs(mutex))

    graph.stabilized_layer = k
    pairs = {MutexPair(p.fluents[f], p.fluents[g]) for f, g in _pairs(mutex)}
    logger.info('mutex set stabilized at layer %d with %d pairs', k, len(pairs))
    return pairs, graph


def _pairs(mutex: list[frozenset[int]]) -> frozenset[tuple[int, int]]:
    return frozenset((f, g) for f, others in enumerate(mutex) for g in others if f < g)


def mutex_graph_of(pairs: Iterable[MutexPair], fluents: Iterable[str] = (), all_fluents: bool = False) -> MutexGraph:
    pairs = sorted(set(pairs))
    labels = {x for pair in pairs for x in (pair.f, pair.g)}
    if all_fluents:
        labels |= set(fluents)
    order = sorted(labels)
    position = {label: v for v, label in enumerate(order)}
    return build_graph(len(order), [(position[pair.f], position[pair.g]) for pair in pairs], order)


def prune_to_needed(p: StripsProblem) -> StripsProblem:
    """Keep only fluents and actions that are reachable and can contribute to the goal."""
    layers = first_appearance_layers(p, require_goals=False)
    reachable = [a for a in p.regular_actions if layers.action_first_layer[a.name] is not None]
    relevant = set(p.goal)
    needed_actions: set[str] = set()
    changed = True
    while changed:
        changed = False
        for a in reachable:
            if a.name not in needed_actions and a.add & relevant:
                needed_actions.add(a.name)
                relevant |= a.pre
                changed = True

    keep = {f for f in relevant if layers.fluent_first_layer[f] is not None}
    actions = [
        Action(a.name, a.pre, a.add & keep, a.delete & keep)
        for a in reachable if a.name in needed_actions
    ]
    logger.info('neededness kept %d of %d fluents and %d of %d actions',
                len(keep), len(p.fluents), len(actions), len(p.regular_actions))
    return make_problem(keep, actions, p.init & keep, p.goal & keep, name=p.name, domain_name=p.domain_name)
