"""Slow, independent reference computations the test suite checks against."""
import random
from collections import deque
from itertools import chain, combinations

import networkx as nx

from multicover.aspplan import Plan, validate_plan
from multicover.graph import MutexGraph, build_graph, to_networkx
from multicover.planning.strips import Action, StripsProblem, make_problem


def independent_sets(g: MutexGraph) -> set[frozenset[int]]:
    """Every independent set, the empty set included, as cliques of the complement."""
    complement = nx.complement(to_networkx(g))
    return {frozenset()} | {frozenset(c) for c in nx.enumerate_all_cliques(complement)}


def independent_sets_by_mask(g: MutexGraph) -> set[frozenset[int]]:
    found = set()
    for mask in range(1 << g.vertex_count):
        members = [v for v in g.vertices if mask >> v & 1]
        if not any(g.has_edge(u, v) for u, v in combinations(members, 2)):
            found.add(frozenset(members))
    return found


def random_graph(rng: random.Random, n: int, density: float, labelled: bool = True) -> MutexGraph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < density]
    labels = [f'f{v}' for v in range(n)] if labelled else None
    return build_graph(n, edges, labels)


def complete_multipartite(sizes: list[int]) -> MutexGraph:
    graph = nx.complete_multipartite_graph(*sizes)
    return build_graph(graph.number_of_nodes(), graph.edges(), [f'f{v}' for v in graph.nodes])


def recomputed_score(g: MutexGraph, uncovered: set[tuple[int, int]], vs: set[int]) -> int:
    """Score straight from the definitions, without any of the covering module's helpers."""
    sub = nx.complement(to_networkx(g).subgraph(vs))
    partitions = [set(c) for c in nx.connected_components(sub)]
    common = set(g.vertices)
    for v in vs:
        common &= g.neighbor_set(v)
    uncovered_degree = {v: sum(1 for e in uncovered if v in e) for v in g.vertices}
    defaults = {c for c in common if uncovered_degree[c] >= 2}
    if defaults:
        partitions.append(defaults)

    newly = 0
    for i, p in enumerate(partitions):
        for q in partitions[i + 1:]:
            newly += sum(1 for x in p for y in q if (min(x, y), max(x, y)) in uncovered)
    cost = sum(1 if len(p) == 1 else 2 * len(p) + 1 for p in partitions)
    return 2 * newly - cost


def reachable_states(p: StripsProblem) -> set[frozenset[str]]:
    """States reachable by applying one regular action at a time."""
    start = frozenset(p.init)
    seen, queue = {start}, deque([start])
    while queue:
        state = queue.popleft()
        for a in p.regular_actions:
            if a.pre <= state:
                successor = (state - a.delete) | a.add
                if successor not in seen:
                    seen.add(successor)
                    queue.append(successor)
    return seen


def co_reachable_pairs(p: StripsProblem) -> set[frozenset[str]]:
    return {frozenset(pair) for state in reachable_states(p) for pair in combinations(sorted(state), 2)}


def _interfere(a: Action, b: Action) -> bool:
    return bool(a.delete & (b.pre | b.add) or b.delete & (a.pre | a.add))


def graphplan_mutexes(p: StripsProblem) -> set[frozenset[str]]:
    """Fluent mutexes of the levelled-off planning graph, computed the textbook way."""
    noops = [Action(f'noop_{f}', frozenset({f}), frozenset({f})) for f in p.fluents]
    actions = list(p.regular_actions) + noops
    present, mutex = frozenset(p.init), set()
    while True:
        layer = [a for a in actions
                 if a.pre <= present and not any(frozenset(pair) in mutex for pair in combinations(a.pre, 2))]
        action_mutex = set()
        for a, b in combinations(layer, 2):
            competing = any(frozenset((x, y)) in mutex for x in a.pre for y in b.pre if x != y)
            if _interfere(a, b) or competing:
                action_mutex.add(frozenset((a.name, b.name)))

        reached = frozenset(chain.from_iterable(a.add for a in layer))
        next_mutex = set()
        for f, g in combinations(sorted(reached), 2):
            supporters_f = [a for a in layer if f in a.add]
            supporters_g = [a for a in layer if g in a.add]
            if all(a is not b and frozenset((a.name, b.name)) in action_mutex
                   for a in supporters_f for b in supporters_g):
                next_mutex.add(frozenset((f, g)))
        if reached == present and next_mutex == mutex:
            return mutex
        present, mutex = reached, next_mutex


def _role(a: Action, f: str) -> str | None:
    if f in a.pre:
        return 'consumer' if f in a.delete else 'user'
    return 'deleter' if f in a.delete else None


def _may_share_layer(a: Action, b: Action) -> bool:
    """Necessary condition for two regular actions in one layer under the fluent-use rule."""
    for f in (a.pre | a.delete) & (b.pre | b.delete):
        roles = {_role(a, f), _role(b, f)}
        if 'consumer' in roles or len(roles) > 1:
            return False
    return True


def min_parallel_makespan(p: StripsProblem, limit: int = 8) -> int | None:
    """Fewest layers of any plan that ``validate_plan`` accepts, by exhaustive search.

    Layers are drawn from applicable, pairwise compatible regular actions;
    every complete candidate plan is then judged by ``validate_plan`` itself,
    implied preserves included.
    """
    regular = list(p.regular_actions)

    def layers(state: frozenset[str]):
        applicable = [a for a in regular if a.pre <= state]
        for size in range(len(applicable) + 1):
            for step in combinations(applicable, size):
                if all(_may_share_layer(a, b) for a, b in combinations(step, 2)):
                    yield step

    def search(state: frozenset[str], steps: list[tuple[Action, ...]], depth: int) -> bool:
        if len(steps) == depth:
            plan = Plan(steps=[{a.name for a in step} for step in steps], makespan=depth)
            return validate_plan(p, plan) is None
        for step in layers(state):
            added = frozenset(chain.from_iterable(a.add for a in step))
            deleted = frozenset(chain.from_iterable(a.delete for a in step))
            if search((state | added) - deleted, steps + [step], depth):
                return True
        return False

    for depth in range(limit + 1):
        if search(frozenset(p.init), [], depth):
            return depth
    return None


def random_strips(rng: random.Random, n_fluents: int = 8, n_actions: int = 12) -> StripsProblem:
    fluents = [f'p{i}' for i in range(n_fluents)]
    actions = []
    for i in range(n_actions):
        pre = set(rng.sample(fluents, rng.randint(1, 2)))
        add = set(rng.sample(fluents, rng.randint(1, 2))) - pre
        if not add:
            add = {rng.choice([f for f in fluents if f not in pre])}
        delete = {f for f in pre if rng.random() < 0.5} | {f for f in fluents
                                                          if f not in add and rng.random() < 0.1}
        actions.append(Action(f'a{i}', frozenset(pre), frozenset(add), frozenset(delete - add)))
    init = rng.sample(fluents, rng.randint(1, 3))
    goal = rng.sample(fluents, 1)
    return make_problem(fluents, actions, init, goal)


def set_partitions(items: list[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for partition in set_partitions(rest):
        yield [[first]] + partition
        for i in range(len(partition)):
            yield partition[:i] + [[first] + partition[i]] + partition[i + 1:]
