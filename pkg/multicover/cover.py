"""Greedy multiclique covering of mutex graphs, plus two baselines.

``find_cover`` grows one multiclique at a time. Each one starts from the
vertex touching the most uncovered edges and absorbs further vertices while
that strictly improves ``score``, the literal saving over the one-constraint-
per-edge encoding. Covered edges are tracked in a side record rather than
removed from the graph, so a later multiclique may cover an edge again when
that makes it cheaper.
"""
import logging
import math
from collections import Counter
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction

from core import validator
from multicover.graph import Edge, MutexGraph, canonical, complement, connected_components, induced_subgraph

logger = logging.getLogger(__name__)

MULTICLIQUE = 'multiclique'
BICLIQUE = 'biclique'
NAIVE = 'naive'
BASELINES = (MULTICLIQUE, BICLIQUE, NAIVE)

Partition = tuple[int, ...]


@dataclass(frozen=True)
class Multiclique:
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        seen: set[int] = set()
        for partition in self.partitions:
            if not partition:
                raise ValueError('multiclique partitions must be nonempty')
            if seen.intersection(partition):
                raise ValueError(f'partitions of {self.partitions} are not disjoint')
            seen.update(partition)

    def __len__(self):
        return len(self.partitions)

    @property
    def vertices(self) -> list[int]:
        return sorted(v for partition in self.partitions for v in partition)

    def is_valid_for(self, g: MutexGraph) -> bool:
        return len(self.partitions) >= 2 and all(g.has_edge(u, v) for u, v in edges_covered_by(self))


@dataclass
class Covering:
    source: MutexGraph
    multicliques: list[Multiclique] = field(default_factory=list)
    covered: set[Edge] = field(default_factory=set)
    strategy: str = MULTICLIQUE
    fraction: Fraction = Fraction(1)
    # uncovered edge count after each emitted multiclique
    uncovered_history: list[int] = field(default_factory=list)
    fallbacks: int = 0

    def __iter__(self):
        return iter(self.multicliques)

    def __len__(self):
        return len(self.multicliques)

    def add(self, mc: Multiclique):
        self.multicliques.append(mc)
        self.covered |= edges_covered_by(mc)
        self.uncovered_history.append(self.source.edge_count - len(self.covered))


class CoverState:
    """The record of still-uncovered edges, kept as per-vertex adjacency."""

    def __init__(self, g: MutexGraph, uncovered: Iterable[Edge] | None = None):
        if uncovered is None:
            self._adjacency = [set(g.neighbor_set(v)) for v in g.vertices]
            self.remaining = g.edge_count
        else:
            self._adjacency = [set() for _ in g.vertices]
            self.remaining = 0
            for u, v in uncovered:
                if not g.has_edge(u, v):
                    raise ValueError(f'({u},{v}) is not an edge of the graph')
                if v not in self._adjacency[u]:
                    self._adjacency[u].add(v)
                    self._adjacency[v].add(u)
                    self.remaining += 1
        self.fallbacks = 0

    def __bool__(self):
        return self.remaining > 0

    @property
    def uncovered(self) -> set[Edge]:
        return {canonical(u, v) for u, neighbors in enumerate(self._adjacency) for v in neighbors if u < v}

    def uncovered_neighbors(self, x: int) -> set[int]:
        return self._adjacency[x]

    def lowest_uncovered_edge(self) -> Edge:
        for u, neighbors in enumerate(self._adjacency):
            later = [v for v in neighbors if v > u]
            if later:
                return u, min(later)
        raise ValueError('no uncovered edge left')

    def mark_covered(self, edges: Iterable[Edge]) -> int:
        newly = 0
        for u, v in edges:
            if v in self._adjacency[u]:
                self._adjacency[u].discard(v)
                self._adjacency[v].discard(u)
                newly += 1
        self.remaining -= newly
        return newly


def _partition_cost(size: int) -> int:
    return 1 if size == 1 else 2 * size + 1


def complexity_cost(partition: Iterable[int]) -> int:
    return _partition_cost(len(tuple(partition)))


def make_multiclique(g: MutexGraph, vs: Iterable[int]) -> Multiclique:
    sub = induced_subgraph(g, vs)
    components = connected_components(complement(sub))
    return Multiclique(tuple(tuple(sub.origin[i] for i in component) for component in components))


def edges_covered_by(mc: Multiclique) -> set[Edge]:
    covered = set()
    for i, p in enumerate(mc.partitions):
        for q in mc.partitions[i + 1:]:
            covered.update(canonical(x, y) for x in p for y in q)
    return covered


def count_uncovered_incident_edges(state: CoverState, g: MutexGraph, x: int) -> int:
    return len(state.uncovered_neighbors(x))


def defaults_for(state: CoverState, g: MutexGraph, vs: Iterable[int]) -> frozenset[int]:
    neighbor_sets = sorted((g.neighbor_set(v) for v in set(vs)), key=len)
    if not neighbor_sets:
        return frozenset()
    candidates = set(neighbor_sets[0]).intersection(*neighbor_sets[1:])
    return frozenset(c for c in candidates if count_uncovered_incident_edges(state, g, c) >= 2)


def _newly_covered_count(state: CoverState, partitions: tuple[Partition, ...]) -> int:
    members = [frozenset(p) for p in partitions]
    count = 0
    for i, p in enumerate(partitions):
        for q in members[i + 1:]:
            count += sum(len(state.uncovered_neighbors(x) & q) for x in p)
    return count


def score(state: CoverState, g: MutexGraph, vs: Iterable[int]) -> int:
    vs = set(vs)
    partitions = make_multiclique(g, vs).partitions
    defaults = defaults_for(state, g, vs)
    if defaults:
        partitions += (tuple(sorted(defaults)),)
    complexity = sum(complexity_cost(p) for p in partitions)
    return 2 * _newly_covered_count(state, partitions) - complexity


class VertexSetGrowth:
    """Score bookkeeping for a vertex set that only ever grows.

    Keeps the complement components of the set, the uncovered edges running
    between each pair of them, and the eligible common neighbours, so that
    ``score_with`` prices one more vertex without building any subgraph. On
    every set it reaches it agrees with ``score``.
    """

    def __init__(self, state: CoverState, g: MutexGraph, first_vertex: int):
        self._state = state
        self._g = g
        self.vertices = {first_vertex}
        self._parts: dict[int, set[int]] = {0: {first_vertex}}
        self._part_of = {first_vertex: 0}
        # uncovered edge counts between partitions, both directions stored
        self._cross: dict[int, Counter[int]] = {0: Counter()}
        self._next_id = 1
        self._between = 0
        self._cost = 1
        self.defaults = {c for c in g.neighbor_set(first_vertex)
                         if count_uncovered_incident_edges(state, g, c) >= 2}
        # uncovered edges from each default candidate into the set
        self._into_set: Counter[int] = Counter(self.defaults & state.uncovered_neighbors(first_vertex))

    @property
    def partitions(self) -> list[list[int]]:
        return sorted(sorted(p) for p in self._parts.values())

    @property
    def score(self) -> int:
        to_defaults = sum(self._into_set[c] for c in self.defaults)
        return self._total(self._between, self._cost, self.defaults, to_defaults)

    def score_with(self, w: int) -> int:
        return self._evaluate(w)[-1]

    def add(self, w: int) -> int:
        merged, between, cost, defaults, total = self._evaluate(w)
        uncovered = self._state.uncovered_neighbors(w)
        members = {w}
        row: Counter[int] = Counter()
        for i in merged:
            members |= self._parts.pop(i)
            row.update(self._cross.pop(i))
        for i in merged:
            row.pop(i, None)

        new_id = self._next_id
        self._next_id += 1
        for j, part in self._parts.items():
            row[j] += len(uncovered & part)
            other = self._cross[j]
            for i in merged:
                other.pop(i, None)
            if row[j]:
                other[new_id] = row[j]
        self._parts[new_id] = members
        self._cross[new_id] = +row
        for x in members:
            self._part_of[x] = new_id

        self.vertices.add(w)
        self._between, self._cost = between, cost
        self.defaults = defaults
        for c in defaults & uncovered:
            self._into_set[c] += 1
        return total

    @staticmethod
    def _total(between: int, cost: int, defaults: set[int], to_defaults: int) -> int:
        if defaults:
            cost += _partition_cost(len(defaults))
        return 2 * (between + to_defaults) - cost

    def _merged_by(self, neighbors: frozenset[int]) -> set[int]:
        """Ids of the partitions holding a non-neighbour of the new vertex."""
        missing = self.vertices - neighbors
        if len(missing) < len(self._parts):
            return {self._part_of[x] for x in missing}
        return {i for i, p in self._parts.items() if not p <= neighbors}

    def _cross_within(self, ids: set[int]) -> int:
        return sum(count for i in ids for j, count in self._cross[i].items() if j in ids) // 2

    def _lost(self, merged: set[int]) -> int:
        if 2 * len(merged) <= len(self._parts):
            return self._cross_within(merged)
        rest = self._parts.keys() - merged
        touching_rest = sum(sum(self._cross[i].values()) for i in rest) - self._cross_within(rest)
        return self._between - touching_rest

    def _evaluate(self, w: int) -> tuple[set[int], int, int, set[int], int]:
        neighbors = self._g.neighbor_set(w)
        uncovered = self._state.uncovered_neighbors(w)
        merged = self._merged_by(neighbors)

        merged_size = sum(len(self._parts[i]) for i in merged)
        into_merged = sum(len(uncovered & self._parts[i]) for i in merged)
        between = self._between - self._lost(merged) + len(uncovered & self.vertices) - into_merged
        cost = (self._cost - sum(_partition_cost(len(self._parts[i])) for i in merged)
                + _partition_cost(merged_size + 1))

        defaults = self.defaults & neighbors
        if len(defaults) <= len(self.vertices):
            to_defaults = sum(self._into_set[c] for c in defaults)
        else:
            to_defaults = sum(len(self._state.uncovered_neighbors(x) & defaults) for x in self.vertices)
        to_defaults += len(uncovered & defaults)
        return merged, between, cost, defaults, self._total(between, cost, defaults, to_defaults)


def next_multiclique(state: CoverState, g: MutexGraph) -> Multiclique:
    if not state:
        raise ValueError('next_multiclique needs at least one uncovered edge')

    first_vertex = max(g.vertices, key=lambda w: (count_uncovered_incident_edges(state, g, w), -w))
    growth = VertexSetGrowth(state, g, first_vertex)
    current = growth.score
    while True:
        best_vertex, best_score = None, None
        for w in g.vertices:
            if w in growth.vertices:
                continue
            candidate = growth.score_with(w)
            if best_score is None or candidate > best_score:
                best_vertex, best_score = w, candidate
        if best_vertex is None or best_score <= current:
            break
        logger.debug('adding vertex %d (score %d -> %d)', best_vertex, current, best_score)
        current = growth.add(best_vertex)

    mc = make_multiclique(g, growth.vertices | growth.defaults)
    if not any(v in state.uncovered_neighbors(u) for u, v in edges_covered_by(mc)):
        u, v = state.lowest_uncovered_edge()
        logger.warning('greedy step from vertex %d covered no new edge; falling back to edge (%d,%d)',
                       first_vertex, u, v)
        state.fallbacks += 1
        mc = Multiclique(((u,), (v,)))
    return mc


def _as_fraction(coverage_fraction: float | Fraction) -> Fraction:
    if isinstance(coverage_fraction, Fraction):
        return coverage_fraction
    return Fraction(coverage_fraction).limit_denominator(10 ** 6)


def find_cover(g: MutexGraph, coverage_fraction: float | Fraction = 1) -> Covering:
    fraction = _as_fraction(coverage_fraction)
    validator.validate_coverage_fraction(fraction)

    state = CoverState(g)
    covering = Covering(source=g, strategy=MULTICLIQUE, fraction=fraction)
    target = math.ceil(fraction * g.edge_count)
    while g.edge_count - state.remaining < target:
        mc = next_multiclique(state, g)
        covered = edges_covered_by(mc)
        state.mark_covered(covered)
        covering.add(mc)
        logger.info('multiclique %d: %d partitions, %d edges uncovered',
                    len(covering) - 1, len(mc), state.remaining)
    covering.fallbacks = state.fallbacks
    return covering


def naive_cover(g: MutexGraph) -> Covering:
    covering = Covering(source=g, strategy=NAIVE)
    for u, v in g.edges():
        covering.add(Multiclique(((u,), (v,))))
    return covering


def _biclique_reduction(first: int, second: int) -> int:
    # literals saved: 2 per covered edge, against 2 per member of the biclique clauses
    return 2 * first * second - 2 * (first + second)


def identify_biclique_cover(g: MutexGraph) -> Covering:
    """Cover with bicliques, removing each biclique's edges from a working graph.

    Each biclique starts as (empty, V); vertices move into the first part one
    at a time, the second part shrinking to their common neighbours, while the
    literal saving of the two-part SAT encoding strictly grows.
    """
    working = [set(g.neighbor_set(v)) for v in g.vertices]
    covering = Covering(source=g, strategy=BICLIQUE)
    remaining = g.edge_count
    while remaining:
        active = [v for v in g.vertices if working[v]]
        first_vertex = max(active, key=lambda w: (len(working[w]), -w))
        first, second = [first_vertex], set(working[first_vertex])
        current = _biclique_reduction(1, len(second))
        while True:
            best = None
            for w in active:
                if w in first:
                    continue
                shrunk = second & working[w]
                candidate = (_biclique_reduction(len(first) + 1, len(shrunk)), len(shrunk), -w)
                if best is None or candidate > best[0]:
                    best = (candidate, w, shrunk)
            if best is None or best[0][0] <= current:
                break
            (current, _, _), w, second = best
            first.append(w)

        mc = Multiclique((tuple(sorted(first)), tuple(sorted(second))))
        for u in first:
            working[u] -= second
            for v in second:
                working[v].discard(u)
        remaining -= len(first) * len(second)
        covering.add(mc)
    return covering


def cover_with(g: MutexGraph, baseline: str = MULTICLIQUE, coverage_fraction: float | Fraction = 1) -> Covering:
    match baseline:
        case 'multiclique':
            return find_cover(g, coverage_fraction)
        case 'biclique':
            return identify_biclique_cover(g)
        case 'naive':
            return naive_cover(g)
    raise ValueError(f'unknown baseline {baseline!r}; expected one of {", ".join(BASELINES)}')
