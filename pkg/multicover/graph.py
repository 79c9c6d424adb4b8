"""Undirected mutex graphs over dense integer vertex ids.

Vertices are ``0..n-1``; an optional label table maps each vertex to the
fluent term it stands for. Graphs are immutable once built, and every
iteration order is ascending by vertex id.
"""
from collections.abc import Iterable, Iterator, Sequence

import networkx as nx

from core import validator

Edge = tuple[int, int]


def canonical(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class MutexGraph:
    __slots__ = ('vertex_count', '_adjacency', '_labels', 'origin')

    def __init__(self,
                 vertex_count: int,
                 adjacency: Sequence[frozenset[int]],
                 labels: Sequence[str | None] | None = None,
                 origin: Sequence[int] | None = None):
        self.vertex_count = vertex_count
        self._adjacency: tuple[frozenset[int], ...] = tuple(adjacency)
        self._labels: tuple[str | None, ...] = tuple(labels) if labels is not None else (None,) * vertex_count
        # id in the parent graph for each vertex of an induced subgraph
        self.origin: tuple[int, ...] = tuple(origin) if origin is not None else tuple(range(vertex_count))

    def __repr__(self):
        return f'MutexGraph(vertex_count={self.vertex_count}, edge_count={self.edge_count})'

    def __eq__(self, other):
        if not isinstance(other, MutexGraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self._adjacency == other._adjacency

    def __hash__(self):
        return hash((self.vertex_count, self._adjacency))

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def edge_count(self) -> int:
        return sum(len(neighbors) for neighbors in self._adjacency) // 2

    @property
    def labels(self) -> tuple[str | None, ...]:
        return self._labels

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._adjacency[v]

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adjacency[v])

    def degree(self, v: int) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjacency[u]

    def edges(self) -> Iterator[Edge]:
        for u in self.vertices:
            for v in sorted(self._adjacency[u]):
                if v > u:
                    yield u, v

    def label(self, v: int) -> str | None:
        return self._labels[v]


def build_graph(n: int, edges: Iterable[Edge], labels: Sequence[str | None] | None = None) -> MutexGraph:
    adjacency: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        validator.validate_edge(n, u, v)
        adjacency[u].add(v)
        adjacency[v].add(u)
    if labels is not None and len(labels) != n:
        raise ValueError(f'expected {n} labels, got {len(labels)}')
    return MutexGraph(n, [frozenset(neighbors) for neighbors in adjacency], labels)


def complement(g: MutexGraph) -> MutexGraph:
    everything = frozenset(g.vertices)
    adjacency = [everything - g.neighbor_set(v) - {v} for v in g.vertices]
    return MutexGraph(g.vertex_count, adjacency, g.labels, g.origin)


def induced_subgraph(g: MutexGraph, vs: Iterable[int]) -> MutexGraph:
    order = sorted(set(vs))
    validator.validate_vertices(g.vertex_count, order)
    position = {v: i for i, v in enumerate(order)}
    adjacency = [frozenset(position[w] for w in g.neighbor_set(v) if w in position) for v in order]
    labels = [g.label(v) for v in order]
    return MutexGraph(len(order), adjacency, labels, origin=order)


def to_networkx(g: MutexGraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(g.edges())
    return graph


def connected_components(g: MutexGraph) -> list[list[int]]:
    """Components ordered by their smallest vertex, members ascending."""
    return sorted(sorted(component) for component in nx.connected_components(to_networkx(g)))
