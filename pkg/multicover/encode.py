"""Compile coverings into ASP constraint programs and count their size.

Programs are parameterised by the layer variable ``T``; rule and literal
counts are for one layer. Guard atoms such as ``step(T)`` are not counted.
"""
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from core.exceptions import EncodingError
from multicover.cover import Covering, Multiclique
from multicover.graph import MutexGraph
from multicover.schemas import EncodingStats

HOLDS = 'holds'
PARTITION = 'partition'

# ('holds', vertex) or ('partition', (multiclique index, partition index))
Atom = tuple[str, object]


@dataclass(frozen=True)
class AspRule:
    text: str
    literal_count: int
    head: Atom | None = None
    body: tuple[Atom, ...] = ()

    @property
    def is_constraint(self) -> bool:
        return self.head is None


def _symbol(symbols: Sequence[str | None], v: int) -> str:
    name = symbols[v] if v < len(symbols) else None
    if not name:
        raise EncodingError(f'Vertex {v} has no fluent symbol.')
    return name


def _atom_text(atom: Atom, symbols: Sequence[str | None]) -> str:
    kind, value = atom
    if kind == HOLDS:
        return f'holds({_symbol(symbols, value)},T)'
    i, j = value
    return f'partitionHolds(part({i},{j}),T)'


def _binary_constraint(u: int, v: int, symbols: Sequence[str | None]) -> AspRule:
    first, second = sorted((u, v), key=lambda x: _symbol(symbols, x))
    body = ((HOLDS, first), (HOLDS, second))
    text = f':- {_atom_text(body[0], symbols)}; {_atom_text(body[1], symbols)}.'
    return AspRule(text=text, literal_count=2, body=body)


def stats_of(rules: Sequence[AspRule], edges: int = 0, edges_covered: int = 0) -> EncodingStats:
    return EncodingStats(
        edges=edges,
        rules=len(rules),
        literals=sum(rule.literal_count for rule in rules),
        edges_covered=edges_covered,
    )


def multiclique_rules(index: int, mc: Multiclique, symbols: Sequence[str | None]) -> list[AspRule]:
    if len(mc) < 2:
        raise EncodingError(f'Multiclique {index} has fewer than two partitions.')
    if len(mc) == 2 and all(len(p) == 1 for p in mc.partitions):
        (u,), (v,) = mc.partitions
        return [_binary_constraint(u, v, symbols)]

    rules = []
    elements: list[Atom] = []
    for j, partition in enumerate(mc.partitions):
        if len(partition) == 1:
            elements.append((HOLDS, partition[0]))
            continue
        head = (PARTITION, (index, j))
        for v in sorted(partition, key=lambda x: _symbol(symbols, x)):
            body = ((HOLDS, v),)
            text = f'{_atom_text(head, symbols)} :- {_atom_text(body[0], symbols)}.'
            rules.append(AspRule(text=text, literal_count=2, head=head, body=body))
        elements.append(head)

    listed = '; '.join(_atom_text(atom, symbols) for atom in elements)
    rules.append(AspRule(text=f':- {{{listed}}} > 1; step(T).', literal_count=len(elements), body=tuple(elements)))
    return rules


def emit_multiclique_program(c: Covering, symbols: Sequence[str | None]) -> tuple[list[AspRule], EncodingStats]:
    rules = []
    for index, mc in enumerate(c.multicliques):
        rules.extend(multiclique_rules(index, mc, symbols))
    return rules, stats_of(rules, edges=c.source.edge_count, edges_covered=len(c.covered))


def emit_naive_program(g: MutexGraph, symbols: Sequence[str | None]) -> tuple[list[AspRule], EncodingStats]:
    rules = [_binary_constraint(u, v, symbols) for u, v in g.edges()]
    return rules, stats_of(rules, edges=g.edge_count, edges_covered=g.edge_count)


def biclique_sat_stats(c: Covering) -> EncodingStats:
    clauses = 0
    for index, mc in enumerate(c.multicliques):
        if len(mc) != 2:
            raise EncodingError(f'Multiclique {index} has {len(mc)} partitions; biclique accounting needs exactly 2.')
        first, second = mc.partitions
        clauses += len(first) + len(second)
    return EncodingStats(edges=c.source.edge_count, rules=clauses, literals=2 * clauses, edges_covered=len(c.covered))


def program_text(rules: Iterable[AspRule]) -> str:
    return ''.join(f'{rule.text}\n' for rule in rules)


def enumerate_constraint_models(program: Sequence[AspRule], n: int) -> set[frozenset[int]]:
    """All one-layer ``holds`` assignments over ``n`` fluents that satisfy the program.

    Only the shapes emitted by this module are understood: definitions of
    partition atoms from a single ``holds`` atom, and constraints forbidding
    more than one true element.
    """
    if n > 15:
        raise ValueError(f'exhaustive enumeration is limited to 15 vertices, got {n}')

    definitions: dict[object, list[int]] = {}
    constraints: list[tuple[Atom, ...]] = []
    for rule in program:
        if rule.is_constraint:
            constraints.append(rule.body)
        else:
            (kind, v), = rule.body
            definitions.setdefault(rule.head[1], []).append(v)

    models = set()
    for mask in range(1 << n):
        def true(atom: Atom) -> bool:
            kind, value = atom
            if kind == HOLDS:
                return bool(mask >> value & 1)
            return any(mask >> v & 1 for v in definitions.get(value, ()))

        if all(sum(1 for atom in body if true(atom)) <= 1 for body in constraints):
            models.add(frozenset(v for v in range(n) if mask >> v & 1))
    return models
