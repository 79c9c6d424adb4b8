import csv
import io
import json
import re
from collections.abc import Iterable
from typing import NoReturn

from core import validator
from core.exceptions import InputError
from multicover import schemas
from multicover.aspplan.validate import Plan
from multicover.cover import Covering, Multiclique
from multicover.graph import MutexGraph, build_graph
from multicover.planning.planning_graph import MutexPair

BENCH_HEADER = ['Instance', 'Edges', 'CL', 'Lit', 'Edges*', 'CL*', 'Lit*', 'R-Lit', 'time_ms', 'error']
STATS_HEADER = ['Edges', 'Covered', 'CL', 'Lit']

_PARTITION = re.compile(r'\{([^{}]*)\}')


def _fail(source: str, line_no: int, message: str) -> NoReturn:
    raise InputError(f'{source}:{line_no}: {message}')


def _ints(source: str, line_no: int, fields: list[str]) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        _fail(source, line_no, f'expected integers, got {" ".join(fields)!r}')


def read_graph(text: str, source: str = 'graph') -> MutexGraph:
    header, edges, labels = None, [], {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        kind, *fields = line.split()
        match kind:
            case 'p':
                if header is not None:
                    _fail(source, line_no, 'duplicate header line')
                if len(fields) != 2:
                    _fail(source, line_no, 'header must be "p <n> <m>"')
                header = _ints(source, line_no, fields)
            case 'e':
                if header is None:
                    _fail(source, line_no, 'edge before header line')
                if len(fields) != 2:
                    _fail(source, line_no, 'edge must be "e <u> <v>"')
                u, v = _ints(source, line_no, fields)
                try:
                    validator.validate_edge(header[0], u, v)
                except InputError as e:
                    _fail(source, line_no, e.detail)
                edges.append((u, v))
            case 'l':
                if header is None:
                    _fail(source, line_no, 'label before header line')
                if len(fields) != 2:
                    _fail(source, line_no, 'label must be "l <v> <symbol>"')
                v, = _ints(source, line_no, fields[:1])
                if not 0 <= v < header[0]:
                    _fail(source, line_no, f'label for unknown vertex {v}')
                labels[v] = fields[1]
            case _:
                _fail(source, line_no, f'unknown line type {kind!r}')

    if header is None:
        raise InputError(f'{source}: missing "p <n> <m>" header')
    n, m = header
    g = build_graph(n, edges, [labels.get(v) for v in range(n)] if labels else None)
    if g.edge_count != m:
        raise InputError(f'{source}: header declares {m} edges, found {g.edge_count} distinct edges')
    return g


def write_graph(g: MutexGraph) -> str:
    lines = [f'p {g.vertex_count} {g.edge_count}']
    lines.extend(f'e {u} {v}' for u, v in g.edges())
    lines.extend(f'l {v} {g.label(v)}' for v in g.vertices if g.label(v) is not None)
    return ''.join(f'{line}\n' for line in lines)


def write_covering(c: Covering) -> str:
    return ''.join(
        'm ' + ' '.join('{' + ','.join(map(str, partition)) + '}' for partition in mc.partitions) + '\n'
        for mc in c.multicliques
    )


def read_covering(text: str, g: MutexGraph, source: str = 'covering', strategy: str = 'multiclique') -> Covering:
    covering = Covering(source=g, strategy=strategy)
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        if not line.startswith('m '):
            _fail(source, line_no, 'expected "m {..} {..}"')
        partitions = []
        for body in _PARTITION.findall(line):
            members = _ints(source, line_no, [x for x in body.split(',') if x.strip()])
            try:
                validator.validate_vertices(g.vertex_count, members)
            except InputError as e:
                _fail(source, line_no, e.detail)
            partitions.append(tuple(members))
        try:
            mc = Multiclique(tuple(partitions))
        except ValueError as e:
            _fail(source, line_no, str(e))
        if not mc.is_valid_for(g):
            _fail(source, line_no, 'multiclique includes a non-edge')
        covering.add(mc)
    return covering


def stats_json(stats: schemas.EncodingStats) -> str:
    return stats.json() + '\n'


def stats_csv(stats: schemas.EncodingStats) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(STATS_HEADER)
    writer.writerow([stats.edges, stats.edges_covered, stats.rules, stats.literals])
    return buffer.getvalue()


def bench_csv(rows: Iterable[schemas.BenchRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(BENCH_HEADER)
    for row in rows:
        values = [row.instance, row.edges, row.rules, row.literals, row.edges_cut,
                  row.rules_cut, row.literals_cut, row.biclique_literals, row.time_ms, row.error]
        writer.writerow(['' if value is None else value for value in values])
    return buffer.getvalue()


def mutex_pairs_json(pairs: Iterable[MutexPair]) -> str:
    model = schemas.MutexPairs(pairs=[(pair.f, pair.g) for pair in sorted(pairs)])
    return json.dumps(model.dict()['pairs']) + '\n'


def serialize_plan(plan: Plan) -> schemas.PlanOut:
    return schemas.PlanOut(
        makespan=plan.makespan,
        steps=[schemas.PlanStep(layer=k, actions=sorted(step)) for k, step in enumerate(plan.steps)],
    )


def write_plan(plan: Plan) -> str:
    out = serialize_plan(plan)
    return ''.join(f'{step.layer}: {" ".join(step.actions)}'.rstrip() + '\n' for step in out.steps)
