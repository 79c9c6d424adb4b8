import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from core import validator
from core.config import settings
from core.exceptions import InputError, ToolkitException
from multicover import encode, schemas, serializer
from multicover.aspplan.program import MULTICLIQUE as MULTICLIQUE_MUTEXES, RULE4, RULE5, SMART
from multicover.aspplan.solver import solve_loop
from multicover.aspplan.validate import Plan
from multicover.cover import BICLIQUE, MULTICLIQUE, NAIVE, Covering, cover_with
from multicover.graph import MutexGraph
from multicover.planning import parse_pddl
from multicover.planning.planning_graph import MutexPair, eventual_fluent_mutexes, mutex_graph_of, prune_to_needed
from multicover.planning.strips import StripsProblem

logger = logging.getLogger(__name__)


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise InputError(f'Cannot read {path}: {e.strerror or e}.')


def write_text(path: str | Path, text: str):
    try:
        Path(path).write_text(text, encoding='utf-8')
    except OSError as e:
        raise InputError(f'Cannot write {path}: {e.strerror or e}.')


def load_graph(path: str | Path) -> MutexGraph:
    return serializer.read_graph(read_text(path), source=str(path))


def load_problem(domain_path: str | Path, problem_path: str | Path, neededness: bool = False) -> StripsProblem:
    p = parse_pddl(read_text(domain_path), read_text(problem_path), str(domain_path), str(problem_path))
    logger.info('grounded %s: %d fluents, %d actions', p.name, len(p.fluents), len(p.actions))
    if neededness:
        p = prune_to_needed(p)
    return p


def symbols_of(g: MutexGraph) -> list[str]:
    return [label if label is not None else f'v{v}' for v, label in enumerate(g.labels)]


def compute_mutexes(p: StripsProblem, all_fluents: bool = False) -> tuple[MutexGraph, set[MutexPair]]:
    pairs, _ = eventual_fluent_mutexes(p, keep_layers=False)
    g = mutex_graph_of(pairs, p.fluents, all_fluents=all_fluents)
    logger.info('mutex graph: %d vertices, %d edges', g.vertex_count, g.edge_count)
    return g, pairs


def cover(g: MutexGraph, config: schemas.RunConfig) -> Covering:
    validator.validate_coverage_fraction(config.coverage_fraction)
    return cover_with(g, config.baseline, config.coverage_fraction)


def encode_covering(c: Covering) -> tuple[list[encode.AspRule], schemas.EncodingStats]:
    """Constraint program for a covering, with the stats of the encoding its strategy stands for."""
    symbols = symbols_of(c.source)
    if c.strategy == NAIVE:
        return encode.emit_naive_program(c.source, symbols)
    rules, stats = encode.emit_multiclique_program(c, symbols)
    if c.strategy == BICLIQUE:
        stats = encode.biclique_sat_stats(c)
    return rules, stats


def write_stats(stats: schemas.EncodingStats, config: schemas.RunConfig):
    if config.stats_json:
        write_text(config.stats_json, serializer.stats_json(stats))
    if config.stats_csv:
        write_text(config.stats_csv, serializer.stats_csv(stats))


def plan(p: StripsProblem, config: schemas.RunConfig) -> Plan:
    g, _ = compute_mutexes(p, all_fluents=config.all_fluents)
    mutexes = cover_with(g, MULTICLIQUE, config.coverage_fraction)
    action_mode, fluent_mode = (RULE4, RULE5) if config.naive else (SMART, MULTICLIQUE_MUTEXES)
    return solve_loop(p, mutexes, config.solver_cmd, config.max_makespan, action_mode, fluent_mode)


def _instance_graph(line: str, base: Path, neededness: bool) -> MutexGraph:
    paths = [base / part for part in line.split()]
    match paths:
        case [graph_path]:
            return load_graph(graph_path)
        case [domain_path, problem_path]:
            g, _ = compute_mutexes(load_problem(domain_path, problem_path, neededness))
            return g
        case _:
            raise InputError(f'Instance line {line!r} must name a graph file or a domain and a problem file.')


def bench_instance(line: str, base: Path, neededness: bool = False,
                   cutoff: float = settings.CUTOFF_FRACTION) -> schemas.BenchRow:
    row = schemas.BenchRow(instance=line)
    started = time.perf_counter()
    try:
        g = _instance_graph(line, base, neededness)
        _, full = encode_covering(cover_with(g, MULTICLIQUE))
        cut_cover = cover_with(g, MULTICLIQUE, cutoff)
        _, cut = encode_covering(cut_cover)
        biclique = encode.biclique_sat_stats(cover_with(g, BICLIQUE))
        row = schemas.BenchRow(
            instance=line,
            edges=g.edge_count,
            rules=full.rules,
            literals=full.literals,
            edges_cut=cut.edges_covered,
            rules_cut=cut.rules,
            literals_cut=cut.literals,
            biclique_literals=biclique.literals,
        )
    except ToolkitException as e:
        logger.warning('instance %s failed: %s', line, e.detail)
        row.error = e.detail
    row.time_ms = round((time.perf_counter() - started) * 1000)
    return row


def read_instance_list(path: str | Path) -> list[str]:
    lines = (raw.split('#', 1)[0].strip() for raw in read_text(path).splitlines())
    return [line for line in lines if line]


def bench(list_path: str | Path, config: schemas.RunConfig) -> list[schemas.BenchRow]:
    instances = read_instance_list(list_path)
    base = Path(list_path).parent
    args = [(line, base, config.neededness, settings.CUTOFF_FRACTION) for line in instances]
    if config.jobs > 1 and len(instances) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(bench_instance, *zip(*args)))
    return [bench_instance(*arg) for arg in args]
