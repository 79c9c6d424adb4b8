import shutil
from collections.abc import Iterable

from core.config import settings
from core.exceptions import InputError, SolverError, UnsupportedRequirementError


def validate_coverage_fraction(fraction: float):
    if not 0 < fraction <= 1:
        raise InputError(f'Coverage fraction must lie in (0, 1], got {fraction}.')


def validate_edge(vertex_count: int, u: int, v: int):
    if u == v:
        raise InputError(f'Self-loop ({u},{v}) is not a valid edge.')
    if not (0 <= u < vertex_count and 0 <= v < vertex_count):
        raise InputError(f'Edge ({u},{v}) has an endpoint outside 0..{vertex_count - 1}.')


def validate_vertices(vertex_count: int, vertices: Iterable[int]):
    unknown = sorted(v for v in vertices if not 0 <= v < vertex_count)
    if unknown:
        raise InputError(f'Unknown vertex {unknown[0]} (graph has {vertex_count} vertices).')


def validate_requirements(requirements: Iterable[str]):
    for requirement in requirements:
        if requirement.lower() not in settings.SUPPORTED_REQUIREMENTS:
            raise UnsupportedRequirementError(
                f'Unsupported PDDL requirement {requirement}; only :strips and :typing are accepted.'
            )


def validate_makespan_cap(max_makespan: int):
    if max_makespan < 0:
        raise InputError(f'Makespan cap must be non-negative, got {max_makespan}.')


def validate_solver_command(command: str):
    executable = command.split()[0] if command.strip() else ''
    if not executable or shutil.which(executable) is None:
        raise SolverError(f'Solver command {command!r} not found; set SOLVER_CMD or pass --solver.')
