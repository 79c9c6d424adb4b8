"""Drive an external ASP solver over increasing makespans."""
import logging
import shlex
import subprocess
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from core import validator
from core.config import settings
from core.exceptions import NoPlanError, SolverError
from multicover.aspplan.program import MULTICLIQUE, SMART, emit_plan_program
from multicover.aspplan.validate import Plan, extract_plan, validate_plan
from multicover.cover import Covering
from multicover.planning.planning_graph import first_appearance_layers
from multicover.planning.strips import StripsProblem

logger = logging.getLogger(__name__)

SATISFIABLE = 'SATISFIABLE'
UNSATISFIABLE = 'UNSATISFIABLE'


@dataclass
class SolverResult:
    satisfiable: bool
    models: list[list[str]] = field(default_factory=list)

    @property
    def atoms(self) -> list[str]:
        return self.models[0] if self.models else []


def parse_solver_output(output: str) -> SolverResult:
    models: list[list[str]] = []
    verdict = None
    lines = iter(output.splitlines())
    for line in lines:
        line = line.strip()
        if line.startswith('Answer:'):
            models.append(next(lines, '').split())
        elif line in (SATISFIABLE, UNSATISFIABLE):
            verdict = line
    if verdict is None:
        raise SolverError('Solver output reports neither SATISFIABLE nor UNSATISFIABLE.')
    if verdict == SATISFIABLE and not models:
        raise SolverError('Solver reported SATISFIABLE without printing a model.')
    return SolverResult(satisfiable=verdict == SATISFIABLE, models=models)


def run_solver(program_text: str, solver_cmd: str | None = None, extra_args: tuple[str, ...] = ()) -> SolverResult:
    solver_cmd = solver_cmd or settings.SOLVER_CMD
    validator.validate_solver_command(solver_cmd)

    with tempfile.TemporaryDirectory() as directory:
        path = Path(directory) / 'program.lp'
        path.write_text(program_text, encoding='utf-8')
        command = [*shlex.split(solver_cmd), str(path), *extra_args]
        logger.debug('running %s', ' '.join(command))
        try:
            completed = subprocess.run(command, capture_output=True, text=True,
                                       timeout=settings.SOLVER_TIMEOUT_SECONDS)
        except subprocess.TimeoutExpired:
            raise SolverError(f'Solver timed out after {settings.SOLVER_TIMEOUT_SECONDS} seconds.')
        except OSError as e:
            raise SolverError(f'Could not start solver: {e}')

    known = settings.SOLVER_SAT_EXIT_CODES | settings.SOLVER_UNSAT_EXIT_CODES
    if completed.returncode not in known:
        message = completed.stderr.strip().splitlines()[-1:] or ['no diagnostics']
        raise SolverError(f'Solver exited with status {completed.returncode}: {message[0]}')

    result = parse_solver_output(completed.stdout)
    expected = settings.SOLVER_SAT_EXIT_CODES if result.satisfiable else settings.SOLVER_UNSAT_EXIT_CODES
    if completed.returncode not in expected:
        raise SolverError(f'Solver exit status {completed.returncode} contradicts its verdict.')
    return result


def solve_loop(p: StripsProblem, mutexes: Covering, solver_cmd: str | None = None,
               max_makespan: int | None = None, action_mode: str = SMART,
               fluent_mode: str = MULTICLIQUE) -> Plan:
    max_makespan = settings.MAX_MAKESPAN if max_makespan is None else max_makespan
    validator.validate_makespan_cap(max_makespan)
    layers = first_appearance_layers(p)
    start = layers.goal_layer(p.goal)

    for makespan in range(start, max_makespan + 1):
        logger.info('trying makespan %d', makespan)
        program = emit_plan_program(p, mutexes, makespan, action_mode, fluent_mode, layers=layers)
        result = run_solver(program.text, solver_cmd)
        if not result.satisfiable:
            continue

        plan = extract_plan(result.atoms, p, makespan)
        violation = validate_plan(p, plan)
        if violation is not None:
            raise SolverError(f'Solver returned an invalid plan: {violation}.')
        logger.info('plan found at makespan %d with %d actions', makespan, len(plan.actions))
        return plan

    raise NoPlanError(f'No plan within makespan cap {max_makespan}.')
