from multicover.aspplan.program import PlanProgram, emit_plan_program
from multicover.aspplan.solver import SolverResult, parse_solver_output, run_solver, solve_loop
from multicover.aspplan.validate import (
    CONFLICTING_EFFECTS,
    FLUENT_USE,
    GOAL,
    PRECONDITION,
    Plan,
    PlanViolation,
    extract_plan,
    split_arguments,
    validate_plan,
)
