from core import status


class ToolkitException(Exception):
    status_code: int = status.EXIT_2_INPUT_ERROR

    def __init__(self, detail: str, status_code: int | None = None):
        super().__init__(detail)
        self.detail = detail
        if status_code is not None:
            self.status_code = status_code

    def __str__(self):
        return self.detail


class InputError(ToolkitException):
    pass


class PddlSyntaxError(InputError):

    def __init__(self, message: str, line: int, column: int, source: str = 'pddl'):
        super().__init__(f'{source}:{line}:{column}: {message}')
        self.line = line
        self.column = column


class UnsupportedRequirementError(InputError):
    pass


class UnreachableGoalError(InputError):
    pass


class EncodingError(ToolkitException):
    pass


class SolverError(ToolkitException):
    status_code = status.EXIT_3_SOLVER_ERROR


class NoPlanError(ToolkitException):
    status_code = status.EXIT_10_NO_PLAN
