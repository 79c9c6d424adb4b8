import os
from dotenv import load_dotenv
from pathlib import Path

env_path = Path('.') / '.env'
load_dotenv(dotenv_path=env_path)


def _int_set(value: str) -> frozenset[int]:
    return frozenset(int(code) for code in value.split(',') if code.strip())


class Settings:
    # project settings
    PROJECT_NAME: str = 'multicover'
    PROJECT_VERSION: str = '1.0.0'
    LOG_LEVEL: str = os.getenv('LOG_LEVEL', 'WARNING')

    # covering
    COVERAGE_FRACTION: float = float(os.getenv('COVERAGE_FRACTION', 1))
    CUTOFF_FRACTION: float = float(os.getenv('CUTOFF_FRACTION', 0.9))
    BENCH_JOBS: int = int(os.getenv('BENCH_JOBS', 1))

    # solver config
    SOLVER_CMD: str = os.getenv('SOLVER_CMD', 'clingo')
    SOLVER_SAT_EXIT_CODES: frozenset[int] = _int_set(os.getenv('SOLVER_SAT_EXIT_CODES', '10,30'))
    SOLVER_UNSAT_EXIT_CODES: frozenset[int] = _int_set(os.getenv('SOLVER_UNSAT_EXIT_CODES', '20'))
    SOLVER_TIMEOUT_SECONDS: int = int(os.getenv('SOLVER_TIMEOUT_SECONDS', 600))
    MAX_MAKESPAN: int = int(os.getenv('MAX_MAKESPAN', 50))

    # PDDL subset
    SUPPORTED_REQUIREMENTS: frozenset[str] = frozenset({':strips', ':typing'})


settings = Settings()
