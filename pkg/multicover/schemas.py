from pydantic import BaseModel, validator

from core.config import settings


class EncodingStats(BaseModel):
    edges: int = 0
    rules: int
    literals: int
    edges_covered: int = 0


class RunConfig(BaseModel):
    command: str
    coverage_fraction: float = settings.COVERAGE_FRACTION
    baseline: str = 'multiclique'
    neededness: bool = False
    solver_cmd: str | None = None
    max_makespan: int = settings.MAX_MAKESPAN
    naive: bool = False
    all_fluents: bool = False
    jobs: int = settings.BENCH_JOBS
    output: str | None = None
    stats_json: str | None = None
    stats_csv: str | None = None

    @validator('command')
    def command_is_known(cls, v):
        if v not in ('cover', 'encode', 'mutexgraph', 'plan', 'bench'):
            raise ValueError(f'unknown command {v}')
        return v

    @validator('coverage_fraction')
    def fraction_in_range(cls, v):
        if not 0 < v <= 1:
            raise ValueError('coverage fraction must lie in (0, 1]')
        return v

    @validator('baseline')
    def baseline_is_known(cls, v):
        if v not in ('multiclique', 'biclique', 'naive'):
            raise ValueError(f'unknown baseline {v}')
        return v

    @validator('max_makespan', 'jobs')
    def non_negative(cls, v):
        if v < 0:
            raise ValueError('must be non-negative')
        return v


class BenchRow(BaseModel):
    instance: str
    edges: int | None = None
    rules: int | None = None
    literals: int | None = None
    edges_cut: int | None = None
    rules_cut: int | None = None
    literals_cut: int | None = None
    biclique_literals: int | None = None
    time_ms: int | None = None
    error: str = ''


class MutexPairs(BaseModel):
    pairs: list[tuple[str, str]] = []


class PlanStep(BaseModel):
    layer: int
    actions: list[str] = []


class PlanOut(BaseModel):
    makespan: int
    steps: list[PlanStep] = []
