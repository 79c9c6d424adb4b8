import shutil
from pathlib import Path

import pytest

from core.config import settings
from multicover import pipeline
from multicover.graph import build_graph

DATA = Path(__file__).parent / 'data'

A, B, C, D, E = range(5)
SAMPLE_EDGES = [(A, B), (A, C), (A, E), (B, C), (B, E), (C, D), (C, E), (D, E)]

requires_solver = pytest.mark.skipif(
    shutil.which(settings.SOLVER_CMD.split()[0]) is None,
    reason=f'{settings.SOLVER_CMD} is not on PATH',
)


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: large synthetic instances, deselect with -m "not slow"')


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def sample():
    return build_graph(5, SAMPLE_EDGES, list('abcde'))


@pytest.fixture
def ferry():
    return pipeline.load_problem(DATA / 'ferry' / 'domain.pddl', DATA / 'ferry' / 'problem.pddl')


def write_fake_solver(directory: Path, body: str) -> str:
    """Executable shell script standing in for the solver; ``$1`` is the program file."""
    script = directory / 'fake-solver'
    script.write_text(f'#!/bin/sh\n{body}\n')
    script.chmod(0o755)
    return str(script)
