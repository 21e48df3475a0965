"""Shared Monte Carlo runs. Each is computed once per session and reused."""

import pytest

from gelfand_lab.sampling import ExperimentConfig, median_sup_distance, run_experiment

MC_N = 1000
MC_TRIALS = 2000
MC_SEED = 20240601
SWEEP_NS = (250, 500, 1000, 2000)
SWEEP_SAMPLES = 200


@pytest.fixture(scope="session")
def gelfand_run():
    return run_experiment(ExperimentConfig("gelfand", MC_N, MC_TRIALS, MC_SEED))


@pytest.fixture(scope="session")
def plancherel_run():
    return run_experiment(ExperimentConfig("plancherel", MC_N, MC_TRIALS, MC_SEED + 1))


@pytest.fixture(scope="session")
def sup_sweep():
    return {n: median_sup_distance("gelfand", n, SWEEP_SAMPLES, MC_SEED + n) for n in SWEEP_NS}


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(index: int, title: str, passed: bool, detail: str) -> None:
    line = f"[criterion {index:>2}] {'PASS' if passed else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
