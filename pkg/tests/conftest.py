import numpy as np
import pytest

from fracident import PAPER_MODEL, SampledSignal, simulate_step_response
from fracident.pipeline import ExperimentSpec, run_experiment

T = 0.001


@pytest.fixture(scope="session")
def paper_response():
    """Clean unit-step response of 1/(0.8 s^2.23 + 0.5 s^0.88 + 1), T = 1 ms, 10 s."""
    return simulate_step_response(PAPER_MODEL, 10.0, T)


@pytest.fixture(scope="session")
def unit_step():
    return SampledSignal(np.ones(10001), T)


@pytest.fixture(scope="session")
def table2_report():
    """Ten seeded complete identifications with the published swarm settings."""
    return run_experiment(ExperimentSpec("table-2", seed=0, seeds=10))


_CRITERIA: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, text = marker.args
    entry = _CRITERIA.setdefault(number, [text, True, []])
    if report.when == "call" or report.failed:
        if report.failed:
            entry[1] = False
            entry[2].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA, key=lambda n: (int(str(n).rstrip("abc")), str(n))):
        text, ok, failed = _CRITERIA[number]
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {text}"
        if failed:
            line += f"  (failed: {', '.join(failed)})"
        terminalreporter.write_line(line)
