import numpy as np
import pytest

from rpsdist import PermutationMassFunction, enumerate_pes

_CRITERIA: list[tuple[str, bool, str]] = []


def pytest_addoption(parser):
    parser.addoption("--run-long", action="store_true", default=False,
                     help="run long checks (1956-dimensional eigenproblems)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long"):
        return
    skip = pytest.mark.skip(reason="needs --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance check for the terminal summary."""
    def record(ok: bool, detail: str = ""):
        _CRITERIA.append((request.node.name, bool(ok), detail))
    return record


def random_pmf(rng: np.random.Generator, n: int, max_focal: int = 6) -> PermutationMassFunction:
    events = enumerate_pes(n)
    k = int(rng.integers(1, min(max_focal, len(events)) + 1))
    picks = rng.choice(len(events), size=k, replace=False)
    masses = rng.dirichlet(np.ones(k))
    masses /= masses.sum()
    return PermutationMassFunction(n, {events[i]: float(m) for i, m in zip(picks, masses)})


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
