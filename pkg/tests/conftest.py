import numpy as np
import pytest

from pdsets import kernels

_CRITERIA: dict[int, list[tuple[str, str]]] = {}
_TITLES: dict[int, str] = {}


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile numba kernels once so timed criteria measure work, not JIT."""
    a = np.array([0, 1, 3, 7, 12, 20], dtype=np.int64)
    kernels.sidon_collision_numba(a)
    kernels.greedy_pairs_numba(5)
    kernels.first_in_sumset_numba(a, a)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    crit = getattr(report, "criterion", None)
    if crit is None:
        return
    _CRITERIA.setdefault(crit[0], []).append((report.outcome, report.nodeid.split("::")[-1]))
    _TITLES.setdefault(crit[0], crit[1])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CRITERIA):
        outcomes = _CRITERIA[num]
        failed = [name for o, name in outcomes if o != "passed"]
        verdict = "FAIL" if failed else "PASS"
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  {_TITLES[num]}")
        for name in failed:
            terminalreporter.write_line(f"              failed: {name}")
