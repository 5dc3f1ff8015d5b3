import pytest

from qgalois import make_algebra, make_params, preset
from qgalois.checks import Setting


@pytest.fixture(scope="session")
def a2():
    cartan = preset("A", 2)
    return Setting(cartan, make_params(2, {(0, 1): 3}, cartan))


@pytest.fixture(scope="session")
def U(a2):
    return make_algebra("U", a2.params, a2.cartan)


@pytest.fixture(scope="session")
def grU(a2):
    return make_algebra("grU", a2.params, a2.cartan)


@pytest.fixture(scope="session")
def A(a2):
    return make_algebra("Alambda", a2.params, a2.cartan)


_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: one of the ten acceptance criteria")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py::test_criterion_" in report.nodeid:
        lines = [ln for ln in report.capstdout.splitlines() if ln.startswith("criterion")]
        name = report.nodeid.split("::")[-1]
        _criteria[name] = lines[-1] if lines else f"{name} {'PASS' if report.passed else 'FAIL'}"


def pytest_terminal_summary(terminalreporter):
    if _criteria:
        terminalreporter.section("acceptance criteria")
        for name in sorted(_criteria):
            terminalreporter.write_line(_criteria[name])
