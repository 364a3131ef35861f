import pytest

from qrep.cli.workspace import bundled_path
from qrep.cli.formats import load_alg
from qrep.exact_linalg import FieldSpec, QQ

F5 = FieldSpec(5)

ACCEPTANCE = {}


def algebra(name, field=None):
    return load_alg(bundled_path(name), field)


@pytest.fixture(scope="session")
def A():
    return algebra("paper_A.alg")


@pytest.fixture(scope="session")
def A5():
    return algebra("paper_A.alg", F5)


@pytest.fixture(scope="session")
def A2():
    return algebra("linear_A2.alg")


@pytest.fixture(scope="session")
def loop():
    return algebra("one_loop.alg")


@pytest.fixture(scope="session")
def square():
    return algebra("square.alg")


@pytest.fixture(scope="session")
def kronecker():
    return algebra("kronecker.alg")


@pytest.fixture(scope="session")
def endo_ref():
    return algebra("paper_B.alg")


def pytest_runtest_logreport(report):
    crit = getattr(report, "acceptance", None)
    for key, value in report.user_properties:
        if key == "acceptance":
            crit = value
    if crit is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        ACCEPTANCE[crit] = report.outcome == "passed"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), ok in sorted(ACCEPTANCE.items()):
        terminalreporter.write_line(f"criterion {num:2d} [{'PASS' if ok else 'FAIL'}] {title}")
