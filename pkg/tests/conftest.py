import pytest

from einstein5.certifier import FamilyParams, build_family
from einstein5.picard import blowup_lattice


@pytest.fixture
def family6():
    """The k = 6 bundle: (3, 1) on the fiber curve, (5, 1) on the graph curve, B = 0."""
    return build_family(FamilyParams(6, 3, 5))[1]


@pytest.fixture
def lattice5():
    return blowup_lattice(5)


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        n = int(report.nodeid.split("test_criterion_")[1].split("_")[0])
        _acceptance.setdefault(n, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    from test_acceptance import CRITERIA

    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        status = "PASS" if all(_acceptance[n]) else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {n}: {CRITERIA[n]}")
