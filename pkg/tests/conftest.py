import pathlib

import pytest

from aspexplain.aspif import parse_aspif
from aspexplain.ground import reconstruct

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def p1_text() -> str:
    return (DATA / "p1.aspif").read_text()


@pytest.fixture(scope="session")
def p1_program(p1_text):
    return parse_aspif(p1_text)


@pytest.fixture(scope="session")
def p1(p1_program):
    return reconstruct(p1_program)


@pytest.fixture(scope="session")
def p1_answer(p1):
    names = (DATA / "p1_answer.txt").read_text().split()
    return p1.answer_from_names(names)


@pytest.fixture(scope="session")
def coloring_text() -> str:
    return (DATA / "coloring.aspif").read_text()


@pytest.fixture(scope="session")
def coloring(coloring_text):
    return reconstruct(parse_aspif(coloring_text))


@pytest.fixture(scope="session")
def coloring_answer(coloring):
    names = (DATA / "coloring_answer.txt").read_text().split()
    return coloring.answer_from_names(names)


def pytest_runtest_logreport(report):
    if report.when != "call" or "test_acceptance" not in report.nodeid:
        return
    label = report.nodeid.rsplit("::", 1)[-1]
    outcome = "PASS" if report.passed else "FAIL"
    print(f"\nACCEPTANCE {label}: {outcome}", flush=True)
