import pytest

from qpbw.fileformat import data_path, parse_presentation_file
from qpbw.presentations import Presentation


def load(name: str) -> Presentation:
    return parse_presentation_file(data_path(name))


@pytest.fixture
def uqsl3():
    return load("uqsl3.alg")


@pytest.fixture
def plane():
    return load("quantum_plane.alg")


@pytest.fixture
def qsym():
    return load("qsym_n3_t2.alg")


@pytest.fixture
def heisenberg():
    return load("quantum_heisenberg.alg")


@pytest.fixture
def line3():
    return load("truncated_line.alg")



def pytest_terminal_summary(terminalreporter):
    from .test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for num in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[num])
