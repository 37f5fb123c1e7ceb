import pytest

from psi_overlap.vertexlp import max_pairwise_min_overlap, max_uniform_omega

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def omega3():
    return max_uniform_omega(3)


@pytest.fixture(scope="session")
def omega3_plain():
    return max_uniform_omega(3, distinguishing=False)


@pytest.fixture(scope="session")
def minoverlap3():
    """max_pairwise_min_overlap for every unordered pair of the d=3 family."""
    labels = ["a", "b", "c", "p", "m"]
    return {(x, y): max_pairwise_min_overlap(x, y, 3) for i, x in enumerate(labels) for y in labels[i + 1:]}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
