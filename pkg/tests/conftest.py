import pytest

from tbcomplexity.triangulation import (
    build_figure_eight,
    build_sibling,
    cyclic_cover,
    transfer_cocycle,
)


@pytest.fixture(scope="session")
def figure_eight():
    return build_figure_eight()


@pytest.fixture(scope="session")
def sibling():
    return build_sibling()


def cover_of(tri, n):
    return cyclic_cover(tri, transfer_cocycle(tri), n)


@pytest.fixture(params=["figure_eight", "sibling"])
def base(request):
    return request.getfixturevalue(request.param)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
