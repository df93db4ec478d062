import pytest

from rrcodes.gf import field_new
from rrcodes.quotient import make_context
from rrcodes.ring_r import RElem


@pytest.fixture(scope="session")
def F7():
    return field_new(7)


@pytest.fixture(scope="session")
def F4():
    return field_new(2, 2)


@pytest.fixture(scope="session")
def nc_v(F7):
    return make_context(F7, 1, RElem.of(F7, 2, 0, 3, 5))


@pytest.fixture(scope="session")
def nc_full(F7):
    return make_context(F7, 1, RElem.of(F7, 2, 1, 3, 5))


@pytest.fixture(scope="session")
def nc_full_even(F4):
    return make_context(F4, 1, RElem(F4.gen, F4.one, F4.one, F4.zero))


@pytest.fixture(scope="session")
def nc_uv(F7):
    return make_context(F7, 1, RElem.of(F7, 2, 0, 0, 5))


@pytest.fixture(scope="session")
def nc_u(F7):
    return make_context(F7, 1, RElem.of(F7, 2, 1, 0, 5))


# criterion number -> (passed, detail), filled in by test_acceptance
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
