import pytest

from transference.model import make_product, make_sphere, make_su2


@pytest.fixture(scope="session")
def su2():
    return make_su2()


@pytest.fixture(scope="session")
def s2():
    return make_sphere(2)


@pytest.fixture(scope="session")
def s3():
    return make_sphere(3)


@pytest.fixture(scope="session")
def s2xs2():
    return make_product(make_sphere(2), make_sphere(2))


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
