import pytest

from fracjump.worked import example_function


@pytest.fixture(params=[1, 2, 3, 4, 5])
def example_n(request):
    return request.param


@pytest.fixture
def ex1():
    return example_function(1)


@pytest.fixture
def ex2():
    return example_function(2)


@pytest.fixture
def ex3():
    return example_function(3)


@pytest.fixture
def ex4():
    return example_function(4)


@pytest.fixture
def ex5():
    return example_function(5)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(RESULTS):
        ok, line = RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {key} {line}")
