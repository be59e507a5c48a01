import pytest

from filtersynth import butterworth, chebyshev, stages_from_poles, validate_spec

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def ref_spec():
    return validate_spec(0.5, 100.0, 20.0, 200.0)


@pytest.fixture(scope="session")
def bw(ref_spec):
    return butterworth.design(ref_spec)


@pytest.fixture(scope="session")
def cheb(ref_spec):
    return chebyshev.design(ref_spec)


@pytest.fixture(scope="session")
def bw_tf(bw):
    return stages_from_poles(bw)


@pytest.fixture(scope="session")
def cheb_tf(cheb):
    return stages_from_poles(cheb)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
