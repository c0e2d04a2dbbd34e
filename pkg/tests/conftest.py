import contextlib

import numpy as np
import pytest
from hypothesis import strategies as st

from selphase import StateVector, kron


def random_product_state(m, rng):
    s = None
    for _ in range(m):
        v = StateVector.from_amplitudes(rng.normal(size=2) + 1j * rng.normal(size=2))
        s = v if s is None else kron(s, v)
    return s


def ghz(m):
    amps = np.zeros(1 << m, dtype=complex)
    amps[0] = amps[-1] = 2 ** -0.5
    return StateVector(m, amps)


finite_reals = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def phase_lists(m):
    return st.lists(st.floats(-20, 20, allow_nan=False), min_size=1 << m, max_size=1 << m)


_ACCEPTANCE_KEY = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion."""
    log = request.config.stash.setdefault(_ACCEPTANCE_KEY, [])

    @contextlib.contextmanager
    def record(label):
        try:
            yield
        except BaseException:
            log.append(f"FAIL  {label}")
            raise
        log.append(f"PASS  {label}")

    return record


def pytest_terminal_summary(terminalreporter, config):
    log = config.stash.get(_ACCEPTANCE_KEY, [])
    if log:
        terminalreporter.section("acceptance criteria")
        for line in log:
            terminalreporter.write_line(line)
