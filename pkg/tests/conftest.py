import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from bellconc.states import RngStream, random_mixed

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

seeds = st.integers(min_value=0, max_value=2**63 - 1)
ranks = st.sampled_from([1, 2, 3, 4])


@st.composite
def mixed_states(draw):
    return random_mixed(draw(ranks), RngStream(draw(seeds)))


@pytest.fixture
def rng():
    return RngStream(20240611)


def eigvals_oracle(rho):
    """sqrt(lambda_n) from the general (non-Hermitian) eigensolver on rho rho~."""
    yy = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])
    lam = np.linalg.eigvals(rho @ yy @ rho.conj() @ yy).real
    return np.sort(np.sqrt(np.clip(lam, 0.0, None)))[::-1]


_ACCEPTANCE_LINES = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; call with (passed, detail)."""

    def record(passed, detail):
        name = request.node.name.removeprefix("test_")
        _ACCEPTANCE_LINES.append(f"{'PASS' if passed else 'FAIL'}  {name}: {detail}")
        assert passed, detail

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
