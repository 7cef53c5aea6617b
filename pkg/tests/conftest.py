import numpy as np
import pytest
from hypothesis import strategies as st

from polphase import FieldState, PolarizationState


def random_field(rng: np.random.Generator, cutoff: int, pure: bool = True) -> FieldState:
    if pure:
        v = rng.normal(size=cutoff + 1) + 1j * rng.normal(size=cutoff + 1)
        return FieldState.pure(v / np.linalg.norm(v))
    g = rng.normal(size=(cutoff + 1, 3)) + 1j * rng.normal(size=(cutoff + 1, 3))
    rho = g @ g.conj().T
    return FieldState.mixed(rho / np.trace(rho).real)


def random_polarization(rng: np.random.Generator) -> PolarizationState:
    g = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    rho = g @ g.conj().T
    return PolarizationState(rho / np.trace(rho).real)


seeds = st.integers(min_value=0, max_value=2**32 - 1)
cutoffs = st.integers(min_value=0, max_value=12)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


#: (criterion id, title, passed, detail) lines recorded by test_acceptance
ACCEPTANCE_LINES: list[tuple[int, str, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for cid, title, ok, detail in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {cid:2d}. {title}: {detail}")
