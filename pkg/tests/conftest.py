"""Shared fixtures and the acceptance-criteria terminal report."""

import numpy as np
import pytest

# number -> (passed, one-line detail); filled by tests/test_acceptance.py
_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def criterion_report():
    """Record a pass/fail verdict for one numbered acceptance criterion."""

    def record(number: int, passed: bool, detail: str) -> None:
        _CRITERIA[number] = (bool(passed), detail)

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        passed, detail = _CRITERIA[number]
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status} - {detail}")


@pytest.fixture
def rng():
    return np.random.default_rng(20260824)


def random_density_matrix(rng, n: int) -> np.ndarray:
    """Random full-rank density matrix (Hermitian, unit trace, positive)."""
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real
