import re

import numpy as np
import pytest

from spectrabound.matcore import is_irreducible


def eig_rho(B) -> float:
    """Independent oracle: largest eigenvalue modulus from a dense eigensolver."""
    return float(np.max(np.abs(np.linalg.eigvals(np.asarray(B, dtype=float)))))


def random_irreducible(rng, n_lo=2, n_hi=12, density_lo=0.3, entry_hi=5.0):
    """Random irreducible nonnegative matrix with zero diagonal, entries in (0, entry_hi]."""
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        p = rng.uniform(density_lo, 1.0)
        mask = rng.random((n, n)) < p
        np.fill_diagonal(mask, False)
        A = np.where(mask, entry_hi - rng.uniform(0.0, entry_hi, (n, n)), 0.0)
        if is_irreducible(A):
            return A


def random_bipartite_support(rng, n_lo=2, n_hi=12, density_lo=0.3, entry_hi=5.0):
    """Irreducible support whose symmetrised pattern is bipartite (parts shuffled)."""
    while True:
        n = int(rng.integers(n_lo, n_hi + 1))
        k = int(rng.integers(1, n))
        side = np.zeros(n, dtype=bool)
        side[rng.permutation(n)[:k]] = True
        cross = side[:, None] != side[None, :]
        p = rng.uniform(density_lo, 1.0)
        mask = cross & (rng.random((n, n)) < p)
        A = np.where(mask, entry_hi - rng.uniform(0.0, entry_hi, (n, n)), 0.0)
        if is_irreducible(A):
            return A


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_ACCEPTANCE: dict[str, str] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[name] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in sorted(_ACCEPTANCE.items()):
        m = re.match(r"test_criterion_(\d+)_(.*)", name)
        label = f"criterion {int(m.group(1))} ({m.group(2).replace('_', ' ')})" if m else name
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {label}")
