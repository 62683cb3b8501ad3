"""Seeded random ensembles shared by the test modules, plus the suite-runtime check."""

import time

import numpy as np
import pytest

from wyskew import DensityMatrix, HermitianOperator

SUITE_BUDGET_S = 60.0
_start = None


def haar_unitary(d, rng):
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def rand_herm(d, rng, scale=1.0):
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return HermitianOperator(scale * (z + z.conj().T) / 2)


def rand_ket(d, rng):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def rand_pure(d, rng):
    return DensityMatrix.from_ket(rand_ket(d, rng))


def rand_density(d, rng, rank=None):
    """Induced-measure mixed state; full rank unless ``rank`` is given."""
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m).real)


@pytest.fixture
def rng(request):
    # one stream per test, stable across runs and test ordering
    seed = sum(request.node.nodeid.encode()) % (2**32)
    return np.random.default_rng(seed)


def pytest_sessionstart(session):
    global _start
    _start = time.perf_counter()


def pytest_sessionfinish(session, exitstatus):
    elapsed = time.perf_counter() - _start
    # only meaningful for full-suite runs
    if session.testscollected < 50:
        return
    ok = elapsed < SUITE_BUDGET_S
    tag = "PASS" if ok else "FAIL"
    print(f"\n[{tag}] AC12b full suite runtime {elapsed:.1f}s (< {SUITE_BUDGET_S:.0f}s)")
    if not ok and session.exitstatus == 0:
        session.exitstatus = 1
