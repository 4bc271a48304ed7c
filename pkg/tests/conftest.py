import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
ID2 = np.eye(2, dtype=complex)


def random_unitary(dim, rng):
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r))).conj()


def realified_rank(ops, tol=1e-9):
    """Independent span oracle: stack [Re, Im] of flattened matrices, use matrix_rank."""
    rows = np.array([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in ops])
    return int(np.linalg.matrix_rank(rows, tol=tol * np.linalg.norm(rows, 2)))


def abs_offdiag_sum(m):
    """Independent coherence oracle: plain entrywise arithmetic, no validation."""
    m = np.asarray(m)
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
