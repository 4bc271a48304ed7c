"""Hilbert-Schmidt geometry on Hermitian operators.

Hermitian d x d matrices are treated as vectors in R^(d^2) through an
orthonormal real coordinate system (diagonal entries, then sqrt(2) times the
real and imaginary parts of the upper triangle).  Spans, ranks and null
spaces of operator families reduce to ordinary real SVD computations in these
coordinates, which keeps the tolerance handling in one place.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatch, ValidationError

#: Relative singular-value threshold used by rank and null-space routines.
DEFAULT_TOL = 1e-9

#: Largest allowed max-norm of (a - a^dagger) before an input is rejected.
HERMITICITY_TOL = 1e-10


def require_square(matrix) -> np.ndarray:
    """Coerce to a finite square complex array."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(float))):
        raise ValidationError("matrix contains NaN or Inf entries")
    return m


def hermiticity_defect(matrix) -> float:
    """Max-norm distance from the Hermitian subspace."""
    m = require_square(matrix)
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def require_hermitian(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate hermiticity within ``tol`` and return the symmetrized matrix."""
    m = require_square(matrix)
    defect = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if defect > tol:
        raise ValidationError(f"matrix is not Hermitian: max |a - a^H| = {defect:.3e} > {tol:.1e}")
    return (m + m.conj().T) / 2


def hs_inner(a, b, tol: float = HERMITICITY_TOL) -> float:
    """Hilbert-Schmidt inner product tr(a b) of two Hermitian matrices.

    Symmetric in its arguments and real for Hermitian inputs; raises on a
    dimension mismatch or on inputs that fail the hermiticity check.
    """
    ah = require_hermitian(a, tol)
    bh = require_hermitian(b, tol)
    if ah.shape != bh.shape:
        raise DimensionMismatch(f"shapes {ah.shape} and {bh.shape} differ")
    # tr(a b) = sum_ij conj(a_ij) b_ij for Hermitian a.
    return float(np.vdot(ah, bh).real)


def offdiag_sym(dim: int, j: int, k: int) -> np.ndarray:
    """Hermitian probe whose expectation is Re of the (j, k) matrix entry."""
    if not 0 <= j < k < dim:
        raise ValidationError(f"need 0 <= j < k < dim, got j={j}, k={k}, dim={dim}")
    m = np.zeros((dim, dim), dtype=complex)
    m[j, k] = 0.5
    m[k, j] = 0.5
    return m


def offdiag_antisym(dim: int, j: int, k: int) -> np.ndarray:
    """Hermitian probe whose expectation is Im of the (j, k) matrix entry."""
    if not 0 <= j < k < dim:
        raise ValidationError(f"need 0 <= j < k < dim, got j={j}, k={k}, dim={dim}")
    m = np.zeros((dim, dim), dtype=complex)
    m[j, k] = 0.5j
    m[k, j] = -0.5j
    return m


def hermitian_to_coords(matrix, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Expand a Hermitian matrix in the orthonormal real operator basis.

    Coordinates are (diagonal, sqrt(2) Re upper triangle, sqrt(2) Im upper
    triangle), a linear isometry between the HS norm and the Euclidean norm
    on R^(d^2).
    """
    m = require_hermitian(matrix, tol)
    iu = np.triu_indices(m.shape[0], 1)
    upper = m[iu]
    return np.concatenate(
        [np.real(np.diag(m)), math.sqrt(2.0) * np.real(upper), math.sqrt(2.0) * np.imag(upper)]
    )


def coords_to_hermitian(coords) -> np.ndarray:
    """Inverse of :func:`hermitian_to_coords`."""
    v = np.asarray(coords, dtype=float)
    if v.ndim != 1:
        raise ValidationError(f"expected a flat coordinate vector, got shape {v.shape}")
    d = math.isqrt(v.size)
    if d * d != v.size:
        raise ValidationError(f"coordinate length {v.size} is not a perfect square")
    n_off = d * (d - 1) // 2
    m = np.diag(v[:d]).astype(complex)
    iu = np.triu_indices(d, 1)
    upper = (v[d : d + n_off] + 1j * v[d + n_off :]) / math.sqrt(2.0)
    m[iu] = upper
    m[(iu[1], iu[0])] = upper.conj()
    return m


def _coords_matrix(ops, tol: float) -> np.ndarray:
    rows = [hermitian_to_coords(op, tol) for op in ops]
    lengths = {r.size for r in rows}
    if len(lengths) > 1:
        raise DimensionMismatch("operators have mixed dimensions")
    return np.array(rows)


def real_span_dimension(ops, tol: float = DEFAULT_TOL, herm_tol: float = HERMITICITY_TOL) -> int:
    """Rank over R of a family of Hermitian matrices.

    Singular values below ``tol`` times the largest one are treated as zero.
    """
    ops = list(ops)
    if not ops:
        raise ValidationError("cannot compute the span of an empty operator list")
    m = _coords_matrix(ops, herm_tol)
    s = np.linalg.svd(m, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def null_space_in_traceless_hermitian(
    ops,
    tol: float = DEFAULT_TOL,
    dim: int | None = None,
    herm_tol: float = HERMITICITY_TOL,
) -> list[np.ndarray]:
    """Orthonormal basis of the traceless Hermitian operators HS-orthogonal to ``ops``.

    The trace-zero condition is one more linear constraint (orthogonality to
    the identity), so the whole computation is a single SVD of the stacked
    constraint rows.  Returned matrices are HS-orthonormal and have traces
    below the working tolerance by construction.
    """
    ops = list(ops)
    if not ops:
        if dim is None:
            raise ValidationError("empty operator list requires an explicit dim")
        rows = np.empty((0, dim * dim))
    else:
        rows = _coords_matrix(ops, herm_tol)
        if dim is not None and rows.shape[1] != dim * dim:
            raise DimensionMismatch(
                f"operators have dimension {math.isqrt(rows.shape[1])}, expected {dim}"
            )
    d = dim if dim is not None else math.isqrt(rows.shape[1])
    identity_row = hermitian_to_coords(np.eye(d))
    constraints = np.vstack([rows, identity_row[None, :]])
    _, s, vh = np.linalg.svd(constraints)
    rank = int(np.sum(s > tol * s[0]))
    return [coords_to_hermitian(vh[r]) for r in range(rank, d * d)]


def dft_vector(values, sign: int) -> np.ndarray:
    """Unnormalized discrete Fourier transform out[z] = sum_k w^(sign k z) values[k].

    Here w = exp(2 pi i / d); no 1/d or 1/sqrt(d) factor is applied, matching
    the convention used by the probability-profile reconstruction.
    """
    v = np.asarray(values, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ValidationError("expected a nonempty one-dimensional input")
    if sign == -1:
        return np.fft.fft(v)
    if sign == +1:
        return np.fft.ifft(v) * v.size
    raise ValidationError(f"sign must be +1 or -1, got {sign}")
