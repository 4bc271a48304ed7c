"""Density matrices, perturbation operators and the l1 coherence measure.

Includes the noisy maximally coherent family used by the threshold analysis
and the closed-form directional derivative of the coherence along a
perturbation, whose evaluation over phase grids is kernel-accelerated.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .errors import ValidationError
from .linalg import require_hermitian

#: Allowed deviation of tr(rho) from 1.
TRACE_TOL = 1e-10

#: Allowed negativity of the smallest eigenvalue of a density matrix.
PSD_TOL = 1e-10


def require_density_matrix(rho, trace_tol: float = TRACE_TOL, psd_tol: float = PSD_TOL) -> np.ndarray:
    """Validate hermiticity, unit trace and positivity; return the symmetrized matrix."""
    m = require_hermitian(rho)
    tr = float(np.trace(m).real)
    if abs(tr - 1.0) > trace_tol:
        raise ValidationError(f"trace {tr} deviates from 1 by more than {trace_tol:.1e}")
    lo = float(np.linalg.eigvalsh(m)[0])
    if lo < -psd_tol:
        raise ValidationError(f"smallest eigenvalue {lo:.3e} below -{psd_tol:.1e}")
    return m


def require_perturbation(delta, trace_tol: float = TRACE_TOL) -> np.ndarray:
    """Validate that ``delta`` is Hermitian and traceless; return it symmetrized."""
    m = require_hermitian(delta)
    tr = float(np.trace(m).real)
    if abs(tr) > trace_tol:
        raise ValidationError(f"trace {tr} deviates from 0 by more than {trace_tol:.1e}")
    return m


def c1_coherence(rho) -> float:
    """Sum of the absolute values of all off-diagonal entries.

    Zero exactly on states diagonal in the reference basis; at most d - 1.
    """
    m = require_density_matrix(rho)
    return float(np.sum(np.abs(m)) - np.sum(np.abs(np.diag(m))))


def is_incoherent(rho, tol: float = 1e-10) -> bool:
    """True iff every off-diagonal entry has modulus below ``tol``."""
    m = require_density_matrix(rho)
    off = m - np.diag(np.diag(m))
    return bool(np.max(np.abs(off)) < tol)


def require_phases(phases) -> np.ndarray:
    v = np.asarray(phases, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise ValidationError("phases must form a nonempty one-dimensional array")
    if not np.all(np.isfinite(v)):
        raise ValidationError("phases contain NaN or Inf")
    return v


def maximally_coherent_state(phases) -> np.ndarray:
    """Unit vector (1/sqrt(d)) sum_k exp(i phi_k) |k>, which has coherence d - 1."""
    v = require_phases(phases)
    return np.exp(1j * v) / np.sqrt(v.size)


def noisy_max_coherent_state(phases, r: float) -> np.ndarray:
    """Convex mixture (1-r) I/d + r |psi><psi| of noise and a maximally coherent state.

    Full rank with smallest eigenvalue (1-r)/d and coherence exactly r (d-1),
    which makes it the canonical family of threshold states.
    """
    if not 0.0 < r < 1.0:
        raise ValidationError(f"mixing parameter must lie in (0, 1), got {r}")
    psi = maximally_coherent_state(phases)
    d = psi.size
    return (1.0 - r) * np.eye(d) / d + r * np.outer(psi, psi.conj())


def perturbation_scale_bound(rho, delta) -> float:
    """Largest guaranteed-safe scaling of a perturbation around a full-rank state.

    Returns delta_max = lambda_min(rho) / ||delta||_op; rho + t * delta stays
    positive semidefinite for every |t| <= delta_max (Weyl's inequality).  The
    bound is conservative rather than tight, which is all downstream arguments
    need.
    """
    m = require_density_matrix(rho)
    p = require_perturbation(delta)
    lo = float(np.linalg.eigvalsh(m)[0])
    if lo <= 0.0:
        raise ValidationError("state is singular; no two-sided perturbation scale exists")
    opnorm = float(np.max(np.abs(np.linalg.eigvalsh(p))))
    if opnorm == 0.0:
        raise ValidationError("perturbation operator is zero")
    return lo / opnorm


def coherence_derivative(phases, delta, r: float) -> float:
    """Derivative at zero of t -> C1(rho_phases^r + (t r / d) delta).

    Writing delta = S + iA with S real symmetric and A real antisymmetric,
    the value is (2r/d) sum_{p>q} [S_pq cos(phi_p - phi_q) + A_pq sin(phi_p - phi_q)].
    """
    if not 0.0 < r < 1.0:
        raise ValidationError(f"mixing parameter must lie in (0, 1), got {r}")
    v = require_phases(phases)
    p = require_perturbation(delta)
    if p.shape[0] != v.size:
        raise ValidationError(f"phases ({v.size}) and perturbation ({p.shape[0]}) dimensions differ")
    d = v.size
    il = np.tril_indices(d, -1)
    diffs = v[il[0]] - v[il[1]]
    sym = np.real(p)[il]
    anti = np.imag(p)[il]
    return float(2.0 * r / d * np.sum(sym * np.cos(diffs) + anti * np.sin(diffs)))


def coherence_derivative_grid(phases, delta, r: float, p: int, q: int, grid) -> np.ndarray:
    """Evaluate :func:`coherence_derivative` over a 2-d grid of two phases.

    Entry (a, b) fixes phase ``p`` to grid[a] and phase ``q`` to grid[b] while
    the other phases stay at their given values.  This is the hot loop behind
    the quadrature identities that recover the real and imaginary parts of a
    perturbation from the derivative alone; it dispatches to the jitted kernel
    unless the numpy fallback is selected.
    """
    if not 0.0 < r < 1.0:
        raise ValidationError(f"mixing parameter must lie in (0, 1), got {r}")
    v = require_phases(phases)
    pert = require_perturbation(delta)
    d = v.size
    if pert.shape[0] != d:
        raise ValidationError(f"phases ({d}) and perturbation ({pert.shape[0]}) dimensions differ")
    if not (0 <= p < d and 0 <= q < d and p != q):
        raise ValidationError(f"grid axes must be two distinct indices below {d}, got {p}, {q}")
    g = np.asarray(grid, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise ValidationError("grid must be a nonempty one-dimensional array")
    return kernels.derivative_grid(np.real(pert), np.imag(pert), v, p, q, g, r)


def random_density_matrix(dim: int, rng=None) -> np.ndarray:
    """Full-rank random state from the Ginibre construction G G^H / tr(G G^H)."""
    if dim < 1:
        raise ValidationError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(rng)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(dim: int, rng=None) -> np.ndarray:
    """Haar-random unit vector."""
    if dim < 1:
        raise ValidationError(f"dimension must be positive, got {dim}")
    rng = np.random.default_rng(rng)
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return v / np.linalg.norm(v)


def random_perturbation(dim: int, rng=None) -> np.ndarray:
    """Random traceless Hermitian matrix with Gaussian entries."""
    if dim < 2:
        raise ValidationError(f"dimension must be at least 2, got {dim}")
    rng = np.random.default_rng(rng)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = (g + g.conj().T) / 2
    return h - np.trace(h).real / dim * np.eye(dim)
