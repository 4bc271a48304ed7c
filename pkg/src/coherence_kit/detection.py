"""Perturbation detection: which traceless Hermitian directions a setup misses.

Two states produce identical statistics on a setup exactly when they differ by
an undetected perturbation, so a setup certifies the presence of coherence iff
every undetected direction is diagonal in the reference basis.  Certification
also implies that the real and imaginary parts of every off-diagonal entry can
be expanded in the measured projections, which turns probabilities into matrix
elements.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import MeasurementSetup, check_mutual_unbiasedness
from .errors import DimensionMismatch, NotCertifying, ValidationError
from .linalg import (
    DEFAULT_TOL,
    hermitian_to_coords,
    null_space_in_traceless_hermitian,
    offdiag_antisym,
    offdiag_sym,
    real_span_dimension,
)


@dataclass(frozen=True)
class DetectionReport:
    """Outcome of the undetected-perturbation analysis of one setup."""

    undetected_dim: int
    undetected_basis: tuple[np.ndarray, ...]
    all_undetected_diagonal: bool
    max_offdiag_leak: float
    span_dim: int
    info_complete_with_reference: bool


def setup_projections(setup: MeasurementSetup, include_reference: bool = False) -> list[np.ndarray]:
    """All rank-1 outcome projectors of the measured bases (optionally plus reference)."""
    ops: list[np.ndarray] = []
    if include_reference:
        ops.extend(setup.reference.projectors())
    for basis in setup.measured:
        ops.extend(basis.projectors())
    return ops


def undetected_perturbations(
    setup: MeasurementSetup, tol: float = DEFAULT_TOL, include_reference: bool = False
) -> list[np.ndarray]:
    """HS-orthonormal basis of the traceless Hermitian operators the setup cannot see.

    An operator is undetected when every measured outcome projector is
    HS-orthogonal to it.  The reference basis is excluded from the constraint
    set unless the caller actually measures it too.
    """
    ops = setup_projections(setup, include_reference)
    return null_space_in_traceless_hermitian(ops, tol=tol, dim=setup.dim)


def _max_offdiag_modulus_in_reference(matrix: np.ndarray, reference) -> float:
    v = reference.vectors
    in_ref = v.conj() @ matrix @ v.T  # entries <phi_i| matrix |phi_j>
    off = in_ref - np.diag(np.diag(in_ref))
    return float(np.max(np.abs(off)))


def certifies_coherence(
    setup: MeasurementSetup, tol: float = DEFAULT_TOL, include_reference: bool = False
) -> DetectionReport:
    """Decide whether a setup can certify coherence, with the full evidence attached.

    The verdict flag is True when every undetected spanning operator is
    diagonal in the reference basis up to ``tol``; the report carries the
    actual worst off-diagonal leak so callers can tighten or loosen after the
    fact.  The same flag answers the certification, exact-value and threshold
    questions at once.
    """
    undetected = undetected_perturbations(setup, tol=tol, include_reference=include_reference)
    leak = max(
        (_max_offdiag_modulus_in_reference(m, setup.reference) for m in undetected),
        default=0.0,
    )
    measured = setup_projections(setup, include_reference)
    span = real_span_dimension(measured, tol=tol)
    full = setup.reference.projectors() + setup_projections(setup)
    info_complete = real_span_dimension(full, tol=tol) == setup.dim**2
    return DetectionReport(
        undetected_dim=len(undetected),
        undetected_basis=tuple(undetected),
        all_undetected_diagonal=leak < tol,
        max_offdiag_leak=leak,
        span_dim=span,
        info_complete_with_reference=info_complete,
    )


def check_minimal_setup_conditions(
    setup: MeasurementSetup, tol: float = DEFAULT_TOL
) -> tuple[bool, bool]:
    """The two structural conditions equivalent to certification for m = d bases.

    Returns (unbiased_all, info_complete): every measured basis unbiased to
    the reference, and reference plus measured projectors spanning the full
    d^2-dimensional operator space.  Only defined for setups with exactly d
    measured bases, where the equivalence holds.
    """
    if setup.num_bases != setup.dim:
        raise ValidationError(
            f"the equivalence needs exactly d={setup.dim} measured bases, got {setup.num_bases}"
        )
    unbiased_all = all(
        check_mutual_unbiasedness(setup.reference, basis, tol=1e-10) for basis in setup.measured
    )
    full = setup.reference.projectors() + setup_projections(setup)
    info_complete = real_span_dimension(full, tol=tol) == setup.dim**2
    return unbiased_all, info_complete


def qubit_undetectable_state(a, b) -> np.ndarray:
    """Coherent qubit state indistinguishable from I/2 by the spin measurements along a and b.

    Takes the normalized cross product c of the two Bloch directions and
    returns (I + c . sigma) / 2, which is orthogonal to both measured
    directions and therefore reproduces the maximally mixed statistics on
    them.  Raises when a and b are parallel, or when both are orthogonal to
    the z axis: then c is along z and the construction yields an incoherent
    state, i.e. those two measurements actually certify coherence.
    """
    va = np.asarray(a, dtype=float)
    vb = np.asarray(b, dtype=float)
    for v, name in ((va, "a"), (vb, "b")):
        if v.shape != (3,):
            raise ValidationError(f"{name} must be a 3-component vector, got shape {v.shape}")
        if abs(np.linalg.norm(v) - 1.0) > 1e-10:
            raise ValidationError(f"{name} must be a unit vector, norm is {np.linalg.norm(v)}")
    cross = np.cross(va, vb)
    norm = np.linalg.norm(cross)
    if norm < 1e-12:
        raise ValidationError("directions are parallel; they define no hidden direction")
    c = cross / norm
    if np.hypot(c[0], c[1]) < 1e-12:
        raise ValidationError(
            "both directions are orthogonal to the z axis; the hidden state would be incoherent"
        )
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    return (np.eye(2) + c[0] * sx + c[1] * sy + c[2] * sz) / 2.0


def offdiagonal_expansion_coeffs(
    setup: MeasurementSetup, j: int, k: int, tol: float = DEFAULT_TOL
) -> tuple[np.ndarray, np.ndarray]:
    """Per-(basis, outcome) weights expanding the (j, k) entry probes in the projections.

    Returns (coeffs_re, coeffs_im), each of shape (m, d), such that the
    weighted sums of the measured projectors equal the Hermitian probes for
    Re rho_jk and Im rho_jk within ``tol`` in HS norm.  Solved as minimum-norm
    least squares; a residual above ``tol`` means the probes are outside the
    span, i.e. the setup does not certify coherence, and is raised as such.
    """
    d = setup.dim
    if not 0 <= j < k < d:
        raise ValidationError(f"need 0 <= j < k < d={d}, got j={j}, k={k}")
    projections = setup_projections(setup)
    basis_matrix = np.array([hermitian_to_coords(p) for p in projections]).T  # (d^2, m*d)
    out = []
    for probe in (offdiag_sym(d, j, k), offdiag_antisym(d, j, k)):
        target = hermitian_to_coords(probe)
        coeffs, *_ = np.linalg.lstsq(basis_matrix, target, rcond=None)
        residual = float(np.linalg.norm(basis_matrix @ coeffs - target))
        if residual > tol:
            raise NotCertifying(
                f"probe for entry ({j}, {k}) lies outside the measured span "
                f"(residual {residual:.3e} > {tol:.1e}); the setup does not certify coherence"
            )
        out.append(coeffs.reshape(setup.num_bases, d))
    return out[0], out[1]


def entry_from_probabilities(coeffs_re, coeffs_im, probs) -> complex:
    """Combine expansion weights with outcome probabilities into a matrix entry.

    ``probs`` is the (m, d) table of measured Born probabilities; the result
    is Re + i Im of the targeted off-diagonal entry.
    """
    p = np.asarray(probs, dtype=float)
    cr = np.asarray(coeffs_re, dtype=float)
    ci = np.asarray(coeffs_im, dtype=float)
    if p.shape != cr.shape or p.shape != ci.shape:
        raise DimensionMismatch(
            f"probability table shape {p.shape} does not match coefficients {cr.shape}"
        )
    return complex(np.sum(cr * p), np.sum(ci * p))
