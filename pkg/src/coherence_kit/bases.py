"""Orthonormal bases, mutual unbiasedness and the minimal-setup construction.

A measurement setup is a reference basis plus a list of measured bases.  The
minimal construction produces d measured bases from a single irrational phase
parameter alpha: basis number l applies the phase exp(i pi alpha (l-1) j^2) to
the j-th reference vector before the Fourier mixing, so every measured basis
is unbiased with respect to the reference and the whole family is
informationally complete together with it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, ValidationError

#: Default irrational phase parameter of the construction.
DEFAULT_ALPHA = math.sqrt(2.0)

#: Documented alternative with well-equidistributed phase exponents.
GOLDEN_ALPHA = (1.0 + math.sqrt(5.0)) / 2.0

ORTHONORMALITY_TOL = 1e-10
UNIT_MODULUS_TOL = 1e-12


def _frozen_complex(arr) -> np.ndarray:
    out = np.array(arr, dtype=complex)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class OrthonormalBasis:
    """Ordered orthonormal basis; ``vectors[k]`` is the k-th basis vector."""

    vectors: np.ndarray

    def __post_init__(self):
        v = _frozen_complex(self.vectors)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValidationError(f"expected d vectors of length d, got shape {v.shape}")
        if not np.all(np.isfinite(v.view(float))):
            raise ValidationError("basis vectors contain NaN or Inf")
        gram = v.conj() @ v.T
        defect = float(np.max(np.abs(gram - np.eye(v.shape[0]))))
        if defect > ORTHONORMALITY_TOL:
            raise ValidationError(f"vectors are not orthonormal: defect {defect:.3e}")
        object.__setattr__(self, "vectors", v)

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def projector(self, k: int) -> np.ndarray:
        """Rank-1 projector onto the k-th vector."""
        v = self.vectors[k]
        return np.outer(v, v.conj())

    def projectors(self) -> list[np.ndarray]:
        return [self.projector(k) for k in range(self.dim)]

    def overlaps(self, other: "OrthonormalBasis") -> np.ndarray:
        """Matrix of inner products <self_k | other_j>."""
        if self.dim != other.dim:
            raise DimensionMismatch(f"dimensions {self.dim} and {other.dim} differ")
        return self.vectors.conj() @ other.vectors.T


@dataclass(frozen=True)
class MeasurementSetup:
    """A reference basis plus the list of actually measured bases."""

    reference: OrthonormalBasis
    measured: tuple[OrthonormalBasis, ...]
    alpha: float | None = None

    def __post_init__(self):
        measured = tuple(self.measured)
        if not measured:
            raise ValidationError("a setup needs at least one measured basis")
        dims = {self.reference.dim, *(b.dim for b in measured)}
        if len(dims) > 1:
            raise DimensionMismatch(f"bases of mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "measured", measured)

    @property
    def dim(self) -> int:
        return self.reference.dim

    @property
    def num_bases(self) -> int:
        return len(self.measured)


@dataclass(frozen=True)
class SetupConfig:
    """Dimension and phase parameter pinning down one minimal setup."""

    dim: int
    alpha: float = DEFAULT_ALPHA

    def __post_init__(self):
        if self.dim < 2:
            raise ValidationError(f"dimension must be at least 2, got {self.dim}")
        if not math.isfinite(self.alpha) or self.alpha == 0.0:
            raise ValidationError(f"alpha must be finite and nonzero, got {self.alpha}")


def standard_basis(dim: int) -> OrthonormalBasis:
    """The computational reference basis."""
    if dim < 1:
        raise ValidationError(f"dimension must be positive, got {dim}")
    return OrthonormalBasis(np.eye(dim, dtype=complex))


def mub_from_phases(reference: OrthonormalBasis, betas) -> OrthonormalBasis:
    """Basis unbiased to ``reference`` built from unit-modulus phase factors.

    Vector k is (1/sqrt(d)) sum_j betas[j] w^(jk) phi_j with w = exp(2 pi i/d);
    every overlap with the reference has modulus exactly 1/sqrt(d), for any
    choice of the phases.
    """
    b = np.asarray(betas, dtype=complex)
    d = reference.dim
    if b.shape != (d,):
        raise DimensionMismatch(f"expected {d} phase factors, got shape {b.shape}")
    if np.max(np.abs(np.abs(b) - 1.0)) > UNIT_MODULUS_TOL:
        raise ValidationError("phase factors must have unit modulus")
    j = np.arange(d)
    omega = np.exp(2j * np.pi / d)
    # coeff[k, j] of the new vector k on reference vector j
    coeff = b[None, :] * omega ** (np.outer(j, j)) / math.sqrt(d)
    return OrthonormalBasis(coeff @ reference.vectors)


def construction_phases(config: SetupConfig, index: int) -> np.ndarray:
    """Unit-modulus factors exp(i pi alpha (index - 1) j^2) of measured basis ``index``.

    ``index`` is 1-based, running from 1 to d; index 1 gives the plain Fourier
    basis.  The squared integers are exact, so the only rounding happens in
    the final complex exponential.
    """
    if not 1 <= index <= config.dim:
        raise ValidationError(f"basis index must lie in 1..{config.dim}, got {index}")
    j = np.arange(config.dim, dtype=np.int64)
    return np.exp(1j * np.pi * config.alpha * (index - 1) * (j * j))


def build_minimal_setup(config: SetupConfig) -> MeasurementSetup:
    """The d-basis setup that certifies coherence in dimension d.

    Deterministic in the config: the reference is the standard basis and the
    measured bases follow the quadratic-phase construction.  Basis 1 is the
    plain Fourier basis.
    """
    ref = standard_basis(config.dim)
    measured = tuple(
        mub_from_phases(ref, construction_phases(config, index))
        for index in range(1, config.dim + 1)
    )
    return MeasurementSetup(reference=ref, measured=measured, alpha=config.alpha)


def check_mutual_unbiasedness(a: OrthonormalBasis, b: OrthonormalBasis, tol: float = 1e-10) -> bool:
    """True iff every pairwise overlap modulus is within ``tol`` of 1/sqrt(d)."""
    moduli = np.abs(a.overlaps(b))
    return bool(np.max(np.abs(moduli - 1.0 / math.sqrt(a.dim))) < tol)


def qubit_bloch_basis(direction) -> OrthonormalBasis:
    """Eigenbasis of the spin observable along a unit Bloch vector.

    The plus eigenvector comes first; each vector is gauge-fixed so its
    largest-modulus component is real and positive, which makes the output
    deterministic.
    """
    n = np.asarray(direction, dtype=float)
    if n.shape != (3,):
        raise ValidationError(f"expected a 3-component vector, got shape {n.shape}")
    if abs(np.linalg.norm(n) - 1.0) > 1e-10:
        raise ValidationError(f"direction must be a unit vector, norm is {np.linalg.norm(n)}")
    obs = np.array([[n[2], n[0] - 1j * n[1]], [n[0] + 1j * n[1], -n[2]]])
    _, vecs = np.linalg.eigh(obs)
    ordered = [vecs[:, 1], vecs[:, 0]]  # eigh sorts eigenvalues ascending (-1, +1)
    fixed = []
    for v in ordered:
        i = int(np.argmax(np.abs(v)))
        phase = v[i] / abs(v[i])
        fixed.append(v * phase.conj())
    return OrthonormalBasis(np.array(fixed))


def rotate_basis(basis: OrthonormalBasis, unitary) -> OrthonormalBasis:
    """Apply a unitary to every vector of a basis."""
    u = np.asarray(unitary, dtype=complex)
    if u.shape != (basis.dim, basis.dim):
        raise DimensionMismatch(f"unitary shape {u.shape} does not match dimension {basis.dim}")
    return OrthonormalBasis(basis.vectors @ u.T)


def rotate_setup(setup: MeasurementSetup, unitary) -> MeasurementSetup:
    """Conjugate a whole setup by a unitary; detection verdicts are invariant."""
    return MeasurementSetup(
        reference=rotate_basis(setup.reference, unitary),
        measured=tuple(rotate_basis(b, unitary) for b in setup.measured),
        alpha=setup.alpha,
    )
