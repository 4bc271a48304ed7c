"""Off-diagonal reconstruction from the minimal setup's outcome statistics.

For each shift z, the discrete Fourier transform of the outcome probabilities
of basis l (taken over the outcome index) collapses to a weighted sum of the
entries rho_{h, h+z mod d}; the weights form a Vandermonde matrix in the
unit-modulus nodes x_h = exp(i pi alpha [s(h+z)^2 - s(h)^2]).  Inverting one
d x d system per shift recovers every off-diagonal entry, and with them the
l1 coherence, from probabilities alone.

Two inversion paths are kept: a generic dense solve (default, best
conditioned) and the explicit inverse via elementary symmetric polynomials of
the nodes, cross-validated against each other by the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

from .bases import MeasurementSetup, SetupConfig
from .errors import DimensionMismatch, NodeCollision, ValidationError
from .modmath import exponent_table
from .states import require_density_matrix

ROW_SUM_TOL = 1e-9
ENTRY_SLACK = 1e-12

#: Below this pairwise node distance the system is treated as singular.
NODE_COLLISION_TOL = 1e-12

#: Residual ceiling for the explicit inverse, before conditioning scaling.
INVERSE_RESIDUAL_TOL = 1e-8


def _frozen(arr, dtype) -> np.ndarray:
    out = np.array(arr, dtype=dtype)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ProbabilityTable:
    """Outcome probabilities, one row per measured basis."""

    probs: np.ndarray

    def __post_init__(self):
        p = _frozen(self.probs, float)
        if p.ndim != 2 or p.shape[0] < 1 or p.shape[1] < 1:
            raise ValidationError(f"expected an m x d probability array, got shape {p.shape}")
        if not np.all(np.isfinite(p)):
            raise ValidationError("probabilities contain NaN or Inf")
        if np.min(p) < -ENTRY_SLACK or np.max(p) > 1.0 + ENTRY_SLACK:
            raise ValidationError("probabilities fall outside [0, 1] beyond tolerance")
        sums = p.sum(axis=1)
        worst = float(np.max(np.abs(sums - 1.0)))
        if worst > ROW_SUM_TOL:
            raise ValidationError(f"a row sums to 1 only within {worst:.3e} > {ROW_SUM_TOL:.1e}")
        object.__setattr__(self, "probs", p)

    @property
    def dim(self) -> int:
        return self.probs.shape[1]

    @property
    def num_bases(self) -> int:
        return self.probs.shape[0]


@dataclass(frozen=True)
class VandermondeSystem:
    """The per-shift linear system tying Fourier profiles to matrix entries."""

    dim: int
    shift: int
    nodes: np.ndarray
    matrix: np.ndarray
    min_node_distance: float

    @property
    def condition_number(self) -> float:
        return float(np.linalg.cond(self.matrix))


@dataclass(frozen=True)
class OffdiagonalReconstruction:
    """Reconstructed off-diagonal entries plus numerical diagnostics."""

    matrix: np.ndarray
    condition_numbers: tuple[float, ...]
    hermiticity_mismatch: float
    error_estimate: float
    diagonal_filled: bool = False

    def coherence(self) -> float:
        """Sum of moduli of the off-diagonal entries."""
        off = self.matrix - np.diag(np.diag(self.matrix))
        return float(np.sum(np.abs(off)))


def simulate_probabilities(rho, setup: MeasurementSetup) -> ProbabilityTable:
    """Noise-free Born probabilities <psi_k | rho | psi_k> for every measured basis."""
    m = require_density_matrix(rho)
    if m.shape[0] != setup.dim:
        raise DimensionMismatch(f"state dimension {m.shape[0]} does not match setup {setup.dim}")
    rows = []
    for basis in setup.measured:
        v = basis.vectors
        rows.append(np.einsum("ki,ij,kj->k", v.conj(), m, v).real)
    return ProbabilityTable(np.array(rows))


def fourier_profile(table: ProbabilityTable, shift: int) -> np.ndarray:
    """Per-basis values sum_k w^(-k z) p(k) for one nonzero shift z.

    Shift zero is rejected: it only reproduces the row normalization and
    carries no off-diagonal information.
    """
    if shift == 0:
        raise ValidationError("shift 0 only returns row sums; it carries no off-diagonal data")
    if not 1 <= shift <= table.dim - 1:
        raise ValidationError(f"shift must lie in 1..{table.dim - 1}, got {shift}")
    return np.fft.fft(table.probs, axis=1)[:, shift]


def vandermonde_system(config: SetupConfig, shift: int) -> VandermondeSystem:
    """Build the nodes and matrix of one shift's linear system.

    The node phases are exact integers times pi alpha, so rounding enters
    only in the final complex exponential.
    """
    d = config.dim
    if not 1 <= shift <= d - 1:
        raise ValidationError(f"shift must lie in 1..{d - 1}, got {shift}")
    expo = exponent_table(shift, d)
    nodes = np.exp(1j * np.pi * config.alpha * expo)
    matrix = np.vander(nodes, N=d, increasing=True).T  # matrix[j, h] = nodes[h]**j
    dist = np.abs(nodes[:, None] - nodes[None, :]) + 2.0 * np.eye(d)
    return VandermondeSystem(
        dim=d,
        shift=shift,
        nodes=_frozen(nodes, complex),
        matrix=_frozen(matrix, complex),
        min_node_distance=float(dist.min()),
    )


def vandermonde_inverse(system: VandermondeSystem) -> np.ndarray:
    """Explicit inverse from elementary symmetric polynomials of the nodes.

    Row h is built from the coefficients of prod_{i != h}(t - x_i), expanded
    by a stable one-node-at-a-time recursion, divided by prod_{i != h}(x_h -
    x_i).  The residual ||W V - I||_max is verified against a ceiling scaled
    with the system's conditioning.
    """
    x = system.nodes
    d = system.dim
    if system.min_node_distance < NODE_COLLISION_TOL:
        raise NodeCollision(
            f"nodes at distance {system.min_node_distance:.3e}; "
            "the phase parameter is effectively rational for this shift"
        )
    inv = np.empty((d, d), dtype=complex)
    for h in range(d):
        coeffs = np.array([1.0 + 0.0j])  # ascending powers of t
        for i in range(d):
            if i == h:
                continue
            # multiply the running polynomial by (t - x_i)
            nxt = np.zeros(coeffs.size + 1, dtype=complex)
            nxt[1:] += coeffs
            nxt[:-1] -= x[i] * coeffs
            coeffs = nxt
        denom = np.prod(x[h] - np.delete(x, h))
        inv[h] = coeffs / denom
    residual = float(np.max(np.abs(inv @ system.matrix - np.eye(d))))
    ceiling = max(INVERSE_RESIDUAL_TOL, 1e-12 * system.condition_number)
    if residual > ceiling:
        raise NodeCollision(
            f"explicit inverse residual {residual:.3e} exceeds {ceiling:.3e}; "
            "nodes are too close for a stable inversion"
        )
    return inv


def _solve_profiles(table: ProbabilityTable, config: SetupConfig, method: str):
    d = config.dim
    profiles = np.fft.fft(table.probs, axis=1)
    raw = np.zeros((d, d), dtype=complex)
    conds = []
    for z in range(1, d):
        system = vandermonde_system(config, z)
        conds.append(system.condition_number)
        rhs = profiles[:, z]
        if method == "explicit":
            entries = vandermonde_inverse(system) @ rhs
        else:
            entries = np.linalg.solve(system.matrix, rhs)
        for h in range(d):
            raw[h, (h + z) % d] = entries[h]
    return raw, tuple(conds)


#: No density matrix has an off-diagonal entry of modulus above 1/2.
ENTRY_BOUND_SLACK = 1e-8


def reconstruct_offdiagonals(
    table: ProbabilityTable,
    config: SetupConfig,
    method: Literal["solve", "explicit"] = "solve",
    reference_row=None,
    mismatch_tol: float = 1e-6,
) -> OffdiagonalReconstruction:
    """Recover every off-diagonal entry of the measured state from one table.

    The table must come from the minimal setup matching ``config`` (d rows,
    basis order 1..d).  Entries (j, k) and conj((k, j)) come from the shifts
    z and d - z; their disagreement before averaging is tracked, but note
    that it cannot flag a wrong alpha: the conjugate symmetry of the Fourier
    profiles of any real table forces a Hermitian pattern for every phase
    parameter.  What a wrong config does produce is implausible magnitudes,
    so any entry with modulus above 1/2 (impossible for a density matrix) is
    rejected as a table/config mismatch; mismatches that stay below that
    bound are fundamentally invisible to a minimal setup, which carries no
    redundancy.

    The diagonal is not observable through unbiased bases and is left at
    zero unless ``reference_row`` (the reference-basis outcome distribution)
    is supplied, in which case it fills the diagonal and the result is
    flagged accordingly.
    """
    if method not in ("solve", "explicit"):
        raise ValidationError(f"unknown inversion method {method!r}")
    d = config.dim
    if table.dim != d:
        raise DimensionMismatch(f"table dimension {table.dim} does not match config {d}")
    if table.num_bases != d:
        raise ValidationError(
            f"minimal-setup reconstruction needs m = d = {d} bases, got {table.num_bases}"
        )
    raw, conds = _solve_profiles(table, config, method)
    mismatch = float(np.max(np.abs(raw - raw.conj().T)))
    if mismatch > mismatch_tol:
        raise ValidationError(
            f"reconstructed entries break hermiticity by {mismatch:.3e} > {mismatch_tol:.1e}"
        )
    largest = float(np.max(np.abs(raw)))
    if largest > 0.5 + ENTRY_BOUND_SLACK:
        raise ValidationError(
            f"reconstructed entry of modulus {largest:.3e} exceeds the density-matrix bound 1/2; "
            "the table was likely produced with a different dimension or alpha"
        )
    matrix = (raw + raw.conj().T) / 2.0
    np.fill_diagonal(matrix, 0.0)
    diagonal_filled = False
    if reference_row is not None:
        ref = np.asarray(reference_row, dtype=float).reshape(-1)
        if ref.size != d:
            raise DimensionMismatch(f"reference row has {ref.size} entries, expected {d}")
        if abs(float(ref.sum()) - 1.0) > ROW_SUM_TOL:
            raise ValidationError("reference-basis probabilities do not sum to 1")
        matrix = matrix + np.diag(ref.astype(complex))
        diagonal_filled = True
    eps = float(np.finfo(float).eps)
    error_estimate = d * max(mismatch, 10.0 * eps * max(conds))
    return OffdiagonalReconstruction(
        matrix=_frozen(matrix, complex),
        condition_numbers=conds,
        hermiticity_mismatch=mismatch,
        error_estimate=error_estimate,
        diagonal_filled=diagonal_filled,
    )


def coherence_from_data(
    table: ProbabilityTable,
    config: SetupConfig,
    method: Literal["solve", "explicit"] = "solve",
) -> float:
    """l1 coherence of the measured state, computed from probabilities alone."""
    return reconstruct_offdiagonals(table, config, method=method).coherence()


def threshold_verdict(
    table: ProbabilityTable,
    config: SetupConfig,
    r: float,
    margin: float | None = None,
) -> Literal["above", "below", "inconclusive"]:
    """Compare the reconstructed coherence against the threshold r (d - 1).

    ``margin`` defaults to ten times the reconstruction's error estimate;
    estimates within the margin band of the threshold return "inconclusive"
    rather than guessing a side.
    """
    if not 0.0 < r < 1.0:
        raise ValidationError(f"threshold parameter must lie in (0, 1), got {r}")
    rec = reconstruct_offdiagonals(table, config)
    if margin is None:
        margin = 10.0 * rec.error_estimate
    if margin < 0.0:
        raise ValidationError(f"margin must be nonnegative, got {margin}")
    estimate = rec.coherence()
    threshold = r * (config.dim - 1)
    if estimate > threshold + margin:
        return "above"
    if estimate < threshold - margin:
        return "below"
    return "inconclusive"
