"""coherence-kit: minimal measurement setups for certifying and quantifying
quantum coherence.

For a d-level system, d orthonormal bases that are each unbiased with respect
to the reference basis and informationally complete together with it suffice
to certify coherence, to compute its exact l1 value, and to test it against
any threshold.  This package constructs such setups in every dimension,
verifies the structural conditions numerically, and reconstructs all
off-diagonal density-matrix entries from outcome probabilities alone.
"""

from ._accel import NUMBA_ENABLED
from .bases import (
    DEFAULT_ALPHA,
    GOLDEN_ALPHA,
    MeasurementSetup,
    OrthonormalBasis,
    SetupConfig,
    build_minimal_setup,
    check_mutual_unbiasedness,
    mub_from_phases,
    qubit_bloch_basis,
    rotate_basis,
    rotate_setup,
    standard_basis,
)
from .detection import (
    DetectionReport,
    certifies_coherence,
    check_minimal_setup_conditions,
    entry_from_probabilities,
    offdiagonal_expansion_coeffs,
    qubit_undetectable_state,
    setup_projections,
    undetected_perturbations,
)
from .errors import (
    CoherenceKitError,
    DimensionMismatch,
    NodeCollision,
    NotCertifying,
    ValidationError,
)
from .linalg import (
    DEFAULT_TOL,
    coords_to_hermitian,
    dft_vector,
    hermitian_to_coords,
    hs_inner,
    null_space_in_traceless_hermitian,
    offdiag_antisym,
    offdiag_sym,
    real_span_dimension,
    require_hermitian,
)
from .modmath import (
    exponent_table,
    mod_add,
    mod_sub,
    proposition_counterexample,
    proposition_holds,
    shifted_square_exponent,
)
from .recon import (
    OffdiagonalReconstruction,
    ProbabilityTable,
    VandermondeSystem,
    coherence_from_data,
    fourier_profile,
    reconstruct_offdiagonals,
    simulate_probabilities,
    threshold_verdict,
    vandermonde_inverse,
    vandermonde_system,
)
from .states import (
    c1_coherence,
    coherence_derivative,
    coherence_derivative_grid,
    is_incoherent,
    maximally_coherent_state,
    noisy_max_coherent_state,
    perturbation_scale_bound,
    random_density_matrix,
    random_perturbation,
    random_pure_state,
    require_density_matrix,
    require_perturbation,
)

__version__ = "0.1.0"
