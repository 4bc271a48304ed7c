import numpy as np
import pytest
from conftest import ID2, SX, abs_offdiag_sum

from coherence_kit import (
    ValidationError,
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
from coherence_kit.kernels import _derivative_grid_np, derivative_grid


class TestValidation:
    def test_accepts_random_states(self, rng):
        for d in (2, 3, 5):
            rho = random_density_matrix(d, rng)
            out = require_density_matrix(rho)
            assert np.trace(out).real == pytest.approx(1.0)
            assert np.linalg.eigvalsh(out)[0] > -1e-12

    def test_rejects_wrong_trace(self):
        with pytest.raises(ValidationError):
            require_density_matrix(2 * ID2)

    def test_rejects_negative_eigenvalue(self):
        with pytest.raises(ValidationError):
            require_density_matrix(np.diag([1.2, -0.2]))

    def test_perturbation_must_be_traceless(self):
        with pytest.raises(ValidationError):
            require_perturbation(ID2)
        out = require_perturbation(SX)
        assert abs(np.trace(out)) < 1e-14


class TestC1Coherence:
    def test_maximally_mixed_is_incoherent(self):
        for d in (2, 4, 7):
            assert c1_coherence(np.eye(d) / d) == 0.0

    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_maximally_coherent_reaches_bound(self, d, rng):
        psi = maximally_coherent_state(rng.uniform(0, 2 * np.pi, d))
        rho = np.outer(psi, psi.conj())
        assert c1_coherence(rho) == pytest.approx(d - 1, abs=1e-12)

    def test_half_sigma_x_mixture(self):
        rho = 0.5 * (ID2 + 0.5 * SX)
        assert c1_coherence(rho) == pytest.approx(0.5)

    def test_matches_entrywise_oracle(self, rng):
        rho = random_density_matrix(5, rng)
        assert c1_coherence(rho) == pytest.approx(abs_offdiag_sum(rho), rel=1e-14)

    def test_range(self, rng):
        for d in (2, 4, 6):
            rho = random_density_matrix(d, rng)
            assert 0.0 <= c1_coherence(rho) <= d - 1 + 1e-12


class TestIsIncoherent:
    def test_diagonal_state(self):
        assert is_incoherent(np.diag([0.2, 0.3, 0.5]))

    def test_maximally_coherent_state(self):
        psi = maximally_coherent_state(np.zeros(3))
        assert not is_incoherent(np.outer(psi, psi.conj()))

    def test_noisy_family_off_diagonals(self):
        rho = noisy_max_coherent_state(np.zeros(3), 0.5)
        assert not is_incoherent(rho)
        off = rho - np.diag(np.diag(rho))
        assert np.max(np.abs(off)) == pytest.approx(0.5 / 3, abs=1e-14)

    def test_agrees_with_c1(self, rng):
        diag = np.diag(rng.dirichlet(np.ones(4)))
        assert is_incoherent(diag) and c1_coherence(diag) < 1e-12
        generic = random_density_matrix(4, rng)
        assert (not is_incoherent(generic)) and c1_coherence(generic) > 1e-6


class TestNoisyMaxCoherentState:
    @pytest.mark.parametrize("d,r", [(2, 0.5), (4, 0.3), (6, 0.9)])
    def test_coherence_value(self, d, r, rng):
        rho = noisy_max_coherent_state(rng.uniform(0, 2 * np.pi, d), r)
        assert c1_coherence(rho) == pytest.approx(r * (d - 1), abs=1e-12)

    def test_zero_phases_qubit(self):
        rho = noisy_max_coherent_state(np.zeros(2), 0.5)
        assert np.max(np.abs(rho - 0.5 * (ID2 + 0.5 * SX))) < 1e-14

    def test_smallest_eigenvalue(self, rng):
        d, r = 5, 0.4
        rho = noisy_max_coherent_state(rng.uniform(0, 2 * np.pi, d), r)
        assert np.linalg.eigvalsh(rho)[0] == pytest.approx((1 - r) / d, abs=1e-12)

    @pytest.mark.parametrize("r", [0.0, 1.0, -0.2, 1.5])
    def test_rejects_bad_mixing(self, r):
        with pytest.raises(ValidationError):
            noisy_max_coherent_state(np.zeros(3), r)


class TestPerturbationScaleBound:
    def test_maximally_mixed_with_unit_norm(self):
        delta = SX  # operator norm 1
        assert perturbation_scale_bound(ID2 / 2, delta) == pytest.approx(0.5)

    def test_state_stays_positive_at_bound(self, rng):
        rho = random_density_matrix(4, rng)
        delta = random_perturbation(4, rng)
        t = perturbation_scale_bound(rho, delta)
        assert t > 0.0
        for sign in (+1, -1):
            lo = np.linalg.eigvalsh(rho + sign * t * delta)[0]
            assert lo >= -1e-10

    def test_noisy_family_matches_analytic_bound(self, rng):
        # for the scaled direction (r/d) delta the conservative bound is exact
        d, r = 4, 0.35
        delta = random_perturbation(d, rng)
        opnorm = np.max(np.abs(np.linalg.eigvalsh(delta)))
        rho = noisy_max_coherent_state(rng.uniform(0, 2 * np.pi, d), r)
        bound = perturbation_scale_bound(rho, (r / d) * delta)
        assert bound == pytest.approx((1 - r) / (r * opnorm), rel=1e-10)

    def test_every_direction_admits_a_scale(self, rng):
        for d in (2, 3, 5):
            delta = random_perturbation(d, rng)
            assert perturbation_scale_bound(np.eye(d) / d, delta) > 0.0

    def test_singular_state_rejected(self):
        with pytest.raises(ValidationError):
            perturbation_scale_bound(np.diag([1.0, 0.0]), SX)

    def test_zero_perturbation_rejected(self):
        with pytest.raises(ValidationError):
            perturbation_scale_bound(ID2 / 2, np.zeros((2, 2)))


class TestCoherenceDerivative:
    def test_diagonal_direction_gives_zero(self, rng):
        d = 4
        delta = np.diag([1.0, -1.0, 2.0, -2.0]).astype(complex)
        phases = rng.uniform(0, 2 * np.pi, d)
        assert coherence_derivative(phases, delta, 0.3) == 0.0

    def test_single_term_qubit(self):
        assert coherence_derivative(np.zeros(2), SX, 0.5) == pytest.approx(0.5)

    @pytest.mark.parametrize("d", [2, 3, 4, 6])
    def test_matches_central_differences(self, d, rng):
        # oracle: f(t) = sum of off-diagonal moduli of the perturbed state
        h = 1e-6
        for _ in range(5):
            delta = random_perturbation(d, rng)
            phases = rng.uniform(0, 2 * np.pi, d)
            r = rng.uniform(0.1, 0.9)
            rho = noisy_max_coherent_state(phases, r)
            up = abs_offdiag_sum(rho + (h * r / d) * delta)
            dn = abs_offdiag_sum(rho - (h * r / d) * delta)
            fd = (up - dn) / (2 * h)
            got = coherence_derivative(phases, delta, r)
            assert got == pytest.approx(fd, rel=1e-5, abs=1e-8)

    def test_rejects_bad_mixing(self):
        with pytest.raises(ValidationError):
            coherence_derivative(np.zeros(2), SX, 1.0)


class TestDerivativeGrid:
    def test_matches_pointwise_evaluation(self, rng):
        d = 4
        delta = random_perturbation(d, rng)
        phases = rng.uniform(0, 2 * np.pi, d)
        r = 0.4
        grid = np.linspace(0, 2 * np.pi, 9, endpoint=False)
        surface = coherence_derivative_grid(phases, delta, r, 1, 3, grid)
        for a in (0, 4, 8):
            for b in (2, 5):
                point = phases.copy()
                point[1] = grid[a]
                point[3] = grid[b]
                assert surface[a, b] == pytest.approx(coherence_derivative(point, delta, r), abs=1e-12)

    def test_fallback_agrees_with_active_kernel(self, rng):
        d = 3
        delta = random_perturbation(d, rng)
        phases = rng.uniform(0, 2 * np.pi, d)
        grid = np.linspace(0, 2 * np.pi, 32, endpoint=False)
        active = derivative_grid(delta.real, delta.imag, phases, 0, 2, grid, 0.3)
        fallback = _derivative_grid_np(delta.real, delta.imag, phases, 0, 2, grid, 0.3)
        assert np.max(np.abs(active - fallback)) < 1e-12

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_quadrature_recovers_perturbation_parts(self, d, rng):
        # rectangle rule over the 2-pi torus recovers the symmetric and
        # antisymmetric parts of the direction from the derivative alone
        n = 256
        grid = np.arange(n) * 2 * np.pi / n
        weight = (2 * np.pi / n) ** 2
        delta = random_perturbation(d, rng)
        phases = rng.uniform(0, 2 * np.pi, d)
        r = 0.37
        for p in range(d):
            for q in range(p):
                surface = coherence_derivative_grid(phases, delta, r, p, q, grid)
                ca = np.cos(grid[:, None] - grid[None, :])
                sa = np.sin(grid[:, None] - grid[None, :])
                int_cos = float(np.sum(surface * ca)) * weight
                int_sin = float(np.sum(surface * sa)) * weight
                scale = (2 * np.pi) ** 2 * r / d
                assert int_cos == pytest.approx(scale * delta.real[p, q], abs=1e-6)
                assert int_sin == pytest.approx(scale * delta.imag[p, q], abs=1e-6)

    def test_rejects_equal_axes(self, rng):
        with pytest.raises(ValidationError):
            coherence_derivative_grid(np.zeros(3), random_perturbation(3, rng), 0.5, 1, 1, np.zeros(4))


class TestRandomGenerators:
    def test_density_matrices_are_valid(self, rng):
        for d in (2, 5):
            rho = random_density_matrix(d, rng)
            require_density_matrix(rho)

    def test_pure_states_are_normalized(self, rng):
        v = random_pure_state(6, rng)
        assert np.linalg.norm(v) == pytest.approx(1.0)

    def test_perturbations_are_valid(self, rng):
        require_perturbation(random_perturbation(4, rng))
