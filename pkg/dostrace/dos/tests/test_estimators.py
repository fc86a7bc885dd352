"""Unit tests for the four DOS estimators."""

import numpy as np
import pytest
import scipy.sparse as sp

from ...errors import CapabilityError, GeometryError, InsufficientDataError, ParameterError
from ...lattice.balls import weight_field
from ...models.enums import EstimatorMethod, TraceMode
from ...models.geometry import LatticeGeometry
from ...operators.hermitian import (
    SparseHermitianOperator,
    build_lattice_laplacian,
    build_schrodinger,
)
from ...operators.traces import ProbeEnsemble
from ...strategies.potentials import IIDUniformPotential
from ...strategies.surrogates import LogExtrapolationSurrogate
from ..estimators import (
    ball_average_heat_trace,
    batch_standard_error,
    bulk_length,
    default_eps_grid,
    default_radii,
    dixmier_side,
    dixmier_side_function,
    epsilon_formula,
    extrapolate_s_family,
    richardson_extrapolate,
    s_limit_formula,
)
from ..functionals import ChebyshevFunction
from ..oracles import dft_heat_diagonal


@pytest.fixture(scope="module")
def ring():
    geom = LatticeGeometry.chain(1024)
    return geom, build_lattice_laplacian(geom)


def zero_operator(n):
    return SparseHermitianOperator(sp.csr_matrix((n, n)), name="zero")


class TestBallAverage:
    """Test cases for ball_average_heat_trace."""

    def test_default_radii(self, ring):
        """Radii default to a quarter, half and all of the guard radius."""
        geom, _ = ring
        assert default_radii(geom) == [64.0, 128.0, 256.0]

    def test_matches_fourier_oracle(self, ring):
        """On a ring the ball average is the DFT heat diagonal."""
        geom, op = ring
        result = ball_average_heat_trace(op, geom, 1.0)
        assert result.method == EstimatorMethod.BALL_AVERAGE
        assert result.converged
        assert result.parameters == [64.0, 128.0, 256.0]
        assert result.value == pytest.approx(dft_heat_diagonal(1024, 1.0), rel=1e-10)
        assert result.extras["ball_volumes"] == [129, 257, 513]

    def test_time_zero_counts(self, ring):
        """At t = 0 every approximant is exactly 1."""
        geom, op = ring
        result = ball_average_heat_trace(op, geom, 0.0)
        assert all(v == 1.0 for _, v in result.approximants)

    def test_constant_shift(self, ring):
        """P + c rescales the value by e^{−tc}."""
        geom, op = ring
        free = ball_average_heat_trace(op, geom, 1.5).value
        shifted = ball_average_heat_trace(op.shifted(0.7), geom, 1.5).value
        assert shifted == pytest.approx(np.exp(-1.05) * free, rel=1e-9)

    def test_decreasing_in_time(self, ring):
        """The heat trace of a non-negative operator decreases in t."""
        geom, op = ring
        values = [ball_average_heat_trace(op, geom, t).value for t in (0.25, 0.5, 1.0, 2.0, 4.0)]
        assert all(a > b for a, b in zip(values, values[1:])), values

    def test_guard_band(self, ring):
        """Radii beyond the guard band are rejected."""
        geom, op = ring
        with pytest.raises(GeometryError, match="guard band"):
            ball_average_heat_trace(op, geom, 1.0, radii=[100, 300])

    def test_radii_must_increase(self, ring):
        """Radii are given in increasing order."""
        geom, op = ring
        with pytest.raises(ParameterError):
            ball_average_heat_trace(op, geom, 1.0, radii=[128, 64])

    def test_stochastic_within_error_bars(self, ring):
        """The probe estimate agrees with the exact value within five standard errors."""
        geom, op = ring
        exact = ball_average_heat_trace(op, geom, 1.0).value
        result = ball_average_heat_trace(
            op, geom, 1.0, mode=TraceMode.STOCHASTIC, probes=ProbeEnsemble(64, seed=5)
        )
        assert result.std_error > 0
        assert abs(result.value - exact) <= 5 * result.std_error

    def test_seed_stability(self):
        """
        Two disorder seeds give ball averages within four combined errors.

        At N = 1024 the largest ball holds sixteen batch means, so the error
        estimate is itself noisy and the bound is widened from three to four.
        """
        geom = LatticeGeometry.chain(1024)
        results = [
            ball_average_heat_trace(
                build_schrodinger(geom, IIDUniformPotential(0.0, 1.0, seed=seed)), geom, 1.0
            )
            for seed in (1, 2)
        ]
        combined = np.hypot(results[0].std_error, results[1].std_error)
        assert combined > 0
        assert abs(results[0].value - results[1].value) <= 4 * combined

    @pytest.mark.slow
    def test_seed_stability_desk_scale(self):
        """N = 4096, t = 1: two disorder seeds agree within three combined errors."""
        geom = LatticeGeometry.chain(4096)
        results = [
            ball_average_heat_trace(
                build_schrodinger(geom, IIDUniformPotential(0.0, 1.0, seed=seed)), geom, 1.0
            )
            for seed in (1, 2)
        ]
        combined = np.hypot(results[0].std_error, results[1].std_error)
        assert combined > 0
        assert abs(results[0].value - results[1].value) <= 3 * combined

    def test_batch_standard_error(self):
        """Constant data has no batch-means error."""
        assert batch_standard_error(np.full(256, 0.3)) == pytest.approx(0.0, abs=1e-15)
        assert batch_standard_error(np.arange(64.0)) > 0


class TestEpsilonFormula:
    """Test cases for epsilon_formula."""

    def test_matches_fourier_oracle(self, ring):
        """ε Tr(e^{−tP}χ) approaches the DFT value as ε decreases."""
        geom, op = ring
        result = epsilon_formula(op, weight_field(geom), 1.0, default_eps_grid(geom))
        assert result.method == EstimatorMethod.EPSILON
        assert result.value == pytest.approx(dft_heat_diagonal(1024, 1.0), rel=2e-2)
        assert result.extras["mask_equals_ball"] is True
        assert result.extras["mask_sizes"] == [129, 257, 513]

    def test_counting_identity_at_time_zero(self, ring):
        """At t = 0 the approximants are |B|/(1+|B|)."""
        geom, op = ring
        result = epsilon_formula(op, weight_field(geom), 0.0, default_eps_grid(geom))
        expected = [129 / 130, 257 / 258, 513 / 514]
        assert [v for _, v in result.approximants] == pytest.approx(expected, rel=1e-12)

    def test_grid_is_sorted_descending(self, ring):
        """ε values are processed from large to small."""
        geom, op = ring
        grid = default_eps_grid(geom)
        result = epsilon_formula(op, weight_field(geom), 1.0, list(reversed(grid)))
        assert result.parameters == sorted(grid, reverse=True)

    def test_single_site_mask(self, ring):
        """ε = max w keeps only the basepoint."""
        geom, op = ring
        result = epsilon_formula(op, weight_field(geom), 1.0, [0.5])
        assert result.extras["mask_sizes"] == [1]
        assert result.value == pytest.approx(0.5 * dft_heat_diagonal(1024, 1.0), rel=1e-10)

    def test_empty_mask(self, ring):
        """ε above every weight leaves nothing to trace."""
        geom, op = ring
        with pytest.raises(ParameterError, match="empty"):
            epsilon_formula(op, weight_field(geom), 1.0, [0.6])


class TestSLimit:
    """Test cases for s_limit_formula and Richardson extrapolation."""

    def test_fit_recovers_limit_and_amplitude(self):
        """A polynomial family minus G·ε^h gives back F(0) and G."""
        s_grid = [1.4, 1.2, 1.1, 1.05]
        h = np.array(s_grid) - 1.0
        raw = 0.7 + 0.2 * h - 0.5 * h**2 - 0.7 * 1e-3**h
        fit = extrapolate_s_family(s_grid, raw, 1e-3)
        assert fit.value == pytest.approx(0.7, abs=1e-8)
        assert fit.amplitude == pytest.approx(0.7, abs=1e-8)
        assert fit.truncation_bias == pytest.approx(0.7 * 1e-3**0.05, abs=1e-8)
        assert fit.converged

    def test_fit_flags_inconsistent_family(self):
        """A family that does not vanish at s = 1 is not converged."""
        s_grid = [1.4, 1.2, 1.1, 1.05]
        h = np.array(s_grid) - 1.0
        fit = extrapolate_s_family(s_grid, 0.7 + 0.2 * h - 0.4 * 1e-3**h, 1e-3)
        assert fit.value == pytest.approx(0.7, abs=1e-8)
        assert fit.amplitude == pytest.approx(0.4, abs=1e-8)
        assert not fit.converged

    def test_fit_needs_two_exponents(self):
        """One exponent cannot separate the limit from the tail."""
        with pytest.raises(InsufficientDataError):
            extrapolate_s_family([1.2], [0.1], 1e-3)

    def test_richardson_recovers_polynomial(self):
        """A cubic in h is extrapolated exactly."""
        h = [0.4, 0.2, 0.1, 0.05]
        values = [1.0 + 0.5 * x - 2.0 * x**2 + x**3 for x in h]
        value, converged, change = richardson_extrapolate(h, values)
        assert value == pytest.approx(1.0, abs=1e-12)
        assert converged
        assert change < 1e-2

    def test_zero_operator_tends_to_one(self):
        """(s−1)Σ w^s → 1 for the chain weights."""
        geom = LatticeGeometry.chain(1024)
        result = s_limit_formula(zero_operator(1024), weight_field(geom), 1.0)
        assert result.method == EstimatorMethod.S_LIMIT
        assert result.value == pytest.approx(1.0, abs=2e-2)
        assert result.parameters == [1.4, 1.2, 1.1, 1.05]

    def test_time_zero_equals_zero_operator(self, ring):
        """e^{0} is the identity, so t = 0 reproduces the P = 0 value."""
        geom, op = ring
        weights = weight_field(geom)
        free = s_limit_formula(op, weights, 0.0).value
        zero = s_limit_formula(zero_operator(op.n), weights, 1.0).value
        assert free == pytest.approx(zero, rel=1e-10)

    def test_matches_fourier_oracle(self, ring):
        """The extrapolated value sits within 3% of the DFT value."""
        geom, op = ring
        result = s_limit_formula(op, weight_field(geom), 1.0)
        assert result.value == pytest.approx(dft_heat_diagonal(1024, 1.0), rel=3e-2)
        assert result.converged
        assert result.extras["extrapolation_residual"] < 1e-2

    def test_box_family_decays_towards_one(self, ring):
        """On a finite box (s−1)Tr(e^{−tP}W^s) falls as s → 1 and alone extrapolates to ≈ 0."""
        geom, op = ring
        result = s_limit_formula(op, weight_field(geom), 1.0)
        s, raw = zip(*result.approximants)
        assert list(s) == [1.4, 1.2, 1.1, 1.05]
        assert all(a > b for a, b in zip(raw, raw[1:]))
        assert raw[-1] < 0.5 * result.value
        polynomial_only, _, _ = richardson_extrapolate([x - 1 for x in s], raw)
        assert abs(polynomial_only) < 0.1 * result.value

    def test_truncation_bias_is_reported(self, ring):
        """The missing tail is reported apart from the value."""
        geom, op = ring
        result = s_limit_formula(op, weight_field(geom), 1.0)
        extras = result.extras
        assert 0 < extras["tail_fraction"] < 1
        assert extras["truncation_bias"] > result.approximants[-1][1]
        assert extras["truncation_bias"] < result.value
        # the fitted amplitude agrees with the closure ε_min·Tr(e^{−tP}) without using it
        assert extras["fitted_amplitude"] == pytest.approx(extras["closure_amplitude"], rel=1e-2)

    def test_rejects_exponents_outside_range(self, ring):
        """s must lie in (1, 2]."""
        geom, op = ring
        with pytest.raises(ParameterError):
            s_limit_formula(op, weight_field(geom), 1.0, s_grid=[2.5, 1.1])
        with pytest.raises(ParameterError):
            s_limit_formula(op, weight_field(geom), 1.0, s_grid=[1.2, 1.0])

    @pytest.mark.slow
    def test_desk_scale(self):
        """N = 4096, t = 1: within 3% of the DFT value."""
        geom = LatticeGeometry.chain(4096)
        result = s_limit_formula(build_lattice_laplacian(geom), weight_field(geom), 1.0)
        assert result.value == pytest.approx(dft_heat_diagonal(4096, 1.0), rel=3e-2)


class TestDixmierSide:
    """Test cases for dixmier_side."""

    def test_zero_operator_counts_weights(self):
        """With P = 0 the eigenvalues are the weights and the trace is 1."""
        geom = LatticeGeometry.chain(1024)
        result = dixmier_side(zero_operator(1024), weight_field(geom), 1.0)
        assert result.method == EstimatorMethod.DIXMIER
        assert result.value == pytest.approx(1.0, abs=2e-2)
        assert result.extras["n_eigenvalues"] == 1024
        assert result.extras["n_terms"] < 1024

    def test_squared_weights_are_trace_class(self):
        """w² is summable, so the log-Cesàro means fall towards zero."""
        geom = LatticeGeometry.chain(1024)
        weights = weight_field(geom).values ** 2
        result = dixmier_side(zero_operator(1024), weights, 1.0)
        assert result.value < 2 / np.log(2 + 1024)

    def test_explicit_surrogate(self, ring):
        """The surrogate description is reported."""
        geom, op = ring
        result = dixmier_side(op, weight_field(geom), 1.0, LogExtrapolationSurrogate(2))
        assert result.extras["surrogate"] == "log-extrapolation:2"

    def test_approximants_at_dyadic_indices(self, ring):
        """Approximants are sampled at N = 2^j − 1 and the last index."""
        geom, op = ring
        result = dixmier_side(op, weight_field(geom), 1.0)
        assert result.parameters[:4] == [0.0, 1.0, 3.0, 7.0]
        assert result.parameters[-1] == result.extras["n_terms"] - 1

    def test_function_form_matches_heat(self, ring):
        """f(P) = e^{−tP} through Chebyshev coefficients reproduces the heat version."""
        geom, op = ring
        weights = weight_field(geom)
        f = ChebyshevFunction.heat(1.0, (-0.05, 4.05))
        via_function = dixmier_side_function(op, weights, f.coefficients, bounds=f.bounds)
        assert via_function.value == pytest.approx(dixmier_side(op, weights, 1.0).value, rel=1e-8)

    def test_capability(self):
        """Instances above n_exact are refused."""
        geom = LatticeGeometry.chain(64)
        op = build_lattice_laplacian(geom)
        with pytest.raises(CapabilityError, match="Dixmier side"):
            dixmier_side(op, weight_field(geom), 1.0, n_exact=32)

    def test_too_few_terms(self):
        """Fewer than sixteen eigenvalues cannot be averaged."""
        geom = LatticeGeometry.chain(8)
        with pytest.raises(InsufficientDataError):
            dixmier_side(build_lattice_laplacian(geom), weight_field(geom), 1.0)

    @pytest.mark.slow
    def test_desk_scale(self):
        """N = 4096, t = 1: within 5% of the DFT value."""
        geom = LatticeGeometry.chain(4096)
        result = dixmier_side(build_lattice_laplacian(geom), weight_field(geom), 1.0)
        assert result.value == pytest.approx(dft_heat_diagonal(4096, 1.0), rel=5e-2)

    def test_ring_within_bulk(self, ring):
        """N = 1024, t = 1: the bulk eigenvalues give the DFT value within 3%."""
        geom, op = ring
        result = dixmier_side(op, weight_field(geom), 1.0)
        assert result.value == pytest.approx(dft_heat_diagonal(1024, 1.0), rel=3e-2)
        assert result.extras["n_terms"] < result.extras["n_eigenvalues"] // 2


class TestBulkLength:
    """Test cases for bulk_length."""

    def test_harmonic_weights(self):
        """With K = I the cut keeps weights above twice the smallest."""
        weights = 1.0 / np.arange(1, 65)
        assert bulk_length(weights, weights, 1.0) == 31

    def test_kernel_norm_scales_floor(self):
        """A smaller kernel norm lowers the floor."""
        weights = 1.0 / np.arange(1, 65)
        assert bulk_length(weights, weights, 0.5) == 63

    def test_keeps_sixteen_terms(self):
        """Short bulks are padded to sixteen terms."""
        weights = np.full(40, 0.1)
        assert bulk_length(weights, weights, 1.0) == 16

    def test_zero_weights(self):
        """Without a positive weight nothing is cut."""
        assert bulk_length(np.zeros(20), np.zeros(20), 1.0) == 20
