"""Unit tests for log-Cesàro means and surrogate Dixmier traces."""

import math

import numpy as np
import pytest

from ...errors import InsufficientDataError, ParameterError
from ...strategies import (
    DyadicAgreementSurrogate,
    LastValueSurrogate,
    LogExtrapolationSurrogate,
    TailMeanSurrogate,
)
from ..dixmier import dixmier_estimate, log_cesaro_means, order_eigenvalues

N = 10**6
EULER_GAMMA = 0.5772156649015329


@pytest.fixture(scope="module")
def harmonic():
    return 1.0 / np.arange(1, N + 1, dtype=float)


class TestLogCesaroMeans:
    """Test cases for log_cesaro_means."""

    def test_harmonic_means_carry_euler_gamma_offset(self, harmonic):
        """M_N of 1/(k+1) is H_{N+1}/log(2+N) ≈ 1 + γ/log(2+N)."""
        means = log_cesaro_means(harmonic)
        expected = 1.0 + EULER_GAMMA / math.log(2 + N - 1)
        assert means[-1] == pytest.approx(expected, abs=1e-5)
        assert abs(means[-1] - 1.0) < 0.05, "Harmonic means should be close to 1"

    def test_trace_class_bound(self):
        """Means of 1/(k+1)² stay below (π²/6)/log(2+N)."""
        seq = 1.0 / np.arange(1, N + 1, dtype=float) ** 2
        means = log_cesaro_means(seq)
        assert means[-1] <= (math.pi**2 / 6) / math.log(2 + N - 1)

    def test_single_entry(self):
        """N = 0 divides by log 3."""
        assert log_cesaro_means([2.0])[0] == pytest.approx(2.0 / math.log(3))


class TestOrderEigenvalues:
    """Test cases for the Dixmier ordering of eigenvalues."""

    def test_absolute_value_then_sign(self):
        """Descending |λ|, ties resolved towards the positive value."""
        ordered = order_eigenvalues([-1.0, 0.5, 1.0, -3.0])
        assert ordered.tolist() == [-3.0, 1.0, -1.0, 0.5]


class TestDixmierEstimate:
    """Test cases for dixmier_estimate with the four surrogates."""

    def test_harmonic_log_extrapolation(self, harmonic):
        """Extrapolating in 1/log N removes the γ offset: value ≈ 1."""
        estimate = dixmier_estimate(harmonic, LogExtrapolationSurrogate(1))
        assert estimate.value == pytest.approx(1.0, abs=1e-2)
        assert estimate.converged, "Harmonic means should settle"
        assert len(estimate.means) == N

    def test_harmonic_tail_mean(self, harmonic):
        """The tail mean reports the raw means, 1 + γ/log N."""
        estimate = dixmier_estimate(harmonic, TailMeanSurrogate(0.2))
        assert estimate.value == pytest.approx(1.0 + EULER_GAMMA / math.log(N), abs=2e-3)
        assert estimate.converged
        assert estimate.spread >= 0

    def test_trace_class_sequence(self):
        """1/(k+1)² sits in the kernel: the value is small and decays like 1/log N."""
        seq = 1.0 / np.arange(1, N + 1, dtype=float) ** 2
        estimate = dixmier_estimate(seq, TailMeanSurrogate(0.2))
        assert estimate.value <= 0.12
        assert estimate.spread >= 0
        extrapolated = dixmier_estimate(seq, LogExtrapolationSurrogate(1))
        assert abs(extrapolated.value) < 1e-2, "Extrapolation should go to the kernel value 0"

    def test_alternating_sequence(self):
        """(-1)^k/(k+1) has means ≈ log 2/log(2+N)."""
        k = np.arange(N, dtype=float)
        seq = (-1.0) ** k / (k + 1)
        estimate = dixmier_estimate(seq, LastValueSurrogate())
        assert estimate.value == pytest.approx(math.log(2) / math.log(2 + N - 1), abs=1e-4)
        assert estimate.converged

    def test_dyadic_agreement(self, harmonic):
        """Dyadic means of the harmonic sequence agree within 1e-2."""
        estimate = dixmier_estimate(harmonic, DyadicAgreementSurrogate(1e-2))
        assert estimate.tolerance == 1e-2
        assert estimate.value == pytest.approx(1.04, abs=0.01)
        assert estimate.converged

    def test_insufficient_data(self):
        """Fewer than 16 terms is rejected."""
        with pytest.raises(InsufficientDataError, match="insufficient data"):
            dixmier_estimate(np.ones(15))

    def test_surrogate_parameters_validated(self):
        """Out-of-range surrogate parameters raise ParameterError."""
        with pytest.raises(ParameterError):
            TailMeanSurrogate(0.0)
        with pytest.raises(ParameterError):
            DyadicAgreementSurrogate(-1.0)
        with pytest.raises(ParameterError):
            LogExtrapolationSurrogate(3)
