"""Unit tests for the Property (D) checker and its derived conditions."""

import math

import numpy as np
import pytest

from ...configs import PROFILE_PRESETS
from ...errors import ParameterError
from ...models.enums import TailVerdict
from ..checks import (
    check_grimaldi_ratio,
    check_property_d,
    classify_tail,
    condition1_partial_sum,
    property_c_ratio,
    shifted_surface_condition,
    surface_ratio_sequence,
    weight_at,
)
from ..profiles import ExpProfile, PowerProfile, StretchedExpProfile


class TestSurfaceRatios:
    """Test cases for S(k)/V(k)."""

    def test_quadratic_growth(self):
        """V = r² gives 2/k."""
        ratios = surface_ratio_sequence(PowerProfile(2), 4)
        np.testing.assert_allclose(ratios, [2.0, 1.0, 2.0 / 3.0, 0.5])

    def test_exponential_growth(self):
        """V = e^{2r} gives the constant 2."""
        np.testing.assert_allclose(surface_ratio_sequence(ExpProfile(2.0), 3), [2.0, 2.0, 2.0])

    def test_stretched_growth(self):
        """V = exp(r^0.4) gives 0.4 k^{-0.6}."""
        k = np.arange(1, 51, dtype=float)
        np.testing.assert_allclose(
            surface_ratio_sequence(StretchedExpProfile(0.4), 50), 0.4 * k**-0.6, rtol=1e-12
        )


class TestClassifyTail:
    """Test cases for the finite-data ℓ₂ verdict."""

    def test_fast_decay_is_summable(self):
        """k^{-1} is square summable."""
        k = np.arange(1, 1025)
        report = classify_tail(1.0 / k, k)
        assert report.verdict == TailVerdict.SUMMABLE
        assert report.exponent == pytest.approx(-1.0, abs=1e-6)

    def test_slow_decay_is_divergent(self):
        """k^{-0.4} is not square summable."""
        k = np.arange(1, 1025)
        assert classify_tail(k**-0.4, k).verdict == TailVerdict.DIVERGENT

    def test_too_few_terms(self):
        """Fewer than sixteen terms give no verdict."""
        k = np.arange(1, 10)
        assert classify_tail(1.0 / k, k).verdict == TailVerdict.INCONCLUSIVE


class TestPropertyD:
    """Test cases for the full Property (D) check."""

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_polynomial_growth_passes(self, d):
        """Euclidean-type growth satisfies both conditions."""
        report = check_property_d(PowerProfile(d))
        assert report.passes, report.to_dict()
        assert report.derivative_ratio_limit == pytest.approx((d - 1) / 1024)

    def test_subexponential_growth_passes(self):
        """exp(r^0.4) has ratio exponent -0.6 and a vanishing S'/S."""
        report = check_property_d(StretchedExpProfile(0.4))
        assert report.ell2_tail_verdict == TailVerdict.SUMMABLE
        assert report.derivative_ok
        assert report.passes

    def test_exponential_growth_fails(self):
        """Hyperbolic-type growth fails both conditions."""
        report = check_property_d(ExpProfile(2.0))
        assert report.ell2_tail_verdict == TailVerdict.DIVERGENT
        assert not report.derivative_ok
        assert report.derivative_ratio_limit == pytest.approx(2.0)
        assert not report.passes

    def test_volume_constant_does_not_matter(self):
        """Scaling V by a constant leaves the report unchanged."""
        a = check_property_d(PowerProfile(3), K=64, Rmax=128)
        b = check_property_d(PowerProfile(3, c=5.0), K=64, Rmax=128)
        assert a.ell2_partial_sum == pytest.approx(b.ell2_partial_sum)
        assert a.derivative_ratio_limit == pytest.approx(b.derivative_ratio_limit)

    def test_parameter_ranges(self):
        """K below 16 or Rmax below K are rejected."""
        with pytest.raises(ParameterError):
            check_property_d(PowerProfile(2), K=8)
        with pytest.raises(ParameterError):
            check_property_d(PowerProfile(2), K=64, Rmax=32)

    def test_report_serialises(self):
        """to_dict carries the verdict as a plain string."""
        data = check_property_d(PowerProfile(2), K=32, Rmax=64).to_dict()
        assert data["ell2_tail_verdict"] == "summable"
        assert data["passes"] is True


class TestGrimaldiRatio:
    """Test cases for the volume ratio V(R−r)/V(R+r)."""

    def test_quadratic_growth(self):
        """The minimum over [50, 100] sits at R = 50."""
        ratio = check_grimaldi_ratio(PowerProfile(2), r=1.0, Rmax=100.0)
        assert ratio == pytest.approx((49.0 / 51.0) ** 2)

    def test_exponential_growth(self):
        """e^{2r} gives e^{-4} at every R."""
        assert check_grimaldi_ratio(ExpProfile(2.0), r=1.0, Rmax=100.0) == pytest.approx(
            math.exp(-4.0)
        )

    def test_zero_radius(self):
        """r = 0 gives exactly one."""
        assert check_grimaldi_ratio(PowerProfile(3), r=0.0, Rmax=10.0) == 1.0

    def test_rejects_small_rmax(self):
        """Rmax must exceed 2r."""
        with pytest.raises(ParameterError):
            check_grimaldi_ratio(PowerProfile(2), r=5.0, Rmax=10.0)


class TestShiftedConditions:
    """Test cases for the shifted-surface and Condition 1 sums."""

    def test_shifted_polynomial_is_summable(self):
        """sup S(k+s)/V(k) over s ∈ [0, 1] decays like 2/k for V = r²."""
        assert shifted_surface_condition(PowerProfile(2), h=1.0).summable

    def test_shifted_stretched_is_summable(self):
        """A shift of 3 does not spoil the decay for exp(r^0.4)."""
        assert shifted_surface_condition(StretchedExpProfile(0.4), h=3.0).summable

    @pytest.mark.parametrize("name", sorted(PROFILE_PRESETS))
    @pytest.mark.parametrize("h", [1.0, 2.0, 3.0])
    def test_property_d_implies_shifted_summability(self, name, h):
        """Every named profile that passes Property (D) also has a summable shifted surface."""
        profile = PROFILE_PRESETS[name]
        if not check_property_d(profile).passes:
            pytest.skip(f"{name} fails Property (D)")
        assert shifted_surface_condition(profile, h=h).summable

    def test_shifted_exponential_diverges(self):
        """Constant ratios are not square summable."""
        report = shifted_surface_condition(ExpProfile(2.0), h=1.0)
        assert report.verdict == TailVerdict.DIVERGENT

    def test_condition1_first_term(self):
        """With K = 0 only k = 0 contributes: S(2)² / (1 + V(0))² = 144 for V = r³."""
        report = condition1_partial_sum(PowerProfile(3), r0=1.0, K=0)
        assert report.partial_sum == pytest.approx(144.0)

    def test_condition1_polynomial_is_summable(self):
        """V = r³ has a summable Condition 1 series."""
        assert condition1_partial_sum(PowerProfile(3), r0=1.0, K=1000).summable

    def test_condition1_exponential_diverges(self):
        """V = e^{2r} does not."""
        report = condition1_partial_sum(ExpProfile(2.0), r0=1.0, K=64)
        assert report.verdict == TailVerdict.DIVERGENT

    def test_condition1_rejects_large_r0(self):
        """r₀ lies in (0, 1]."""
        with pytest.raises(ParameterError):
            condition1_partial_sum(PowerProfile(2), r0=1.5)


class TestWeightsAndVolumeRatios:
    """Test cases for w = 1/(1+V) and V((k+1)r)/V(kr)."""

    def test_weight_values(self):
        """Weights at the basepoint, in a quadratic ball and in an exponential ball."""
        assert weight_at(PowerProfile(3), 0.0) == 1.0
        assert weight_at(PowerProfile(2), 3.0) == pytest.approx(0.1)
        assert weight_at(ExpProfile(2.0), 1.0) == pytest.approx(1.0 / (1.0 + math.e**2))

    def test_negative_distance(self):
        """Distances are non-negative."""
        with pytest.raises(ParameterError):
            weight_at(PowerProfile(2), -1.0)

    def test_volume_ratio_tends_to_one_for_polynomial_growth(self):
        """(1 + 1/k)^3 → 1."""
        report = property_c_ratio(PowerProfile(3))
        assert report.tends_to_one
        assert report.ratios[0] == pytest.approx(8.0)

    def test_volume_ratio_stays_away_from_one_for_exponential_growth(self):
        """e^{2r} has ratio e² at every step."""
        report = property_c_ratio(ExpProfile(2.0), K=32)
        assert not report.tends_to_one
        assert report.final_ratio == pytest.approx(math.e**2)
