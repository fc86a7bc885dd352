"""Unit tests for growth profiles."""

import math

import numpy as np
import pytest

from ...errors import GeometryError, ParameterError
from ..profiles import ExpProfile, PowerProfile, StretchedExpProfile, TabulatedProfile


class TestClosedFormProfiles:
    """Test cases for the closed-form samplers."""

    @pytest.mark.parametrize(
        "profile",
        [PowerProfile(2), PowerProfile(3, c=4.0), StretchedExpProfile(0.4), ExpProfile(2.0)],
        ids=["r2", "4r3", "stretched", "exp"],
    )
    def test_surface_is_volume_derivative(self, profile):
        """Central differences of V match S to 1e-6 relative at step 1e-4."""
        h = 1e-4
        for r in (1.0, 2.5, 7.0, 20.0):
            fd = (profile.volume(r + h) - profile.volume(r - h)) / (2 * h)
            assert fd == pytest.approx(
                profile.surface(r), rel=1e-6
            ), f"{profile.describe()} at r={r}"

    @pytest.mark.parametrize(
        "profile",
        [PowerProfile(3), StretchedExpProfile(0.4), ExpProfile(2.0)],
        ids=["r3", "stretched", "exp"],
    )
    def test_surface_derivative(self, profile):
        """S' matches a central difference of S."""
        h = 1e-4
        for r in (1.5, 4.0, 12.0):
            fd = (profile.surface(r + h) - profile.surface(r - h)) / (2 * h)
            assert fd == pytest.approx(profile.surface_derivative(r), rel=1e-5, abs=1e-8)

    def test_negative_radius_is_clamped(self):
        """V(r) = V(0) and S(r) = 0 for r < 0."""
        profile = PowerProfile(3, c=2.0)
        assert profile.volume(-1.0) == 0.0
        assert profile.surface(-0.5) == 0.0
        assert ExpProfile(1.0, c=3.0).volume(-2.0) == pytest.approx(3.0)

    def test_exponential_growth_stays_finite_in_log_domain(self):
        """e^{2r} at r = 1024 is represented through its logarithm."""
        profile = ExpProfile(2.0)
        assert profile.log_volume(1024.0) == pytest.approx(2048.0)
        assert math.isfinite(profile.log_surface(1024.0))

    def test_vectorised_evaluation(self):
        """Arrays in, arrays out, including negative entries."""
        values = PowerProfile(2).volume(np.array([-1.0, 0.0, 1.0, 3.0]))
        np.testing.assert_allclose(values, [0.0, 0.0, 1.0, 9.0])

    def test_parameters_validated(self):
        """Invalid exponents are rejected."""
        with pytest.raises(ParameterError):
            StretchedExpProfile(1.5)
        with pytest.raises(ParameterError):
            ExpProfile(0.0)


class TestTabulatedProfile:
    """Test cases for tabulated profiles."""

    @staticmethod
    def _table(tmp_path, rows):
        path = tmp_path / "profile.csv"
        lines = ["r,V,S,Sprime"] + [",".join(repr(float(x)) for x in row) for row in rows]
        path.write_text("\n".join(lines) + "\n")
        return path

    def test_reads_consistent_table(self, tmp_path):
        """A finely sampled r² table interpolates V and S."""
        r = np.linspace(0, 10, 1001)
        path = self._table(tmp_path, zip(r, r**2, 2 * r, np.full_like(r, 2.0)))
        profile = TabulatedProfile.from_csv(path)
        assert profile.volume(3.0) == pytest.approx(9.0, rel=1e-3)
        assert profile.surface(3.0) == pytest.approx(6.0, rel=1e-6)
        assert profile.step == pytest.approx(0.01)

    def test_rejects_inconsistent_table(self, tmp_path):
        """ΔV far from ∫S is a geometry error."""
        r = np.linspace(1, 10, 10)
        path = self._table(tmp_path, zip(r, r**2, 10 * r, np.zeros_like(r)))
        with pytest.raises(GeometryError, match="inconsistent"):
            TabulatedProfile.from_csv(path)

    def test_rejects_missing_columns(self, tmp_path):
        """All four columns are required."""
        path = tmp_path / "bad.csv"
        path.write_text("r,V\n0,0\n1,1\n")
        with pytest.raises(GeometryError, match="missing columns"):
            TabulatedProfile.from_csv(path)
