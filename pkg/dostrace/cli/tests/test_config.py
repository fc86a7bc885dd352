"""Unit tests for experiment configuration loading."""

import math

import pytest

from ...configs import HYPERBOLIC_3
from ...errors import ConfigError
from ...growth.profiles import PowerProfile
from ...models.enums import Boundary, EstimatorMethod, Metric, TraceMode
from ..config import (
    ExperimentConfig,
    flatten,
    load_config,
    parse_assignment,
    parse_geometry,
    parse_literal,
    unflatten,
)

DOCUMENT = """
[geometry]
dim = 1
n = 512
boundary = "dirichlet"

[dos]
t = [0.5, 1, 2]
estimators = ["ball-average", "epsilon"]

[run]
out_dir = "out"
workers = 2
"""


@pytest.fixture
def document(tmp_path):
    path = tmp_path / "experiment.toml"
    path.write_text(DOCUMENT)
    return path


class TestParsing:
    """Test cases for literals, assignments and geometry strings."""

    def test_literals(self):
        """TOML literals parse, everything else stays a string."""
        assert parse_literal("3") == 3
        assert parse_literal("[0.5, 1]") == [0.5, 1]
        assert parse_literal("true") is True
        assert parse_literal("inf") == math.inf
        assert parse_literal("tail-mean:0.2") == "tail-mean:0.2"

    def test_assignment(self):
        """--set splits on the first equals sign."""
        assert parse_assignment("dos.surrogate=tail-mean:0.2") == {
            "dos.surrogate": "tail-mean:0.2"
        }
        with pytest.raises(ConfigError):
            parse_assignment("dos.t")

    def test_geometry_string(self):
        """d=1,N=4096,periodic sets three geometry keys."""
        assert parse_geometry("d=1,N=4096,periodic") == {
            "geometry.dim": 1,
            "geometry.n": 4096,
            "geometry.boundary": "periodic",
        }

    def test_geometry_extents_and_metric(self):
        """Explicit extents and the l1 metric are accepted."""
        flat = parse_geometry("extents=64x32,metric=l1,dirichlet")
        assert flat["geometry.extents"] == [64, 32]
        assert flat["geometry.metric"] == "l1"
        assert flat["geometry.boundary"] == "dirichlet"

    def test_geometry_preset(self):
        """A preset name expands to extents, metric and boundary."""
        config = load_config(None, parse_geometry("square-64-l1,dirichlet"))
        geom = config.geometry.build()
        assert geom.extents == (64, 64)
        assert geom.metric == Metric.L1
        assert geom.boundary == Boundary.DIRICHLET

    @pytest.mark.parametrize("text", ["d=1,twisted", "size=4", "extents=ax4"])
    def test_bad_geometry(self, text):
        """Unknown tokens name the geometry key."""
        with pytest.raises(ConfigError) as excinfo:
            parse_geometry(text)
        assert excinfo.value.keys[0].startswith("geometry")

    def test_flatten_round_trip(self):
        """Nested tables flatten to dotted keys and back."""
        nested = {"dos": {"t": [1.0], "mode": "exact"}, "run": {"workers": 2}}
        assert flatten(nested) == {"dos.t": [1.0], "dos.mode": "exact", "run.workers": 2}
        assert unflatten(flatten(nested)) == nested


class TestLoadConfig:
    """Test cases for load_config."""

    def test_profile_preset(self):
        """A named profile replaces the family parameters."""
        config = load_config(None, {"profile.preset": "hyperbolic-3"})
        assert config.profile.build().describe() == HYPERBOLIC_3.describe()
        assert load_config().profile.build().describe() == PowerProfile(3.0).describe()

    def test_unknown_profile_preset(self):
        """Unknown preset names are a config error on profile.preset."""
        with pytest.raises(ConfigError) as excinfo:
            load_config(None, {"profile.preset": "flat"})
        assert "profile.preset" in excinfo.value.keys

    def test_defaults(self):
        """No document gives the library defaults."""
        config = load_config()
        assert config.geometry.n == 4096
        assert config.dos.t == [1.0]
        assert config.dos.methods() == list(EstimatorMethod)
        assert config.dos.probe_ensemble() is None

    def test_document(self, document):
        """Documents populate the sections."""
        config = load_config(document)
        geom = config.geometry.build()
        assert geom.extents == (512,)
        assert geom.boundary == Boundary.DIRICHLET
        assert geom.metric == Metric.EUCLIDEAN
        assert config.dos.methods() == [EstimatorMethod.BALL_AVERAGE, EstimatorMethod.EPSILON]
        assert config.workers == 2

    def test_overrides_win(self, document):
        """Flat overrides replace document values; None leaves them alone."""
        config = load_config(document, {"geometry.n": 256, "dos.mode": "stochastic", "dos.t": None})
        assert config.geometry.n == 256
        assert config.dos.mode == TraceMode.STOCHASTIC
        assert config.dos.t == [0.5, 1, 2]
        assert config.dos.probe_ensemble().n_probes == 32

    def test_extra_key_is_named(self):
        """Unknown keys are rejected with their dotted name."""
        with pytest.raises(ConfigError) as excinfo:
            load_config(overrides={"dos.temperature": 1})
        assert "dos.temperature" in excinfo.value.keys
        assert "dos.temperature" in str(excinfo.value)

    @pytest.mark.parametrize(
        "key, value",
        [
            ("dos.t", [-1.0]),
            ("dos.estimators", ["fourier"]),
            ("dos.probes", 4),
            ("index.flux", "1/0"),
            ("geometry.dim", 0),
        ],
    )
    def test_invalid_values(self, key, value):
        """Out-of-range values are rejected with their key."""
        with pytest.raises(ConfigError) as excinfo:
            load_config(overrides={key: value})
        assert excinfo.value.keys[0].startswith(key)

    def test_malformed_toml(self, tmp_path):
        """TOML syntax errors become config errors."""
        path = tmp_path / "broken.toml"
        path.write_text("[dos\nt = 1")
        with pytest.raises(ConfigError):
            load_config(path)

    def test_exit_code(self):
        """Config errors exit with 2."""
        assert ConfigError("bad").exit_code == 2


class TestProvenance:
    """Test cases for the config hash and the output directory."""

    def test_hash_is_stable(self):
        """Equal configs hash alike; any change moves the hash."""
        first = load_config(overrides={"dos.t": [1.0]})
        assert first.config_hash() == ExperimentConfig().config_hash()
        assert len(first.config_hash()) == 16
        assert load_config(overrides={"dos.t": [2.0]}).config_hash() != first.config_hash()

    def test_out_dir_precedence(self, monkeypatch):
        """--out beats DOSTRACE_OUT, which beats run.out_dir."""
        config = load_config(overrides={"run.out_dir": "from-config"})
        monkeypatch.delenv("DOSTRACE_OUT", raising=False)
        assert str(config.out_dir()) == "from-config"
        monkeypatch.setenv("DOSTRACE_OUT", "from-env")
        assert str(config.out_dir()) == "from-env"
        assert str(config.out_dir("from-flag")) == "from-flag"

    def test_verify_settings(self):
        """The verify section maps onto the testbed settings."""
        settings = load_config(overrides={"verify.r": 3}).verify.settings(workers=2)
        assert settings.r == 3
        assert settings.workers == 2
        assert isinstance(settings.s_grid, tuple)
