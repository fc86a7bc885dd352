"""End-to-end tests of the dostrace command line."""

import csv
import json

import pytest

from dostrace import __version__


def read_results(out):
    lines = (out / "results.csv").read_text().splitlines()
    return lines[0], list(csv.DictReader(lines[1:]))


def quantities(rows):
    return {row["quantity"]: row["value"] for row in rows}


class TestGroup:
    """Test cases for the command group."""

    def test_version(self, invoke):
        """--version prints the toolkit version."""
        result = invoke("--version")
        assert result.exit_code == 0
        assert __version__ in result.output

    def test_unknown_command_exits_64(self, invoke):
        """Unknown commands are usage errors with exit code 64."""
        result = invoke("frobnicate")
        assert result.exit_code == 64

    def test_help_lists_commands(self, invoke):
        """Every experiment command is listed."""
        result = invoke("--help")
        for name in ["propd", "dos", "dixmier", "verify", "index", "seq"]:
            assert name in result.output


class TestPropd:
    """Test cases for the propd command."""

    def test_power_profile_passes(self, invoke, output_dir):
        """Euclidean growth satisfies Property (D)."""
        result = invoke("propd", "--profile", "power", "--d", 3)
        assert result.exit_code == 0, result.output
        header, rows = read_results(output_dir)
        assert header.startswith(f"# dostrace {__version__} config=")
        assert quantities(rows)["passes"] == "true"

    def test_exponential_profile_fails(self, invoke, output_dir):
        """e^{2r} fails and the command still succeeds."""
        result = invoke("propd", "--profile", "exp", "--rate", 2)
        assert result.exit_code == 0, result.output
        assert quantities(read_results(output_dir)[1])["passes"] == "false"

    def test_report_json(self, invoke, output_dir):
        """report.json nests provenance under meta."""
        invoke("propd", "--profile", "stretched-exp", "--alpha", 0.4)
        report = json.loads((output_dir / "report.json").read_text())
        assert report["meta"]["command"] == "propd"
        assert report["meta"]["version"] == __version__
        assert report["property_d"]["passes"] is True

    def test_named_preset(self, invoke, output_dir):
        """--preset selects a named profile; the hyperbolic plane fails."""
        result = invoke("propd", "--preset", "hyperbolic-2")
        assert result.exit_code == 0, result.output
        assert quantities(read_results(output_dir)[1])["passes"] == "false"
        report = json.loads((output_dir / "report.json").read_text())
        assert report["profile"] == "exp(rate=1, c=1)"

    def test_bad_override_names_key(self, invoke):
        """Schema errors exit with 2 and name the key."""
        result = invoke("propd", "--set", "profile.colour=red")
        assert result.exit_code == 2
        assert "profile.colour" in result.output


class TestDos:
    """Test cases for the dos and dixmier commands."""

    def test_ball_average_matches_oracle(self, invoke, output_dir, small_chain):
        """On the free chain the ball average is the DFT heat diagonal."""
        result = invoke(
            "dos", "--geom", small_chain, "--t", 1, "--estimators", "ball-average,epsilon"
        )
        assert result.exit_code == 0, result.output
        _, rows = read_results(output_dir)
        assert [row["method"] for row in rows] == ["ball-average", "epsilon"]
        ball = rows[0]
        assert float(ball["relative_gap"]) < 1e-8
        assert float(ball["reference"]) == pytest.approx(0.30851, abs=1e-4)

    def test_outputs_are_byte_identical(self, invoke, tmp_path, small_chain):
        """The same config reproduces results.csv byte for byte."""
        args = ["dos", "--geom", small_chain, "--t", 0.5, "--t", 2, "--estimators", "all"]
        assert invoke(*args, "--out", tmp_path / "a").exit_code == 0
        assert invoke(*args, "--out", tmp_path / "b").exit_code == 0
        first = (tmp_path / "a" / "results.csv").read_bytes()
        assert first == (tmp_path / "b" / "results.csv").read_bytes()

    def test_geometry_preset(self, invoke, output_dir):
        """--geom accepts a preset name."""
        result = invoke(
            "dos", "--geom", "chain-1024-dirichlet", "--t", 1, "--estimators", "ball-average"
        )
        assert result.exit_code == 0, result.output
        report = json.loads((output_dir / "report.json").read_text())
        assert report["geometry"] == "d=1,extents=1024,euclidean,dirichlet"
        assert read_results(output_dir)[1][0]["reference"] == ""

    def test_capability_error_exits_3(self, invoke, small_chain):
        """Exact paths beyond run.n_exact exit with 3."""
        result = invoke(
            "dos", "--geom", small_chain, "--estimators", "dixmier", "--set", "run.n_exact=64"
        )
        assert result.exit_code == 3
        assert "smaller instance" in result.output

    def test_histogram_and_export(self, invoke, output_dir, tmp_path, small_chain):
        """--histogram writes histogram.csv and --export-operator a Matrix Market file."""
        result = invoke(
            "dos",
            "--geom",
            small_chain,
            "--estimators",
            "ball-average",
            "--histogram",
            "--export-operator",
            tmp_path / "laplacian.mtx",
        )
        assert result.exit_code == 0, result.output
        lines = (output_dir / "histogram.csv").read_text().splitlines()
        assert lines[1] == "bin_lo,bin_hi,mass"
        assert sum(float(line.split(",")[2]) for line in lines[2:]) == pytest.approx(1.0, abs=1e-2)
        assert (tmp_path / "laplacian.mtx").read_text().startswith("%%MatrixMarket")

    def test_text_format_and_html(self, invoke, tmp_path, small_chain):
        """--format text uses plain tables and --html writes a report."""
        result = invoke(
            "dos",
            "--geom",
            small_chain,
            "--estimators",
            "ball-average",
            "--format",
            "text",
            "--html",
            tmp_path / "report.html",
        )
        assert result.exit_code == 0, result.output
        assert "ball-average t=1:" in result.output
        assert "config=" in (tmp_path / "report.html").read_text()

    def test_config_file(self, invoke, output_dir, tmp_path):
        """A TOML document drives the run and flags override it."""
        path = tmp_path / "experiment.toml"
        path.write_text(
            '[geometry]\nn = 128\n\n[dos]\nt = [1.0]\nestimators = ["epsilon"]\n'
        )
        result = invoke("dos", "-c", path, "--estimators", "ball-average")
        assert result.exit_code == 0, result.output
        _, rows = read_results(output_dir)
        assert [row["method"] for row in rows] == ["ball-average"]

    def test_dixmier_side(self, invoke, output_dir, small_chain):
        """The dixmier command writes one row per heat time."""
        result = invoke("dixmier", "--geom", small_chain, "--t", 0.5, "--t", 1)
        assert result.exit_code == 0, result.output
        _, rows = read_results(output_dir)
        assert [float(row["t"]) for row in rows] == [0.5, 1.0]
        assert all(row["method"] == "dixmier" for row in rows)

    @pytest.mark.slow
    def test_three_way_agreement(self, invoke, output_dir):
        """All estimators agree with the oracle on the 4096-site chain."""
        result = invoke("dos", "--geom", "chain-4096", "--t", 1, "--estimators", "all")
        assert result.exit_code == 0, result.output
        for row in read_results(output_dir)[1]:
            tolerance = 0.05 if row["method"] == "dixmier" else 0.02
            assert float(row["relative_gap"]) < tolerance, row


class TestVerify:
    """Test cases for the verify command."""

    def test_alt_has_no_violations(self, invoke, output_dir):
        """The ALT fuzz passes on small matrices."""
        result = invoke("verify", "alt", "--trials", 100, "--n-max", 8, "--r", 2)
        assert result.exit_code == 0, result.output
        assert quantities(read_results(output_dir)[1])["violations"] == "0"

    def test_zeta(self, invoke, output_dir):
        """The zeta inequality holds for q = 2."""
        result = invoke("verify", "zeta", "--trials", 100, "--q", 2)
        assert result.exit_code == 0, result.output

    def test_list(self, invoke):
        """verify list prints the registered testbeds."""
        result = invoke("verify", "list")
        assert result.exit_code == 0
        assert "main-theorem" in result.output.split()

    def test_unknown_testbed(self, invoke):
        """Unknown testbeds exit with 2 and list the available ones."""
        result = invoke("verify", "nonsense")
        assert result.exit_code == 2
        assert "Available testbeds" in result.output


class TestIndex:
    """Test cases for the index command."""

    def test_sixth_flux(self, invoke, output_dir):
        """Flux 1/6 on the 6x6 torus has index 6 and density 1/6."""
        result = invoke("index", "--lx", 6, "--ly", 6, "--flux", "1/6")
        assert result.exit_code == 0, result.output
        report = json.loads((output_dir / "report.json").read_text())
        assert report["zero_modes"]["index"] == 6
        assert report["index_density"] == pytest.approx(1 / 6)
        assert report["max_relative_deviation"] < 1e-2
        for row in read_results(output_dir)[1]:
            assert float(row["raw_supertrace"]) == pytest.approx(6.0, abs=1e-10)

    def test_gauge_error(self, invoke):
        """A flux denominator not dividing Lx exits with 2."""
        result = invoke("index", "--lx", 5, "--ly", 6, "--flux", "1/2")
        assert result.exit_code == 2


class TestSeq:
    """Test cases for the seq command."""

    def test_harmonic(self, invoke, output_dir):
        """The harmonic sequence has Dixmier trace 1 and weak-l1 norm 1."""
        result = invoke("seq", "--generator", "harmonic", "--n", 100_000, "--p", 1, "--q", "inf")
        assert result.exit_code == 0, result.output
        values = quantities(read_results(output_dir)[1])
        assert values["n_terms"] == "100000"
        assert float(values["quasinorm"]) == pytest.approx(1.0)
        assert float(values["dixmier_value"]) == pytest.approx(1.0, abs=2e-2)

    def test_file_and_export(self, invoke, output_dir, tmp_path):
        """Sequences are read from a file and exported rearranged."""
        path = tmp_path / "mu.txt"
        path.write_text("\n".join(str(v) for v in [0.25, 1.0, 0.5] * 8))
        result = invoke("seq", "--path", path, "--export", tmp_path / "sorted.txt")
        assert result.exit_code == 0, result.output
        exported = [
            float(line)
            for line in (tmp_path / "sorted.txt").read_text().splitlines()
            if not line.startswith("#")
        ]
        assert exported == sorted(exported, reverse=True)

    def test_too_short(self, invoke, tmp_path):
        """Fewer than 16 terms is insufficient data, exit 2."""
        path = tmp_path / "short.txt"
        path.write_text("1\n0.5\n")
        result = invoke("seq", "--path", path)
        assert result.exit_code == 2
