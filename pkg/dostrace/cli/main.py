"""Command-line surface: one click command per experiment family."""

import functools
import logging
from typing import Any, Dict, List, Optional, Sequence, Tuple

import click
import numpy as np

from .. import __version__
from ..configs import PROFILE_PRESETS
from ..dos import dft_heat_diagonal, dixmier_side, kpm_dos_histogram, three_way_table
from ..errors import DosTraceError
from ..growth import check_property_d, property_c_ratio
from ..index import raw_supertrace, supertrace_weighted, zero_mode_index
from ..lattice import weight_field
from ..log import configure_logging
from ..models.enums import Boundary, ProfileKind, SupertraceMode, TraceMode
from ..models.geometry import LatticeGeometry
from ..models.results import EstimatorResult, FuzzReport
from ..models.sequences import QuasiNormParams
from ..operators import (
    SparseHermitianOperator,
    build_hofstadter_dirac,
    build_lattice_laplacian,
    build_schrodinger,
    export_matrix_market,
)
from ..output import estimator_summary
from ..registry import SurrogateRegistry, TestbedRegistry
from ..seqspace import (
    decreasing_rearrangement,
    dixmier_estimate,
    generate_sequence,
    lorentz_quasinorm,
    read_sequence,
    write_sequence,
)
from .config import ExperimentConfig, load_config, parse_assignment, parse_geometry
from .runner import ExperimentRun

logger = logging.getLogger(__name__)

# sysexits EX_USAGE
EXIT_UNKNOWN_COMMAND = 64
EXIT_CHECK_FAILED = 1

ESTIMATOR_COLUMNS = [
    "t",
    "method",
    "value",
    "std_error",
    "converged",
    "n_approximants",
    "reference",
    "relative_gap",
]


class CommandError(click.ClickException):
    """ClickException carrying the exit code of the toolkit error it wraps."""

    def __init__(self, message: str, exit_code: int = 1):
        super().__init__(message)
        self.exit_code = exit_code


class DosTraceGroup(click.Group):
    """Group that exits with 64 on an unknown command."""

    def resolve_command(self, ctx, args):
        try:
            return super().resolve_command(ctx, args)
        except click.UsageError as exc:
            exc.exit_code = EXIT_UNKNOWN_COMMAND
            raise


def reports_errors(command):
    """Turn toolkit errors and registry lookups into a CommandError."""

    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except DosTraceError as exc:
            raise CommandError(str(exc), exc.exit_code) from exc
        except KeyError as exc:
            raise CommandError(str(exc.args[0]) if exc.args else str(exc), 2) from exc

    return wrapper


def experiment_options(command):
    """Options shared by every experiment command."""
    options = [
        click.option(
            "-c",
            "--config",
            "config_path",
            type=click.Path(exists=True, dir_okay=False),
            help="TOML experiment document",
        ),
        click.option(
            "--set",
            "assignments",
            multiple=True,
            metavar="KEY=VALUE",
            help="Override a dotted config key (repeatable)",
        ),
        click.option("--out", type=str, help="Output directory (beats DOSTRACE_OUT)"),
        click.option(
            "--format",
            "output_format",
            type=click.Choice(["rich", "text"], case_sensitive=False),
            default="rich",
            help="Console rendering",
        ),
        click.option("--html", type=str, help="Also write an HTML report to this file"),
        click.option("--workers", type=int, help="Worker threads (run.workers)"),
    ]
    for option in reversed(options):
        command = option(command)
    return command


def start_run(
    command: str,
    flags: Dict[str, Any],
    config_path: Optional[str],
    assignments: Sequence[str],
    out: Optional[str],
    output_format: str,
    html: Optional[str],
    workers: Optional[int],
) -> ExperimentRun:
    """Validate the config with flags applied first and ``--set`` pairs last."""
    overrides = dict(flags)
    overrides["run.workers"] = workers
    for assignment in assignments:
        overrides.update(parse_assignment(assignment))
    config = load_config(config_path, overrides)
    run = ExperimentRun(
        command=command,
        config=config,
        out_dir=config.out_dir(out),
        text=output_format.lower() == "text",
        html=html,
    )
    logger.debug("Config %s for %s: %s", run.meta.config_hash, command, run.meta.config)
    return run


def build_operator(config: ExperimentConfig) -> Tuple[SparseHermitianOperator, LatticeGeometry]:
    geom = config.geometry.build()
    potential = config.potential.strategy()
    if potential is None:
        return build_lattice_laplacian(geom), geom
    return build_schrodinger(geom, potential), geom


def heat_reference(config: ExperimentConfig, geom: LatticeGeometry, t: float) -> Optional[float]:
    """Closed-form per-site heat trace when the operator is the periodic free Laplacian."""
    if config.potential.kind != "none" or geom.boundary != Boundary.PERIODIC:
        return None
    return dft_heat_diagonal(list(geom.extents), t)


def estimator_row(result: EstimatorResult, reference: Optional[float]) -> List[Any]:
    gap = None if reference is None else result.relative_gap(reference)
    return [
        result.t,
        result.method,
        result.value,
        result.std_error,
        result.converged,
        len(result.approximants),
        reference,
        gap,
    ]


def estimator_payload(result: EstimatorResult) -> Dict[str, Any]:
    return {
        "method": result.method.value,
        "t": result.t,
        "value": result.value,
        "std_error": result.std_error,
        "converged": result.converged,
        "approximants": [list(pair) for pair in result.approximants],
        "extras": result.extras,
    }


def approximant_rows(results: Sequence[EstimatorResult]) -> List[List[Any]]:
    return [
        [result.method, result.t, parameter, value]
        for result in results
        for parameter, value in result.approximants
    ]


def report_rows(data: Dict[str, Any]) -> List[List[Any]]:
    """Scalar entries of a report dict as ``quantity, value`` rows, in key order."""
    return [
        [key, value]
        for key, value in sorted(data.items())
        if value is None or isinstance(value, (str, bool, int, float, np.generic))
    ]


@click.group(cls=DosTraceGroup)
@click.version_option(version=__version__, prog_name="dostrace")
@click.option("-v", "--verbose", count=True, help="INFO with -v, DEBUG with -vv")
@click.option("-q", "--quiet", is_flag=True, help="Only log errors")
def cli(verbose: int, quiet: bool):
    """dostrace - density of states as a Dixmier trace on lattices and growth profiles."""
    if quiet:
        level: Optional[int] = logging.ERROR
    elif verbose:
        level = logging.INFO if verbose == 1 else logging.DEBUG
    else:
        level = None
    configure_logging(level)


@cli.command()
@click.option(
    "--profile",
    "kind",
    type=click.Choice([k.value for k in ProfileKind]),
    help="Growth profile family",
)
@click.option(
    "--preset",
    type=click.Choice(sorted(PROFILE_PRESETS)),
    help="Named profile instead of a family and its parameters",
)
@click.option("--d", type=float, help="Exponent of the power profile r^d")
@click.option("--alpha", type=float, help="Exponent of the stretched profile exp(r^alpha)")
@click.option("--rate", type=float, help="Rate of the exponential profile exp(rate r)")
@click.option("--table", type=click.Path(exists=True), help="CSV with columns r,V,S,Sprime")
@click.option("--K", "K", type=int, help="Number of terms in the l2 test")
@click.option("--rmax", type=float, help="Largest radius of the derivative test")
@experiment_options
@reports_errors
def propd(kind, preset, d, alpha, rate, table, K, rmax, **common):
    """Check Property (D) of a volume-growth profile.

    Examples:
    dostrace propd --profile power --d 3
    dostrace propd --profile stretched-exp --alpha 0.4
    dostrace propd --profile exp --rate 2
    dostrace propd --preset hyperbolic-2
    """
    flags = {
        "profile.kind": kind,
        "profile.preset": preset,
        "profile.d": d,
        "profile.alpha": alpha,
        "profile.rate": rate,
        "profile.path": table,
        "profile.K": K,
        "profile.rmax": rmax,
    }
    run = start_run("propd", flags, **common)
    section = run.config.profile
    profile = section.build()
    report = check_property_d(profile, section.K, section.rmax)
    ratio = property_c_ratio(profile, 1.0, section.K)

    data = report.to_dict()
    data["property_c_final_ratio"] = ratio.final_ratio
    data["property_c_tends_to_one"] = ratio.tends_to_one
    rows = report_rows(data)
    run.write_results(["quantity", "value"], rows)
    run.add_section("S'(R)/S(R)", ["R", "ratio"], report.derivative_ratios)
    run.write_report(
        {
            "profile": profile.describe(),
            "property_d": report.to_dict(),
            "property_c": {"final_ratio": ratio.final_ratio, "tends_to_one": ratio.tends_to_one},
        }
    )
    verdict = "passes" if report.passes else "fails"
    run.show(
        f"Property (D): {profile.describe()}",
        ["quantity", "value"],
        rows,
        [f"{profile.describe()} {verdict} Property (D) (passes={str(report.passes).lower()})"],
    )
    run.finish("Property (D)")


@cli.command()
@click.option(
    "--geom", type=str, help="Geometry string or preset, e.g. d=1,N=4096,periodic or square-64"
)
@click.option("--t", "times", type=float, multiple=True, help="Heat time (repeatable)")
@click.option("--estimators", type=str, help="Comma list of estimators or 'all'")
@click.option(
    "--mode",
    type=click.Choice([m.value for m in TraceMode]),
    help="Exact diagonalisation or stochastic probes",
)
@click.option("--probes", type=int, help="Number of probe vectors")
@click.option("--seed", type=int, help="Probe seed")
@click.option("--surrogate", type=str, help="Extended-limit surrogate, e.g. tail-mean:0.2")
@click.option("--histogram/--no-histogram", default=None, help="Also write histogram.csv")
@click.option("--export-operator", type=str, help="Write the operator as Matrix Market")
@experiment_options
@reports_errors
def dos(
    geom, times, estimators, mode, probes, seed, surrogate, histogram, export_operator, **common
):
    """Estimate the per-site heat trace with every DOS estimator.

    Examples:
    dostrace dos --geom d=1,N=4096,periodic --t 1 --estimators all
    dostrace dos --geom d=2,N=64 --t 0.5 --t 1 --mode stochastic --probes 64
    """
    flags: Dict[str, Any] = parse_geometry(geom) if geom else {}
    flags.update(
        {
            "dos.t": list(times) or None,
            "dos.estimators": estimators.split(",") if estimators else None,
            "dos.mode": mode,
            "dos.probes": probes,
            "dos.probe_seed": seed,
            "dos.surrogate": surrogate,
            "dos.histogram": histogram,
        }
    )
    run = start_run("dos", flags, **common)
    config = run.config
    op, lattice = build_operator(config)
    if export_operator:
        export_matrix_market(op, export_operator, comment=run.meta.comment_line()[2:])

    results = three_way_table(
        op,
        lattice,
        config.dos.t,
        estimators=config.dos.methods(),
        radii=config.dos.radii,
        s_grid=config.dos.s_grid,
        surrogate=SurrogateRegistry.get(config.dos.surrogate),
        mode=config.dos.mode,
        probes=config.dos.probe_ensemble(),
        workers=config.workers,
        n_exact=config.run.n_exact,
    )
    references = {t: heat_reference(config, lattice, t) for t in config.dos.t}
    rows = [estimator_row(r, references[r.t]) for r in results]
    run.write_results(ESTIMATOR_COLUMNS, rows)
    run.add_section(
        "Approximants", ["method", "t", "parameter", "value"], approximant_rows(results)
    )

    payload: Dict[str, Any] = {
        "geometry": lattice.describe(),
        "operator": op.name,
        "estimators": [estimator_payload(r) for r in results],
        "reference": {str(t): v for t, v in references.items()},
    }
    if config.dos.histogram:
        measure = kpm_dos_histogram(
            op,
            lattice,
            config.dos.moments,
            config.dos.probe_ensemble(),
            config.dos.bins,
            config.run.n_exact,
        )
        run.write_histogram(measure)
        payload["histogram"] = {"total_mass": measure.total_mass, **measure.metadata}
    run.write_report(payload)

    run.show(
        f"DOS estimators: {lattice.describe()}",
        ESTIMATOR_COLUMNS,
        rows,
        [estimator_summary(r) for r in results],
    )
    run.finish("DOS estimators")


@cli.command()
@click.option("--geom", type=str, help="Geometry string, e.g. d=1,N=1024,periodic")
@click.option("--t", "times", type=float, multiple=True, help="Heat time (repeatable)")
@click.option("--surrogate", type=str, help="Extended-limit surrogate, e.g. log-extrapolation:1")
@experiment_options
@reports_errors
def dixmier(geom, times, surrogate, **common):
    """Surrogate Dixmier trace of e^{-tP} M_w with the weight field w.

    Examples:
    dostrace dixmier --geom d=1,N=2048 --t 1
    dostrace dixmier --t 0.5 --t 2 --surrogate tail-mean:0.2
    """
    flags: Dict[str, Any] = parse_geometry(geom) if geom else {}
    flags.update({"dos.t": list(times) or None, "dos.surrogate": surrogate})
    run = start_run("dixmier", flags, **common)
    config = run.config
    op, lattice = build_operator(config)
    weights = weight_field(lattice)
    chosen = SurrogateRegistry.get(config.dos.surrogate)
    results = [dixmier_side(op, weights, t, chosen, config.run.n_exact) for t in config.dos.t]

    references = {t: heat_reference(config, lattice, t) for t in config.dos.t}
    rows = [estimator_row(r, references[r.t]) for r in results]
    run.write_results(ESTIMATOR_COLUMNS, rows)
    run.add_section(
        "Log-Cesàro means", ["method", "t", "index", "mean"], approximant_rows(results)
    )
    run.write_report(
        {
            "geometry": lattice.describe(),
            "operator": op.name,
            "estimators": [estimator_payload(r) for r in results],
        }
    )
    run.show(
        f"Dixmier side: {lattice.describe()}",
        ESTIMATOR_COLUMNS,
        rows,
        [estimator_summary(r) for r in results],
    )
    run.finish("Dixmier side")


@cli.command()
@click.argument("testbed", type=str)
@click.option("--n", type=int, help="Instance size (testbed default when unset)")
@click.option("--t", type=float, help="Heat time")
@click.option("--trials", type=int, help="Random trials")
@click.option("--r", type=float, help="Exponent of the ALT inequality")
@click.option("--q", type=float, help="Exponent of the zeta inequality")
@click.option("--n-max", type=int, help="Largest random matrix size")
@click.option("--seed", type=int, help="Random seed")
@click.option("--p-spec", type=str, help="Operator spec of the main-theorem model")
@click.option("--a-spec", type=str, help="Operator A of the bridge")
@click.option("--b-spec", type=str, help="Weight B of the bridge")
@experiment_options
@reports_errors
def verify(testbed, n, t, trials, r, q, n_max, seed, p_spec, a_spec, b_spec, **common):
    """Run a verification testbed (see `dostrace verify list`).

    Examples:
    dostrace verify alt --trials 1000 --r 2
    dostrace verify bridge --n 100000
    dostrace verify main-theorem --p-spec free-laplacian
    """
    if testbed == "list":
        for name in TestbedRegistry.get_keys():
            click.echo(name)
        return
    checker = TestbedRegistry.get(testbed)
    flags = {
        "verify.n": n,
        "verify.t": t,
        "verify.trials": trials,
        "verify.r": r,
        "verify.q": q,
        "verify.n_max": n_max,
        "verify.seed": seed,
        "verify.p_spec": p_spec,
        "verify.a_spec": a_spec,
        "verify.b_spec": b_spec,
    }
    run = start_run(f"verify {testbed}", flags, **common)
    report = checker(run.config.verify.settings(run.config.run.workers))
    data = report.to_dict()
    rows = report_rows(data)
    run.write_results(["quantity", "value"], rows)
    run.write_report({"testbed": testbed, "report": data})

    if isinstance(report, FuzzReport):
        status = "ok" if report.violations == 0 else "FAIL"
        line = (
            f"{testbed}: {report.violations} violations in {report.trials} trials, "
            f"worst ratio {report.worst_ratio:.6g} ({status})"
        )
    else:
        line = f"{testbed}: gap {data['gap']:.3g}"
    run.show(f"verify {testbed}", ["quantity", "value"], rows, [line])
    run.finish(f"verify {testbed}")
    if isinstance(report, FuzzReport) and report.violations:
        raise CommandError(f"{testbed}: {report.violations} violations", EXIT_CHECK_FAILED)


@cli.command()
@click.option("--lx", type=int, help="Torus length along x")
@click.option("--ly", type=int, help="Torus length along y")
@click.option("--flux", type=str, help="Flux per plaquette, e.g. 1/6")
@click.option("--t", "times", type=float, multiple=True, help="Heat time (repeatable)")
@click.option("--mode", type=click.Choice([m.value for m in SupertraceMode]), help="Weighting")
@experiment_options
@reports_errors
def index(lx, ly, flux, times, mode, **common):
    """Zero-mode index and weighted supertraces of the magnetic torus.

    Examples:
    dostrace index --lx 6 --ly 6 --flux 1/6
    dostrace index --flux 1/3 --mode dixmier
    """
    flags = {
        "index.lx": lx,
        "index.ly": ly,
        "index.flux": flux,
        "index.t": list(times) or None,
        "index.mode": mode,
    }
    run = start_run("index", flags, **common)
    section = run.config.index
    pair = build_hofstadter_dirac(section.lx, section.ly, section.flux)
    result = supertrace_weighted(
        pair,
        section.t,
        mode=section.mode,
        surrogate=SurrogateRegistry.get(section.surrogate),
    )
    kernel = zero_mode_index(pair)
    raw = [raw_supertrace(pair, t) for t in section.t]

    columns = ["t", "supertrace", "mode", "max_relative_deviation", "raw_supertrace"]
    rows = [list(row) + [value] for row, value in zip(result.rows(), raw)]
    run.write_results(columns, rows)
    run.write_report(
        {
            "geometry": pair.geometry.describe(),
            "flux": str(pair.flux),
            "zero_modes": {
                "index": kernel.index,
                "kernel_plus": kernel.kernel_plus,
                "kernel_minus": kernel.kernel_minus,
                "threshold": kernel.threshold,
                "ambiguous": kernel.ambiguous,
                "flux_quanta": pair.n_flux,
                "cut_gap": pair.cut_gap if np.isfinite(pair.cut_gap) else None,
            },
            "index_density": result.extras["index_density"],
            "supertrace": {str(t): v for t, v in zip(result.t_values, result.values)},
            "max_relative_deviation": result.max_relative_deviation,
            "degenerate_cut": pair.degenerate_cut,
        }
    )
    summary = (
        f"index {kernel.index} (ker D+ = {kernel.kernel_plus}, ker D- = {kernel.kernel_minus}); "
        f"density {result.extras['index_density']:.6g}, "
        f"mean supertrace {float(np.mean(result.values)):.6g}, "
        f"t-deviation {result.max_relative_deviation:.2g}"
    )
    run.show(f"Supertrace: {pair.geometry.describe()}, flux {pair.flux}", columns, rows, [summary])
    run.finish("Zero-mode index")


@cli.command()
@click.option("--path", type=click.Path(exists=True, dir_okay=False), help="Sequence file")
@click.option("--generator", type=str, help="harmonic, power:a or geometric:r")
@click.option("--n", type=int, help="Number of generated terms")
@click.option("--p", type=float, help="Lorentz index p")
@click.option("--q", type=float, help="Lorentz index q (inf allowed)")
@click.option("--surrogate", type=str, help="Extended-limit surrogate")
@click.option("--export", type=str, help="Write the rearranged sequence to this file")
@experiment_options
@reports_errors
def seq(path, generator, n, p, q, surrogate, export, **common):
    """Lorentz quasinorm and surrogate Dixmier trace of a sequence.

    Examples:
    dostrace seq --generator harmonic --n 1000000
    dostrace seq --path mu.txt --p 1 --q inf
    """
    flags = {
        "seq.path": path,
        "seq.generator": generator,
        "seq.n": n,
        "seq.p": p,
        "seq.q": q,
        "seq.surrogate": surrogate,
    }
    run = start_run("seq", flags, **common)
    section = run.config.seq
    values = read_sequence(section.path) if section.path else generate_sequence(
        section.generator, section.n
    )
    mu = decreasing_rearrangement(values)
    if export:
        write_sequence(export, mu.values, header=run.meta.comment_line()[2:])
    params = QuasiNormParams(section.p, section.q)
    norm = lorentz_quasinorm(mu, params)
    estimate = dixmier_estimate(mu.values, SurrogateRegistry.get(section.surrogate))

    source = section.path or section.generator
    rows: List[List[Any]] = [
        ["source", source],
        ["n_terms", len(mu)],
        ["p", section.p],
        ["q", section.q],
        ["quasinorm", norm],
        ["dixmier_value", estimate.value],
        ["dixmier_converged", estimate.converged],
        ["dixmier_spread", estimate.spread],
        ["surrogate", estimate.surrogate],
    ]
    run.write_results(["quantity", "value"], rows)
    run.write_report({key: value for key, value in rows})
    status = "converged" if estimate.converged else "not converged"
    run.show(
        f"Sequence: {source}",
        ["quantity", "value"],
        rows,
        [
            f"dixmier {estimate.value:.6g} ({status}); "
            f"quasinorm(p={section.p:g}, q={section.q:g}) {norm:.6g}"
        ],
    )
    run.finish("Sequence")


def main():
    """Main entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
