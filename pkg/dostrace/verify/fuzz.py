"""Seeded fuzzing of the operator and sequence-space inequalities."""

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional

import numpy as np

from ..errors import ParameterError
from ..models.results import FuzzReport, InequalityReport
from ..models.sequences import QuasiNormParams
from ..operators.commutators import duhamel_residual
from ..seqspace.lorentz import decreasing_rearrangement, lorentz_quasinorm
from ..seqspace.zeta import (
    holder_weak_strong_check,
    product_singular_value_check,
    random_sequence,
    zeta_inequality_check,
)

logger = logging.getLogger(__name__)

MIN_TRIALS = 100
VIOLATION_SLACK = 1e-10
DUHAMEL_THRESHOLD = 1e-8


def _aggregate(name: str, reports: List[InequalityReport], **parameters) -> FuzzReport:
    ratios = [r.lhs / r.rhs if r.rhs > 0 else (0.0 if r.lhs == 0 else math.inf) for r in reports]
    report = FuzzReport(
        name=name,
        trials=len(reports),
        violations=sum(1 for r in reports if not r.holds),
        worst_ratio=float(max(ratios)) if ratios else 0.0,
        parameters=parameters,
    )
    if report.violations:
        logger.warning(
            "%s: %d of %d trials violate the inequality", name, report.violations, report.trials
        )
    return report


def _run_trials(trial: Callable[[int], InequalityReport], trials: int, workers: Optional[int]):
    """Map trial indices in parallel; results keep trial order."""
    with ThreadPoolExecutor(max_workers=workers or os.cpu_count() or 1) as pool:
        return list(pool.map(trial, range(trials)))


def _check_trials(trials: int) -> None:
    if trials < MIN_TRIALS:
        raise ParameterError(f"fuzzing needs at least {MIN_TRIALS} trials, got {trials}")


def psd_power(a: np.ndarray, r: float) -> np.ndarray:
    """A^r for PSD A through its eigendecomposition."""
    values, vectors = np.linalg.eigh(a)
    return (vectors * np.clip(values, 0.0, None) ** r) @ vectors.conj().T


def alt_inequality_check(a: np.ndarray, b: np.ndarray, r: float) -> InequalityReport:
    """‖AB‖_{r,∞}^r <= e ‖A^r B^r‖_{1,∞} for PSD A, B."""
    if not r > 1:
        raise ParameterError(f"r must exceed 1, got {r}")
    mu_ab = decreasing_rearrangement(np.linalg.svd(a @ b, compute_uv=False))
    mu_power = decreasing_rearrangement(
        np.linalg.svd(psd_power(a, r) @ psd_power(b, r), compute_uv=False)
    )
    lhs = lorentz_quasinorm(mu_ab, QuasiNormParams(r, math.inf)) ** r
    rhs = math.e * lorentz_quasinorm(mu_power, QuasiNormParams(1.0, math.inf))
    return InequalityReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs * (1 + VIOLATION_SLACK))


def _wishart_pair(rng: np.random.Generator, n_max: int):
    n = int(rng.integers(1, n_max + 1))
    g, h = rng.standard_normal((2, n, n))
    return g @ g.T / n, h @ h.T / n


def alt_inequality_fuzz(
    n_max: int = 64,
    trials: int = 1000,
    r: float = 2.0,
    seed: int = 1,
    workers: Optional[int] = None,
) -> FuzzReport:
    """
    Araki–Lieb–Thirring-type check on seeded Wishart pairs.

    Trial j draws its sizes and entries from the stream keyed by (seed, j).
    """
    _check_trials(trials)
    if not r > 1:
        raise ParameterError(f"r must exceed 1, got {r}")

    def trial(j: int) -> InequalityReport:
        a, b = _wishart_pair(np.random.default_rng([seed, j]), n_max)
        return alt_inequality_check(a, b, r)

    reports = _run_trials(trial, trials, workers)
    return _aggregate("alt", reports, n_max=n_max, r=r, seed=seed)


def zeta_fuzz(trials: int = 1000, q: float = 1.0, seed: int = 1) -> FuzzReport:
    """‖X‖_{∞,1} <= ζ(1+1/q) ‖X‖_{q,∞} on random sequences."""
    _check_trials(trials)
    reports = [
        zeta_inequality_check(random_sequence(np.random.default_rng([seed, j])), q)
        for j in range(trials)
    ]
    return _aggregate("zeta", reports, q=q, seed=seed)


def holder_fuzz(trials: int = 1000, seed: int = 1) -> FuzzReport:
    """Weak/strong Hölder inequality on random sequence pairs."""
    _check_trials(trials)
    reports = []
    for j in range(trials):
        rng = np.random.default_rng([seed, j])
        reports.append(holder_weak_strong_check(random_sequence(rng), random_sequence(rng)))
    return _aggregate("holder", reports, seed=seed)


def product_fuzz(
    trials: int = 1000, n_max: int = 64, seed: int = 1, workers: Optional[int] = None
) -> FuzzReport:
    """μ(2k, AB) <= μ(k, A) μ(k, B) on Gaussian matrices."""
    _check_trials(trials)

    def trial(j: int) -> InequalityReport:
        rng = np.random.default_rng([seed, j])
        n = int(rng.integers(1, n_max + 1))
        return product_singular_value_check(
            rng.standard_normal((n, n)), rng.standard_normal((n, n))
        )

    return _aggregate("product", _run_trials(trial, trials, workers), n_max=n_max, seed=seed)


def duhamel_fuzz(
    trials: int = 100,
    n: int = 16,
    t: float = 1.0,
    nodes: int = 32,
    seed: int = 0,
    workers: Optional[int] = None,
) -> FuzzReport:
    """
    Duhamel residuals on random Hermitian P and general W.

    A trial counts as a violation when its residual exceeds 1e-8;
    ``worst_ratio`` is the largest residual over that threshold.
    """
    if trials < 1:
        raise ParameterError(f"trials must be positive, got {trials}")

    def trial(j: int) -> InequalityReport:
        rng = np.random.default_rng([seed, j])
        g = rng.standard_normal((n, n)) / 4
        residual = duhamel_residual(g + g.T, rng.standard_normal((n, n)), t, nodes)
        return InequalityReport(
            lhs=residual, rhs=DUHAMEL_THRESHOLD, holds=residual <= DUHAMEL_THRESHOLD
        )

    reports = _run_trials(trial, trials, workers)
    return _aggregate("duhamel", reports, n=n, t=t, nodes=nodes, seed=seed)
