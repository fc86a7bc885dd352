"""Weighted heat traces Tr(e^{−tP} M_g), exact or by Hutchinson probing."""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..configs.defaults import MIN_PROBES, N_EXACT
from ..errors import CapabilityError, ParameterError
from ..models.enums import HeatMethod, ProbeKind, TraceMode
from ..models.results import TraceEstimate
from .heat import HeatApplier
from .hermitian import SparseHermitianOperator

logger = logging.getLogger(__name__)

PROBE_BLOCK = 32


@dataclass(frozen=True)
class ProbeEnsemble:
    """Random probe vectors; probe j is drawn from its own stream keyed by (seed, j)."""

    n_probes: int
    seed: int = 0
    kind: ProbeKind = ProbeKind.RADEMACHER

    def __post_init__(self):
        if self.n_probes < MIN_PROBES:
            raise ParameterError(
                f"stochastic traces need at least {MIN_PROBES} probes, got {self.n_probes}"
            )
        object.__setattr__(self, "kind", ProbeKind(self.kind))

    def probe(self, j: int, n: int) -> np.ndarray:
        rng = np.random.default_rng([self.seed, j])
        if self.kind == ProbeKind.RADEMACHER:
            return rng.integers(0, 2, size=n).astype(float) * 2.0 - 1.0
        return rng.standard_normal(n)

    def block(self, start: int, stop: int, n: int) -> np.ndarray:
        """Probes start..stop-1 as columns."""
        return np.stack([self.probe(j, n) for j in range(start, stop)], axis=1)


def heat_diagonal(op: SparseHermitianOperator, t: float, n_exact: int = N_EXACT) -> np.ndarray:
    """Diagonal of e^{−tP} from the dense eigenbasis."""
    if t < 0:
        raise ParameterError(f"heat time must be non-negative, got {t}")
    if op.n > n_exact:
        raise CapabilityError("the exact heat diagonal", op.n, n_exact)
    if t == 0:
        return np.ones(op.n)
    values, vectors = op.eigh(n_exact)
    return (np.abs(vectors) ** 2) @ np.exp(-t * values)


def weighted_heat_trace(
    op: SparseHermitianOperator,
    t: float,
    weight: np.ndarray,
    mode: TraceMode = TraceMode.EXACT,
    probes: Optional[ProbeEnsemble] = None,
    applier: Optional[HeatApplier] = None,
    n_exact: int = N_EXACT,
) -> TraceEstimate:
    """
    Tr(e^{−tP} M_g) for a per-site weight g.

    Args:
        op: The operator P
        t: Time, t >= 0
        weight: Per-site values g (finite)
        mode: Exact (dense eigenbasis) or stochastic (Hutchinson)
        probes: Probe ensemble, required in stochastic mode
        applier: Heat applier reused across calls in stochastic mode
        n_exact: Largest size for the exact path

    Returns:
        Value and standard error (0 in exact mode)
    """
    g = np.asarray(weight, dtype=float).ravel()
    if g.size != op.n or not np.all(np.isfinite(g)):
        raise ParameterError("weight must be finite with one value per site")
    mode = TraceMode(mode)
    if mode == TraceMode.EXACT:
        return TraceEstimate(float(np.sum(g * heat_diagonal(op, t, n_exact))))

    if probes is None:
        raise ParameterError("stochastic mode needs a probe ensemble")
    if applier is None:
        applier = HeatApplier(op, HeatMethod.CHEBYSHEV)
    samples = np.empty(probes.n_probes)
    for start in range(0, probes.n_probes, PROBE_BLOCK):
        stop = min(start + PROBE_BLOCK, probes.n_probes)
        z = probes.block(start, stop, op.n)
        evolved = applier.apply(t, z)
        samples[start:stop] = np.real(np.sum(z.conj() * (g[:, None] * evolved), axis=0))
    mean = float(np.mean(samples))
    std_error = float(np.std(samples, ddof=1) / np.sqrt(samples.size))
    logger.debug("Hutchinson trace at t=%g: %g ± %g", t, mean, std_error)
    return TraceEstimate(mean, std_error, probes.n_probes)
