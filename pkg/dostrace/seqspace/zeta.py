"""Riemann zeta by Euler–Maclaurin and the sequence-space inequalities built on it."""

import math
from typing import Sequence

import numpy as np
from scipy.special import bernoulli

from ..errors import ParameterError
from ..models.results import InequalityReport
from ..models.sequences import QuasiNormParams, SingularSequence
from .lorentz import decreasing_rearrangement, lorentz_quasinorm

EM_TERMS = 10
EM_CUTOFF = 20
_B2J = bernoulli(2 * EM_TERMS)[2::2]
RELATIVE_SLACK = 1e-12


def riemann_zeta(s: float, cutoff: int = EM_CUTOFF) -> float:
    """
    ζ(s) for real s > 1 by Euler–Maclaurin summation with ten correction terms.

    Args:
        s: Argument, must exceed 1
        cutoff: Number of terms summed directly

    Returns:
        ζ(s), accurate to about 1e-15 relative for s in (1, 3]
    """
    if not s > 1:
        raise ParameterError(f"zeta needs s > 1, got {s}")
    n = float(cutoff)
    head = math.fsum(k**-s for k in range(1, cutoff))
    total = head + n ** (1 - s) / (s - 1) + 0.5 * n**-s
    rising = s  # s(s+1)...(s+2j-2)
    for j in range(1, EM_TERMS + 1):
        if j > 1:
            rising *= (s + 2 * j - 3) * (s + 2 * j - 2)
        total += _B2J[j - 1] / math.factorial(2 * j) * rising * n ** (-s - 2 * j + 1)
    return total


def zeta_inequality_check(seq: SingularSequence, q: float) -> InequalityReport:
    """‖X‖_{∞,1} <= ‖X‖_{q,∞} ζ(1+1/q)."""
    if not q > 0:
        raise ParameterError(f"q must be positive, got {q}")
    lhs = lorentz_quasinorm(seq, QuasiNormParams(math.inf, 1.0))
    rhs = lorentz_quasinorm(seq, QuasiNormParams(q, math.inf)) * riemann_zeta(1.0 + 1.0 / q)
    return InequalityReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs * (1 + RELATIVE_SLACK))


def holder_weak_strong_check(a: SingularSequence, b: SingularSequence) -> InequalityReport:
    """
    ‖AB‖₁ <= 2 ‖A‖_{1,∞} ‖B‖_{∞,1} for commuting diagonal A, B.

    Both sequences are paired in decreasing order, which maximises Σ a(k) b(k).
    """
    n = min(len(a), len(b))
    lhs = float(np.dot(a.values[:n], b.values[:n]))
    rhs = (
        2.0
        * lorentz_quasinorm(a, QuasiNormParams(1.0, math.inf))
        * lorentz_quasinorm(b, QuasiNormParams(math.inf, 1.0))
    )
    return InequalityReport(lhs=lhs, rhs=rhs, holds=lhs <= rhs * (1 + RELATIVE_SLACK))


def product_singular_value_check(a: np.ndarray, b: np.ndarray) -> InequalityReport:
    """
    μ(2k, AB) <= μ(k, A) μ(k, B) for every k with 2k < n.

    The report's lhs/rhs are taken at the index with the largest ratio.
    """
    mu_ab = np.linalg.svd(a @ b, compute_uv=False)
    mu_a = np.linalg.svd(a, compute_uv=False)
    mu_b = np.linalg.svd(b, compute_uv=False)
    if mu_ab.size == 0:
        return InequalityReport(lhs=0.0, rhs=0.0, holds=True)
    k = np.arange((mu_ab.size + 1) // 2)
    lhs = mu_ab[2 * k]
    rhs = mu_a[k] * mu_b[k]
    slack = 1e-12 * float(mu_a[0] * mu_b[0])
    worst = int(np.argmax(lhs - rhs))
    holds = bool(np.all(lhs <= rhs * (1 + 1e-10) + slack))
    return InequalityReport(lhs=float(lhs[worst]), rhs=float(rhs[worst]), holds=holds)


def random_sequence(rng: np.random.Generator, max_length: int = 256) -> SingularSequence:
    """A random singular sequence mixing power-law decay and noise, for fuzzing."""
    n = int(rng.integers(1, max_length + 1))
    decay = rng.uniform(0.0, 2.0)
    values = rng.uniform(0.0, 1.0, size=n) * np.arange(1, n + 1, dtype=float) ** -decay
    return decreasing_rearrangement(values)


def zeta_inequality_fuzz(trials: int, q: float, seed: int) -> Sequence[InequalityReport]:
    """Check the ζ inequality on ``trials`` seeded random sequences."""
    reports = []
    for trial in range(trials):
        rng = np.random.default_rng([seed, trial])
        reports.append(zeta_inequality_check(random_sequence(rng), q))
    return reports
